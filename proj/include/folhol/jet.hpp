#ifndef FOLHOL_JET_HPP
#define FOLHOL_JET_HPP

#include <optional>
#include <utility>
#include <vector>

#include "folhol/series.hpp"

namespace folhol {

/// Element of J^r, the group of r-jets at 0 of diffeomorphisms of the line
/// fixing 0: a truncated polynomial a_1 y + ... + a_r y^r with a_1
/// invertible, under compose-and-truncate.
class Jet {
public:
  static Jet identity(int order);
  static Jet from_series(const TruncatedSeries& s); // validates invariants
  /// The jet y + t y^k, the embedding of the additive line into the kernel
  /// of the projection J^k -> J^{k-1}.  Requires k >= 2.
  static Jet embed_translation(const Scalar& t, int k);

  int order() const { return s_.order(); }
  const Scalar& coeff(int power) const { return s_.coeff(power); }
  const Scalar& leading() const { return s_.coeff(1); }
  const TruncatedSeries& series() const { return s_; }

  bool is_identity() const;

  /// Group product: this ∘ other, compose and truncate.
  Jet mul(const Jet& other) const;
  Jet inv() const;
  /// Truncation to a lower order (deleting high-order terms); a group
  /// homomorphism J^r -> J^{r'}.
  Jet project(int new_order) const;
  /// this ∘ g ∘ this^{-1}.
  Jet conjugate(const Jet& g) const;

  /// Decompose g = embed_linear(a_1 y) ∘ unipotent with the unipotent factor
  /// having leading coefficient 1; reconstruction is exact.
  std::pair<Jet, Jet> semidirect_split() const;

  bool orientation_preserving() const;

  bool operator==(const Jet& o) const { return s_ == o.s_; }
  bool operator!=(const Jet& o) const { return !(*this == o); }

  std::string str() const { return s_.str(); }

private:
  explicit Jet(TruncatedSeries s) : s_(std::move(s)) {}
  TruncatedSeries s_;
};

/// A jet together with its coset tag under the central-line decomposition of
/// J^k: the tag is the underlying (k-1)-jet, so two jets share a coset
/// exactly when they differ by some y + t y^k.
struct JetCoset {
  Jet jet;
  Jet coset_tag;

  explicit JetCoset(const Jet& j) : jet(j), coset_tag(j.project(j.order() - 1)) {}
  bool same_coset(const JetCoset& o) const { return coset_tag == o.coset_tag; }
};

/// Isomorphism J^2 -> ax+b group: inverse of the map (a, b) |-> a^{-1} y + b a^{-2} y^2.
std::pair<Scalar, Scalar> j2_to_affine(const Jet& g);
Jet affine_to_j2(const Scalar& a, const Scalar& b);

/// Derived-series probe: successive generator sets of commutator subgroups,
/// closing each stage under commutators of words of bounded length.
struct DerivedSeriesResult {
  std::vector<std::vector<Jet>> stages; // stage 0 = input generators
  std::optional<int> trivial_stage;     // first stage whose generators are all identity
};
DerivedSeriesResult derived_series(const std::vector<Jet>& generators, int max_steps,
                                   int word_depth = 3);

} // namespace folhol

#endif
