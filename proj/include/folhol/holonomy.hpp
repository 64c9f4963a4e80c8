#ifndef FOLHOL_HOLONOMY_HPP
#define FOLHOL_HOLONOMY_HPP

#include <map>
#include <optional>
#include <string>

#include "folhol/foliation.hpp"
#include "folhol/jet.hpp"

namespace folhol {

/// A homomorphism from the leaf fundamental group into the jet group of
/// order k-1, recorded by one jet per generator.  Relator residuals are the
/// images of the relator words; a valid homomorphism has them all identity.
struct HolonomyHom {
  int target_order;
  LeafPresentation leaf;
  std::map<std::string, Jet> images;
  std::map<std::string, Jet> relator_residuals;

  const Jet& image(const std::string& generator) const;
  /// Image of an arbitrary word (capital letters are inverses).
  Jet word_image(const std::string& word) const;

  bool operator==(const HolonomyHom& o) const;
};

/// Build the homomorphism of a foliation spec: flow data contribute their
/// time-1 flow jets, jet data their projections, all at order k-1.  Throws
/// when a relator residual is not the identity.
HolonomyHom holonomy_hom(const FoliationSpec& spec);

/// Construct a holonomy homomorphism directly (validates residuals).
HolonomyHom make_hom(int target_order, LeafPresentation leaf,
                     std::map<std::string, Jet> images);

HolonomyHom parse_hom(const std::string& text);
std::string print_hom(const HolonomyHom& hom);

struct ConjugacyResult {
  bool conjugate = false;
  std::optional<Jet> conjugator; // h with h g1(w) h^{-1} = g2(w) for all words
  int obstruction_order = 0;     // 1: leading coefficients differ; r >= 2: stage r
  std::string detail;
};

/// Decide whether two homomorphisms are conjugate by a single jet, for a
/// fixed matching of generators.  Solved order-by-order by exact elimination
/// over the scalar field; remaining free parameters are pinned (unipotent
/// ones to 0, the scaling to 1) once consistency is established.
ConjugacyResult are_conjugate(const HolonomyHom& g1, const HolonomyHom& g2);

/// Realize a homomorphism as a foliation spec whose holonomy reproduces it
/// exactly: jet data are the order-k lifts with vanishing top coefficient.
FoliationSpec realize_hom(const HolonomyHom& hom, int k);

/// The preimage of the holonomy image in the order-k jet group: chosen lifts
/// of the generators together with the central line y + t y^k.
struct GammaR {
  HolonomyHom base;
  int k;
  std::map<std::string, Jet> lifts; // order k, top coefficient 0
};

GammaR gamma_r(const HolonomyHom& hom, int k);

/// Brace descriptor of the full one-dimensional group when a closed form is
/// available (trivial image, single linear generator, or single unipotent
/// generator whose powers follow a polynomial pattern in n).
std::optional<std::string> gamma_r_closed_form(const GammaR& g);

/// The line-bundle monodromy: leading coefficient per generator.
std::map<std::string, Scalar> bott_character(const HolonomyHom& hom);

/// Structural description of the groupoid algebra extension over the
/// singular leaf.
struct ExtensionReport {
  enum class Ideal { K, KplusK };
  Ideal ideal_kind;
  int open_leaf_count; // 1 or 2
  GammaR quotient;
};

ExtensionReport extension_report(const FoliationSpec& spec);

} // namespace folhol

#endif
