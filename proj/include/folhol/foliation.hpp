#ifndef FOLHOL_FOLIATION_HPP
#define FOLHOL_FOLIATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folhol/flows.hpp"
#include "folhol/jet.hpp"
#include "folhol/series.hpp"

namespace folhol {

/// Finite presentation of the fundamental group of the singular leaf.
/// Generator names are single lowercase letters; relator words use the
/// capital letter for an inverse and are stored freely reduced.
struct LeafPresentation {
  std::vector<std::string> generators;
  std::vector<std::string> relators;

  bool has_generator(const std::string& name) const;
};

std::string free_reduce(const std::string& word);

/// Per-generator holonomy datum: either a vector field flowed for time 1
/// (modelling d/dx + g(y) d/dy around the loop) or an explicit jet.
struct HolonomyDatum {
  enum class Kind { flow, jet };
  Kind kind;
  std::optional<VectorField> field; // kind == flow
  std::optional<Jet> jet;           // kind == jet
  int orientation = +1;             // sign of the normal bundle around the loop
};

/// Declarative foliation data: transverse order, leaf presentation and
/// holonomy data per generator.
struct FoliationSpec {
  int k = 2;
  LeafPresentation leaf;
  std::map<std::string, HolonomyDatum> holonomy;
  bool bundle_trivial = true;

  void validate() const; // throws DomainError on any violated invariant
};

FoliationSpec parse_spec(const std::string& text);
/// Bit-exact canonical form; parse(print(s)) == s.
std::string print_spec(const FoliationSpec& spec);

/// Taylor data p(x, y) of a submersion candidate along the singular leaf.
struct SubmersionCandidate {
  BivariateTruncated p;
  int k;

  SubmersionCandidate(BivariateTruncated p, int k);
};

struct SubmersionVerdict {
  bool ok;
  int failing_r = 0; // first r in 1..k-1 violating the criterion; 0 if ok
  std::string diagnostic;
};

/// Constancy test for defining submersions: for r = 1..k-1 the y^r
/// coefficient must be constant in x, and the y coefficient nonzero.
SubmersionVerdict check_local_submersion(const SubmersionCandidate& c);

/// Test for a vertical family theta_x(y), given by its bivariate Taylor data,
/// to preserve the model foliation: the y^1..y^{k-1} coefficients must not
/// depend on x.  Requires theta_x(0) = 0.
bool check_vertical_automorphism(const BivariateTruncated& theta_family, int k);

} // namespace folhol

#endif
