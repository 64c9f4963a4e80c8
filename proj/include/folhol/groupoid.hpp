#ifndef FOLHOL_GROUPOID_HPP
#define FOLHOL_GROUPOID_HPP

#include <optional>
#include <string>

#include "folhol/jet.hpp"
#include "folhol/series.hpp"

namespace folhol {

/// Arrow of the blowup groupoid of the order-k model foliation on the line:
/// either an ordered pair of nonzero points (the pair groupoid off the
/// singular point) or a k-jet over it.
class GroupoidElement {
public:
  enum class Kind { pair, jet };

  static GroupoidElement pair_arrow(const Rational& target, const Rational& source);
  static GroupoidElement jet_arrow(const Jet& j);
  /// Unit arrow at a point (identity jet when the point is 0).
  static GroupoidElement unit(const Rational& at, int k);

  Kind kind() const { return kind_; }
  /// Source and target points (0 for jet arrows).
  const Rational& source() const { return source_; }
  const Rational& target() const { return target_; }
  const Jet& jet() const;

  /// this ∘ other; requires source(this) = target(other).
  GroupoidElement compose(const GroupoidElement& other) const;
  GroupoidElement inverse() const;
  bool is_unit() const;

  bool operator==(const GroupoidElement& o) const;
  bool operator!=(const GroupoidElement& o) const { return !(*this == o); }

  std::string str() const;

private:
  GroupoidElement() = default;
  Kind kind_ = Kind::pair;
  Rational target_, source_;
  std::optional<Jet> jet_;
};

enum class Component { positive, negative };

/// Sign classification of the two connected components: same-sign pairs and
/// orientation-preserving jets are positive.
Component component_of(const GroupoidElement& g);

/// Point of the Omega bisubmersion chart for the order-k model, twisted by a
/// polynomial diffeomorphism theta (a jet of order >= k; identity allowed).
struct OmegaPoint {
  Rational t;
  Rational y;
  Jet theta;

  OmegaPoint(Rational t, Rational y, Jet theta);
};

/// The chart map: (t, y) with y != 0 lands in the pair groupoid at
/// (theta(y + t y^k), y); points over y = 0 land in the jet fiber at
/// j^k(theta) ∘ (y + t y^k).  Requires 1 + t y^{k-1} > 0.
GroupoidElement omega_chart(const OmegaPoint& p, int k);

/// The exact polynomial f with theta(y + t y^k) = theta(y) + f(t, y) y^k.
BivariateTruncated f_theta(const TruncatedSeries& theta, int k);

/// Membership in the chart neighbourhood U_theta: the rational test
/// |y| f(t, y)^2 < 1 inside the Omega domain.
bool in_U_theta(const TruncatedSeries& theta, const Rational& t, const Rational& y,
                int k);

/// Certified separation radius for two polynomials with distinct (k-1)-jets:
/// for 0 < |y| < epsilon the difference dominates 2 |y|^{k-1/2}, witnessed by
/// the squared inequality (theta1 - theta2)(y)^2 > 4 |y|^{2k-1}.
struct SeparationCertificate {
  Rational epsilon;
  int lowest_order;        // first order where the jets differ
  Rational lowest_coeff;   // its coefficient in the difference
  Rational tail_bound;     // sum of absolute higher coefficients
  std::string explanation;
};

SeparationCertificate separation_epsilon(const TruncatedSeries& theta1,
                                         const TruncatedSeries& theta2, int k);

/// Arrow over the singular leaf in the vertex-trivialized gauge picture:
/// two vertices of the leaf presentation graph joined by a jet.
struct GaugeArrow {
  int target_vertex;
  int source_vertex;
  Jet jet;

  GaugeArrow compose(const GaugeArrow& other) const;
  GaugeArrow inverse() const;
  bool operator==(const GaugeArrow& o) const;
};

} // namespace folhol

#endif
