#include "folhol/groupoid.hpp"

#include <sstream>

namespace folhol {

GroupoidElement GroupoidElement::pair_arrow(const Rational& target,
                                            const Rational& source) {
  if (target == 0 || source == 0)
    throw DomainError("pair arrow coordinates must be nonzero");
  GroupoidElement g;
  g.kind_ = Kind::pair;
  g.target_ = target;
  g.source_ = source;
  return g;
}

GroupoidElement GroupoidElement::jet_arrow(const Jet& j) {
  GroupoidElement g;
  g.kind_ = Kind::jet;
  g.target_ = g.source_ = Rational(0);
  g.jet_ = j;
  return g;
}

GroupoidElement GroupoidElement::unit(const Rational& at, int k) {
  if (at == 0) return jet_arrow(Jet::identity(k));
  return pair_arrow(at, at);
}

const Jet& GroupoidElement::jet() const {
  if (kind_ != Kind::jet) throw DomainError("not a jet arrow");
  return *jet_;
}

GroupoidElement GroupoidElement::compose(const GroupoidElement& other) const {
  if (source_ != other.target_)
    throw DomainError("non-composable arrows: source " + rational_str(source_) +
                      " != target " + rational_str(other.target_));
  if (kind_ == Kind::pair) return pair_arrow(target_, other.source_);
  return jet_arrow(jet_->mul(*other.jet_));
}

GroupoidElement GroupoidElement::inverse() const {
  if (kind_ == Kind::pair) return pair_arrow(source_, target_);
  return jet_arrow(jet_->inv());
}

bool GroupoidElement::is_unit() const {
  if (kind_ == Kind::pair) return source_ == target_;
  return jet_->is_identity();
}

bool GroupoidElement::operator==(const GroupoidElement& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::pair) return source_ == o.source_ && target_ == o.target_;
  return *jet_ == *o.jet_;
}

std::string GroupoidElement::str() const {
  std::ostringstream os;
  if (kind_ == Kind::pair)
    os << "pair(" << rational_str(target_) << ", " << rational_str(source_) << ")";
  else
    os << "jet(" << jet_->str() << ")";
  return os.str();
}

Component component_of(const GroupoidElement& g) {
  if (g.kind() == GroupoidElement::Kind::pair)
    return rational_sign(g.target()) == rational_sign(g.source())
               ? Component::positive
               : Component::negative;
  return g.jet().orientation_preserving() ? Component::positive
                                          : Component::negative;
}

OmegaPoint::OmegaPoint(Rational t_, Rational y_, Jet theta_)
    : t(std::move(t_)), y(std::move(y_)), theta(std::move(theta_)) {}

GroupoidElement omega_chart(const OmegaPoint& p, int k) {
  if (k < 2) throw DomainError("the Omega chart requires k >= 2");
  if (p.theta.order() < k)
    throw DomainError("theta must be given to order at least k");
  Rational domain = Rational(1) + p.t * rational_pow(p.y, k - 1);
  if (domain <= 0)
    throw DomainError("outside the Omega domain: 1 + t y^{k-1} <= 0");
  if (p.y == 0)
    return GroupoidElement::jet_arrow(
        p.theta.project(k).mul(Jet::embed_translation(Scalar(p.t), k)));
  Rational tau = p.y + p.t * rational_pow(p.y, k);
  Scalar value = p.theta.series().eval(tau);
  if (!value.is_rational())
    throw DomainError("theta must have rational coefficients for evaluation");
  Rational target = value.as_rational();
  if (target == 0)
    throw DomainError("polynomial representative leaves the model's validity "
                      "range: theta(y + t y^k) = 0 at y = " + rational_str(p.y));
  return GroupoidElement::pair_arrow(target, p.y);
}

BivariateTruncated f_theta(const TruncatedSeries& theta, int k) {
  if (k < 1) throw DomainError("f_theta requires k >= 1");
  if (!theta.coeff(0).is_zero())
    throw DomainError("theta must fix 0 (zero constant term)");
  int d = theta.order();
  // inner = y + t y^k in variables (t, y)
  BivariateTruncated inner("t", "y", 1, k);
  inner.set_coeff(0, 1, Scalar(1));
  inner.set_coeff(1, k, Scalar(1));
  BivariateTruncated shifted = substitute(theta, inner);
  BivariateTruncated plain("t", "y", 0, d);
  for (int j = 0; j <= d; ++j) plain.set_coeff(0, j, theta.coeff(j));
  return (shifted - plain).divide_by_y_power(k);
}

bool in_U_theta(const TruncatedSeries& theta, const Rational& t, const Rational& y,
                int k) {
  Rational domain = Rational(1) + t * rational_pow(y, k - 1);
  if (domain <= 0)
    throw DomainError("outside the Omega domain: 1 + t y^{k-1} <= 0");
  Scalar fv = f_theta(theta, k).eval(t, y);
  if (!fv.is_rational())
    throw DomainError("U_theta test needs rational coefficients");
  Rational f = fv.as_rational();
  return abs(y) * f * f < 1;
}

SeparationCertificate separation_epsilon(const TruncatedSeries& theta1,
                                         const TruncatedSeries& theta2, int k) {
  if (k < 2) throw DomainError("separation requires k >= 2");
  int order = std::max(theta1.order(), theta2.order());
  auto pad = [order](const TruncatedSeries& s) {
    TruncatedSeries r = TruncatedSeries::zero(order, s.variable());
    for (int i = 0; i <= s.order(); ++i) r.set_coeff(i, s.coeff(i));
    return r;
  };
  TruncatedSeries d = pad(theta1) - pad(theta2);
  if (!d.coeff(0).is_zero())
    throw DomainError("theta polynomials must both fix 0");
  int p = d.vanishing_order();
  if (p < 0 || p > k - 1)
    throw DomainError("separation requires distinct (k-1)-jets");
  for (int i = 0; i <= order; ++i)
    if (!d.coeff(i).is_rational())
      throw DomainError("separation needs rational coefficients");

  Rational dp = abs(d.coeff(p).as_rational());
  Rational tail(0);
  for (int j = p + 1; j <= order; ++j) tail += abs(d.coeff(j).as_rational());

  // For 0 < |y| < eps:
  //   |d(y)| >= |y|^p (dp - eps * tail) >= |y|^p dp / 2,
  // and |y| < dp^2/16 makes (|y|^p dp/2)^2 > 4 |y|^{2k-1} since
  // |y|^{2(k-p)-1} <= |y| when |y| <= 1.
  Rational eps(1);
  if (tail > 0) eps = std::min(eps, Rational(dp / (2 * tail)));
  eps = std::min(eps, Rational(dp * dp / 16));

  std::ostringstream ex;
  ex << "difference vanishes to order " << p << " with coefficient of absolute value "
     << rational_str(dp) << " and higher-coefficient sum " << rational_str(tail)
     << "; for 0 < |y| < " << rational_str(eps)
     << " the lowest term dominates: (theta1 - theta2)(y)^2 > 4 |y|^(2k-1)";
  return {eps, p, d.coeff(p).as_rational(), tail, ex.str()};
}

GaugeArrow GaugeArrow::compose(const GaugeArrow& other) const {
  if (source_vertex != other.target_vertex)
    throw DomainError("non-composable gauge arrows");
  return {target_vertex, other.source_vertex, jet.mul(other.jet)};
}

GaugeArrow GaugeArrow::inverse() const {
  return {source_vertex, target_vertex, jet.inv()};
}

bool GaugeArrow::operator==(const GaugeArrow& o) const {
  return target_vertex == o.target_vertex && source_vertex == o.source_vertex &&
         jet == o.jet;
}

} // namespace folhol
