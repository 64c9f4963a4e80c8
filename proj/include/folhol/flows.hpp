#ifndef FOLHOL_FLOWS_HPP
#define FOLHOL_FLOWS_HPP

#include <string>
#include <vector>

#include "folhol/jet.hpp"
#include "folhol/series.hpp"

namespace folhol {

/// A vector field f(y) d/dy on the line with f(0) = 0, the generator of a
/// formal flow.  Coefficients must be rational; when the vanishing order is
/// 1 the linear part a = f'(0) acquires the exponential symbol E = e^{a t}
/// in flow computations.
class VectorField {
public:
  static VectorField zero(int order);
  explicit VectorField(const TruncatedSeries& f); // validates

  const TruncatedSeries& series() const { return f_; }
  int order() const { return f_.order(); }
  bool is_zero() const { return f_.is_zero(); }
  /// Least power with nonzero coefficient (0 for the zero field).
  int vanishing_order() const;
  /// Linear coefficient as a rational.
  Rational linear_rate() const;

  std::string str() const { return f_.str(); }

private:
  TruncatedSeries f_;
};

/// The m-jet of the time-t flow of a vector field: phi_t(y) = sum c_r(t) y^r
/// with c_r(0) = delta_{r,1}.  Coefficients are exact polynomials in t when
/// the field vanishes to order >= 2; when the linear rate a is nonzero they
/// are Laurent polynomials in E = e^{a t}.
class FlowJet {
public:
  FlowJet(int order, Rational exp_rate, std::vector<Scalar> coeffs);

  int order() const { return order_; }
  const Rational& exp_rate() const { return rate_; }
  const Scalar& coeff(int r) const;

  /// Evaluate the time parameter; E-exponents must stay integral.
  Jet at(const Rational& t0) const;

  /// The flow jet as a series in y with time-dependent coefficients.
  TruncatedSeries as_series() const;

  /// Canonical print, with a configurable name for the time symbol.
  std::string str(const std::string& time_symbol = "t") const;

  bool operator==(const FlowJet& o) const;

private:
  int order_;
  Rational rate_;
  std::vector<Scalar> c_; // index 1..order
};

/// Exact order-by-order solution of d(phi)/dt = f(phi), phi_0 = y.
FlowJet flow_jet(const VectorField& X, int m);

/// Binomial-series expansion to order m of the closed-form flow of
/// y^k d/dy, an independent oracle for flow_jet.  Requires k >= 2, m >= k.
FlowJet flow_closed_form_model(int k, int m);

/// The unique formal field X, vanishing to order >= 2, whose time-1 flow jet
/// is the given unipotent jet.
VectorField formal_log(const Jet& unipotent);

} // namespace folhol

#endif
