#ifndef FOLHOL_SERIES_HPP
#define FOLHOL_SERIES_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "folhol/scalar.hpp"

namespace folhol {

/// Truncated univariate power series: coefficients for powers 0..order of a
/// named variable, stored densely.  Every operation truncates back to the
/// stored order; no coefficient beyond it is ever represented.
class TruncatedSeries {
public:
  TruncatedSeries(std::string variable, int order);
  static TruncatedSeries zero(int order, std::string variable = "y");
  static TruncatedSeries identity(int order, std::string variable = "y"); // the series y
  static TruncatedSeries monomial(const Scalar& c, int power, int order,
                                  std::string variable = "y");

  int order() const { return order_; }
  const std::string& variable() const { return var_; }

  const Scalar& coeff(int power) const;
  void set_coeff(int power, const Scalar& c);

  bool is_zero() const;
  /// Least power with nonzero coefficient; -1 when zero.
  int vanishing_order() const;

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const; // Cauchy product, truncated
  TruncatedSeries scale(const Scalar& c) const;

  /// outer ∘ inner, truncated at the common order.  Requires the inner
  /// series to have zero constant term.
  TruncatedSeries compose(const TruncatedSeries& inner) const;

  /// Composition inverse u with  this∘u = u∘this = y  at the stored order,
  /// computed order-by-order.  Requires zero constant term and invertible
  /// linear coefficient.
  TruncatedSeries composition_inverse() const;

  TruncatedSeries truncate(int new_order) const;

  /// Exact evaluation at a rational point (mostly for polynomial data).
  Scalar eval(const Rational& point) const;

  bool operator==(const TruncatedSeries& o) const;
  bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

  /// Canonical form: ascending powers, reduced fractions, E^m markers.
  std::string str() const;

private:
  std::string var_;
  int order_;
  std::vector<Scalar> c_;

  void check_compatible(const TruncatedSeries& o, const char* op) const;
};

/// Sparse bivariate polynomial data p(x, y) with declared maximal orders.
/// No zero coefficients are stored and keys stay within the declared orders.
class BivariateTruncated {
public:
  BivariateTruncated(std::string var_x, std::string var_y, int order_x, int order_y);

  int order_x() const { return order_x_; }
  int order_y() const { return order_y_; }
  const std::string& var_x() const { return var_x_; }
  const std::string& var_y() const { return var_y_; }

  Scalar coeff(int i, int j) const;
  void set_coeff(int i, int j, const Scalar& c);
  const std::map<std::pair<int, int>, Scalar>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  BivariateTruncated operator+(const BivariateTruncated& o) const;
  BivariateTruncated operator-(const BivariateTruncated& o) const;
  /// Product; the declared orders grow to fit (exact, no silent truncation).
  BivariateTruncated operator*(const BivariateTruncated& o) const;
  BivariateTruncated scale(const Scalar& c) const;

  /// Coefficient of y^j as a polynomial in x.
  TruncatedSeries coefficient_of_y(int j) const;

  /// Divide exactly by y^k; throws unless every term has y-degree >= k.
  BivariateTruncated divide_by_y_power(int k) const;

  /// Exact evaluation at a rational point.
  Scalar eval(const Rational& x, const Rational& y) const;

  bool operator==(const BivariateTruncated& o) const;
  bool operator!=(const BivariateTruncated& o) const { return !(*this == o); }

  std::string str() const;

private:
  std::string var_x_, var_y_;
  int order_x_, order_y_;
  std::map<std::pair<int, int>, Scalar> terms_;
};

/// Substitute a univariate polynomial's variable by the bivariate value
/// `inner` (exact; used for expressions like theta(y + t y^k)).
BivariateTruncated substitute(const TruncatedSeries& outer,
                              const BivariateTruncated& inner);

} // namespace folhol

#endif
