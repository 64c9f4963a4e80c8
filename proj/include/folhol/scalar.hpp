#ifndef FOLHOL_SCALAR_HPP
#define FOLHOL_SCALAR_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folhol/errors.hpp"

namespace folhol {

/// Exact rational number, always stored reduced with positive denominator.
using Rational = mpq_class;

Rational rational_pow(const Rational& base, long exp);
int rational_sign(const Rational& q);
std::string rational_str(const Rational& q);

/// Element of Q(E), the fraction field of the Laurent ring in one formal
/// transcendental symbol E.  Canonical form is
///     E^shift * num(E) / den(E)
/// with num, den in Q[E], num(0) != 0 unless num = 0, den(0) != 0,
/// den monic and gcd(num, den) = 1.  Equality is exact and decidable.
class ExpRat {
public:
  using Poly = std::vector<Rational>; // dense, ascending E powers

  ExpRat(); // zero
  explicit ExpRat(const Rational& q);
  static ExpRat e_power(long m); // the monomial E^m

  /// Build from raw numerator/denominator data (normalizes).
  static ExpRat make(Poly num, Poly den, long shift);

  bool is_zero() const { return num_.empty(); }
  bool is_rational() const;
  Rational as_rational() const; // requires is_rational()

  /// True when the value lies in the Laurent ring Q[E, E^-1] itself.
  bool is_laurent() const { return den_.size() == 1; }
  /// Laurent terms as (exponent, coefficient) pairs; requires is_laurent().
  std::vector<std::pair<long, Rational>> laurent_terms() const;

  ExpRat operator-() const;
  ExpRat operator+(const ExpRat& o) const;
  ExpRat operator-(const ExpRat& o) const;
  ExpRat operator*(const ExpRat& o) const;
  ExpRat inverse() const; // requires nonzero
  ExpRat pow(long n) const;

  bool operator==(const ExpRat& o) const;
  bool operator!=(const ExpRat& o) const { return !(*this == o); }

  /// E * d/dE, computed by the quotient rule.
  ExpRat e_log_derivative() const;

  /// Substitute E -> E^n (n may be negative but not zero).
  ExpRat subst_e_power(long n) const;

  /// Sign of the value under the documented convention: exact for rationals
  /// and for Laurent monomials c E^m (where E^m > 0 always); for other
  /// Laurent values the sign of the top-degree coefficient is used (the
  /// convention "E dominates every fixed rational").
  int sign_convention() const;

  std::string str() const;

private:
  Poly num_;   // empty means zero
  Poly den_;   // monic, den_[0] != 0
  long shift_; // power of E factored out of the numerator

  void normalize();
};

/// Element of the coefficient tower: a polynomial in the formal time symbol
/// t with coefficients in Q(E).  Rationals and E-Laurent values embed as the
/// t-degree-0 part.  All arithmetic is exact; there is no floating point.
class Scalar {
public:
  Scalar(); // zero
  Scalar(long n);
  explicit Scalar(const Rational& q);
  explicit Scalar(const ExpRat& x);

  static Scalar rational(long num, long den);
  static Scalar e_power(long m);
  static Scalar t_power(int j);
  static Scalar term(const Rational& c, long e_exp, int t_exp);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_rational() const;
  Rational as_rational() const;
  bool is_t_free() const;
  ExpRat t_free_part() const; // requires is_t_free()

  int t_degree() const; // -1 for zero
  ExpRat t_coefficient(int j) const;
  const std::map<int, ExpRat>& terms() const { return terms_; }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Multiplicative inverse.  Only t-free nonzero scalars are invertible.
  bool is_invertible() const;
  Scalar inverse() const;
  Scalar pow(long n) const; // negative n requires invertibility

  /// Derivative with respect to t, treating E as e^{a t} with the given
  /// rational rate a (so dE/dt = a E).
  Scalar d_dt(const Rational& exp_rate) const;

  /// Antiderivative with 0 constant term, in the same differential ring.
  /// Requires every coefficient Laurent; exp_rate must be nonzero whenever a
  /// term with nonzero E-degree is integrated.
  Scalar integrate_dt(const Rational& exp_rate) const;

  /// Substitute t -> t0 and E -> E^{t0} (the evaluation of a flow-time
  /// parameter; E-exponents must stay integral, so a nonzero E-degree
  /// requires integer t0).  Requires every coefficient Laurent.
  Scalar eval_flow_time(const Rational& t0) const;

  /// Sign under the convention of ExpRat::sign_convention (product of the
  /// conventions when a fraction); t-dependent scalars have no sign.
  std::optional<int> try_sign() const;

  std::string str() const;

  /// Printing atoms: a scalar is an atom when it is a single monomial
  /// c E^m t^j with Laurent E-part; atoms print inline in series, other
  /// scalars print parenthesized.
  bool is_atom() const;

private:
  std::map<int, ExpRat> terms_; // t-power -> coefficient, no zero entries

  void trim();
};

} // namespace folhol

#endif
