#include "folhol/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace folhol {

Rational rational_pow(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (base == 0) {
    if (exp < 0) throw DomainError("division by zero");
    return Rational(0);
  }
  Rational b = base;
  long e = exp;
  if (e < 0) {
    b = Rational(1) / b;
    e = -e;
  }
  Rational r(1);
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

int rational_sign(const Rational& q) { return sgn(q); }

std::string rational_str(const Rational& q) { return q.get_str(); }

namespace {

using Poly = ExpRat::Poly;

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

Poly poly_neg(const Poly& a) {
  Poly r = a;
  for (auto& c : r) c = -c;
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

// Remainder of a by b (b nonzero), standard long division over Q.
Poly poly_rem(Poly a, const Poly& b) {
  poly_trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational q = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
    poly_trim(a);
  }
  return a;
}

Poly poly_div_exact(Poly a, const Poly& b) {
  poly_trim(a);
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational c = a.back() / b.back();
    size_t off = a.size() - b.size();
    q[off] = c;
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
    poly_trim(a);
  }
  if (!a.empty()) throw DomainError("internal: inexact polynomial division");
  return q;
}

Poly poly_monic(Poly p) {
  poly_trim(p);
  if (p.empty()) return p;
  Rational lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

Poly poly_gcd(Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = poly_monic(std::move(r));
  }
  return poly_monic(std::move(a));
}

// d/dE
Poly poly_deriv(const Poly& p) {
  Poly r;
  for (size_t i = 1; i < p.size(); ++i) r.push_back(Rational((long)i) * p[i]);
  return r;
}

} // namespace

ExpRat::ExpRat() : num_(), den_{Rational(1)}, shift_(0) {}

ExpRat::ExpRat(const Rational& q) : num_(), den_{Rational(1)}, shift_(0) {
  if (q != 0) num_ = Poly{q};
}

ExpRat ExpRat::e_power(long m) {
  ExpRat r(Rational(1));
  r.shift_ = m;
  return r;
}

ExpRat ExpRat::make(Poly num, Poly den, long shift) {
  ExpRat r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.shift_ = shift;
  r.normalize();
  return r;
}

void ExpRat::normalize() {
  poly_trim(num_);
  poly_trim(den_);
  if (den_.empty()) throw DomainError("division by zero in the E-ring");
  if (num_.empty()) {
    den_ = Poly{Rational(1)};
    shift_ = 0;
    return;
  }
  // Factor E powers out of numerator and denominator into the shift.
  size_t ln = 0;
  while (num_[ln] == 0) ++ln;
  if (ln > 0) {
    num_.erase(num_.begin(), num_.begin() + ln);
    shift_ += (long)ln;
  }
  size_t ld = 0;
  while (den_[ld] == 0) ++ld;
  if (ld > 0) {
    den_.erase(den_.begin(), den_.begin() + ld);
    shift_ -= (long)ld;
  }
  Poly g = poly_gcd(num_, den_);
  if (g.size() > 1) {
    num_ = poly_div_exact(num_, g);
    den_ = poly_div_exact(den_, g);
  }
  Rational lc = den_.back();
  for (auto& c : den_) c /= lc;
  for (auto& c : num_) c /= lc;
}

bool ExpRat::is_rational() const {
  return num_.empty() || (shift_ == 0 && num_.size() == 1 && den_.size() == 1);
}

Rational ExpRat::as_rational() const {
  if (num_.empty()) return Rational(0);
  if (!is_rational()) throw DomainError("scalar is not rational");
  return num_[0] / den_[0];
}

std::vector<std::pair<long, Rational>> ExpRat::laurent_terms() const {
  if (!is_laurent()) throw DomainError("scalar is not in the Laurent ring");
  std::vector<std::pair<long, Rational>> out;
  for (size_t i = 0; i < num_.size(); ++i)
    if (num_[i] != 0) out.emplace_back(shift_ + (long)i, num_[i] / den_[0]);
  return out;
}

ExpRat ExpRat::operator-() const {
  ExpRat r = *this;
  r.num_ = poly_neg(r.num_);
  return r;
}

ExpRat ExpRat::operator+(const ExpRat& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  long s = std::min(shift_, o.shift_);
  Poly a = num_;
  a.insert(a.begin(), (size_t)(shift_ - s), Rational(0));
  Poly b = o.num_;
  b.insert(b.begin(), (size_t)(o.shift_ - s), Rational(0));
  return make(poly_add(poly_mul(a, o.den_), poly_mul(b, den_)),
              poly_mul(den_, o.den_), s);
}

ExpRat ExpRat::operator-(const ExpRat& o) const { return *this + (-o); }

ExpRat ExpRat::operator*(const ExpRat& o) const {
  if (is_zero() || o.is_zero()) return ExpRat();
  return make(poly_mul(num_, o.num_), poly_mul(den_, o.den_), shift_ + o.shift_);
}

ExpRat ExpRat::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  return make(den_, num_, -shift_);
}

ExpRat ExpRat::pow(long n) const {
  if (n == 0) return ExpRat(Rational(1));
  ExpRat b = n < 0 ? inverse() : *this;
  long e = n < 0 ? -n : n;
  ExpRat r(Rational(1));
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool ExpRat::operator==(const ExpRat& o) const {
  return shift_ == o.shift_ && num_ == o.num_ && den_ == o.den_;
}

ExpRat ExpRat::e_log_derivative() const {
  if (is_zero()) return ExpRat();
  // E d/dE (E^s n/d) = E^s (s n d + E (n' d - n d')) / d^2
  Poly t1 = num_;
  for (auto& c : t1) c *= Rational(shift_);
  t1 = poly_mul(t1, den_);
  Poly t2 = poly_mul(poly_deriv(num_), den_);
  Poly t3 = poly_mul(num_, poly_deriv(den_));
  Poly inner = poly_add(t2, poly_neg(t3));
  inner.insert(inner.begin(), Rational(0)); // multiply by E
  return make(poly_add(t1, inner), poly_mul(den_, den_), shift_);
}

ExpRat ExpRat::subst_e_power(long n) const {
  if (n == 0) throw DomainError("E substitution exponent must be nonzero");
  if (is_zero()) return ExpRat();
  auto stretch = [&](const Poly& p) {
    Poly r((p.size() - 1) * (size_t)std::abs(n) + 1, Rational(0));
    for (size_t i = 0; i < p.size(); ++i) r[i * (size_t)std::abs(n)] = p[i];
    return r;
  };
  if (n > 0) return make(stretch(num_), stretch(den_), shift_ * n);
  // Negative n: E -> E^{-|n|}; rewrite p(E^-1) = E^{-deg} p~(E).
  Poly sn = stretch(num_), sd = stretch(den_);
  std::reverse(sn.begin(), sn.end());
  std::reverse(sd.begin(), sd.end());
  long corr = -(long)(sn.size() - 1) + (long)(sd.size() - 1);
  return make(sn, sd, shift_ * n + corr);
}

int ExpRat::sign_convention() const {
  if (is_zero()) return 0;
  if (is_rational()) return rational_sign(num_[0]);
  if (num_.size() == 1 && den_.size() == 1) return rational_sign(num_[0]);
  // Convention: dominant E-degree decides (denominator is monic, positive).
  return rational_sign(num_.back());
}

std::string ExpRat::str() const {
  std::ostringstream os;
  if (is_zero()) return "0";
  auto poly_str = [](const Poly& p, long shift) {
    std::ostringstream s;
    bool first = true;
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      long m = shift + (long)i;
      Rational c = p[i];
      if (first) {
        if (c < 0) s << "-";
      } else {
        s << (c < 0 ? " - " : " + ");
      }
      Rational a = abs(c);
      if (a != 1 || m == 0) s << rational_str(a);
      if (m != 0) {
        if (a != 1) s << " ";
        s << "E";
        if (m != 1) s << "^" << m;
      }
      first = false;
    }
    return s.str();
  };
  if (is_laurent()) return poly_str(num_, shift_);
  os << "(" << poly_str(num_, shift_) << ")/(" << poly_str(den_, 0) << ")";
  return os.str();
}

Scalar::Scalar() = default;

Scalar::Scalar(long n) {
  if (n != 0) terms_[0] = ExpRat(Rational(n));
}

Scalar::Scalar(const Rational& q) {
  if (q != 0) terms_[0] = ExpRat(q);
}

Scalar::Scalar(const ExpRat& x) {
  if (!x.is_zero()) terms_[0] = x;
}

Scalar Scalar::rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::e_power(long m) { return Scalar(ExpRat::e_power(m)); }

Scalar Scalar::t_power(int j) {
  Scalar s;
  s.terms_[j] = ExpRat(Rational(1));
  return s;
}

Scalar Scalar::term(const Rational& c, long e_exp, int t_exp) {
  Scalar s;
  if (c != 0) s.terms_[t_exp] = ExpRat(c) * ExpRat::e_power(e_exp);
  return s;
}

bool Scalar::is_one() const { return *this == Scalar(1); }

bool Scalar::is_rational() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == 0 &&
         terms_.begin()->second.is_rational();
}

Rational Scalar::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (!is_rational()) throw DomainError("scalar is not rational");
  return terms_.begin()->second.as_rational();
}

bool Scalar::is_t_free() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

ExpRat Scalar::t_free_part() const {
  if (terms_.empty()) return ExpRat();
  if (!is_t_free()) throw DomainError("scalar depends on t");
  return terms_.begin()->second;
}

int Scalar::t_degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first;
}

ExpRat Scalar::t_coefficient(int j) const {
  auto it = terms_.find(j);
  return it == terms_.end() ? ExpRat() : it->second;
}

void Scalar::trim() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& [j, c] : r.terms_) c = -c;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r = *this;
  for (const auto& [j, c] : o.terms_) {
    auto it = r.terms_.find(j);
    if (it == r.terms_.end())
      r.terms_[j] = c;
    else
      it->second = it->second + c;
  }
  r.trim();
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r;
  for (const auto& [j1, c1] : terms_)
    for (const auto& [j2, c2] : o.terms_) {
      ExpRat p = c1 * c2;
      if (p.is_zero()) continue;
      auto it = r.terms_.find(j1 + j2);
      if (it == r.terms_.end())
        r.terms_[j1 + j2] = p;
      else
        it->second = it->second + p;
    }
  r.trim();
  return r;
}

bool Scalar::is_invertible() const { return !is_zero() && is_t_free(); }

Scalar Scalar::inverse() const {
  if (!is_invertible())
    throw DomainError("scalar is not invertible (zero or t-dependent)");
  return Scalar(terms_.begin()->second.inverse());
}

Scalar Scalar::pow(long n) const {
  if (n == 0) return Scalar(1);
  Scalar b = n < 0 ? inverse() : *this;
  long e = n < 0 ? -n : n;
  Scalar r(1);
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Scalar Scalar::d_dt(const Rational& exp_rate) const {
  Scalar r;
  for (const auto& [j, c] : terms_) {
    if (j > 0) {
      Scalar m;
      m.terms_[j - 1] = c * ExpRat(Rational((long)j));
      r += m;
    }
    if (exp_rate != 0) {
      ExpRat d = c.e_log_derivative() * ExpRat(exp_rate);
      if (!d.is_zero()) {
        Scalar m;
        m.terms_[j] = d;
        r += m;
      }
    }
  }
  r.trim();
  return r;
}

Scalar Scalar::integrate_dt(const Rational& exp_rate) const {
  Scalar r;
  for (const auto& [j, c] : terms_) {
    for (const auto& [m, q] : c.laurent_terms()) {
      if (m == 0) {
        r += Scalar::term(q / Rational(j + 1), 0, j + 1);
      } else {
        if (exp_rate == 0)
          throw DomainError("cannot integrate E-term with zero exponential rate");
        // antiderivative of t^j E^m:  E^m * sum_i (-1)^i j!/(j-i)! t^{j-i} / (a m)^{i+1}
        Rational am = exp_rate * Rational(m);
        Rational falling(1);
        Rational denom = am;
        int sign = 1;
        for (int i = 0; i <= j; ++i) {
          r += Scalar::term(q * Rational(sign) * falling / denom, m, j - i);
          falling *= Rational(j - i);
          denom *= am;
          sign = -sign;
        }
      }
    }
  }
  r.trim();
  return r;
}

Scalar Scalar::eval_flow_time(const Rational& t0) const {
  Scalar r;
  for (const auto& [j, c] : terms_) {
    Rational tj = rational_pow(t0, j);
    for (const auto& [m, q] : c.laurent_terms()) {
      if (m == 0) {
        r += Scalar(q * tj);
      } else {
        Rational e = Rational(m) * t0;
        if (e.get_den() != 1)
          throw DomainError(
              "flow time " + rational_str(t0) +
              " leaves the exact coefficient ring (E-exponent is not an integer)");
        r += Scalar::term(q * tj, e.get_num().get_si(), 0);
      }
    }
  }
  r.trim();
  return r;
}

std::optional<int> Scalar::try_sign() const {
  if (terms_.empty()) return 0;
  if (!is_t_free()) return std::nullopt;
  return terms_.begin()->second.sign_convention();
}

bool Scalar::is_atom() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const ExpRat& c = terms_.begin()->second;
  return c.is_laurent() && c.laurent_terms().size() == 1;
}

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [j, c] : terms_) {
    // Print each t-coefficient as a sum of E-atoms where possible.
    std::vector<std::pair<std::string, int>> parts; // (body, sign)
    if (c.is_laurent()) {
      for (const auto& [m, q] : c.laurent_terms()) {
        std::ostringstream p;
        Rational a = abs(q);
        bool unit = (a == 1);
        bool has_sym = (m != 0) || (j != 0);
        if (!unit || !has_sym) p << rational_str(a);
        if (m != 0) {
          if (p.tellp() > 0) p << " ";
          p << "E";
          if (m != 1) p << "^" << m;
        }
        if (j != 0) {
          if (p.tellp() > 0) p << " ";
          p << "t";
          if (j != 1) p << "^" << j;
        }
        parts.emplace_back(p.str(), rational_sign(q));
      }
    } else {
      std::ostringstream p;
      p << c.str();
      if (j != 0) {
        p << " t";
        if (j != 1) p << "^" << j;
      }
      parts.emplace_back(p.str(), 1);
    }
    for (const auto& [body, sg] : parts) {
      if (first) {
        if (sg < 0) os << "-";
      } else {
        os << (sg < 0 ? " - " : " + ");
      }
      os << body;
      first = false;
    }
  }
  return os.str();
}

} // namespace folhol
