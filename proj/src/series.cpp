#include "folhol/series.hpp"

#include <sstream>

namespace folhol {

TruncatedSeries::TruncatedSeries(std::string variable, int order)
    : var_(std::move(variable)), order_(order), c_((size_t)order + 1) {
  if (order < 0) throw DomainError("series order must be nonnegative");
}

TruncatedSeries TruncatedSeries::zero(int order, std::string variable) {
  return TruncatedSeries(std::move(variable), order);
}

TruncatedSeries TruncatedSeries::identity(int order, std::string variable) {
  TruncatedSeries s(std::move(variable), order);
  if (order >= 1) s.c_[1] = Scalar(1);
  return s;
}

TruncatedSeries TruncatedSeries::monomial(const Scalar& c, int power, int order,
                                          std::string variable) {
  TruncatedSeries s(std::move(variable), order);
  if (power < 0 || power > order)
    throw DomainError("monomial power outside truncation order");
  s.c_[(size_t)power] = c;
  return s;
}

const Scalar& TruncatedSeries::coeff(int power) const {
  if (power < 0 || power > order_)
    throw DomainError("coefficient index outside truncation order");
  return c_[(size_t)power];
}

void TruncatedSeries::set_coeff(int power, const Scalar& c) {
  if (power < 0 || power > order_)
    throw DomainError("coefficient index outside truncation order");
  c_[(size_t)power] = c;
}

bool TruncatedSeries::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

int TruncatedSeries::vanishing_order() const {
  for (int i = 0; i <= order_; ++i)
    if (!c_[(size_t)i].is_zero()) return i;
  return -1;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o, const char* op) const {
  if (var_ != o.var_)
    throw DomainError(std::string(op) + ": variable mismatch (" + var_ + " vs " +
                      o.var_ + ")");
  if (order_ != o.order_)
    throw DomainError(std::string(op) + ": order mismatch (" +
                      std::to_string(order_) + " vs " + std::to_string(o.order_) + ")");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_compatible(o, "series add");
  TruncatedSeries r(var_, order_);
  for (int i = 0; i <= order_; ++i) r.c_[(size_t)i] = c_[(size_t)i] + o.c_[(size_t)i];
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  check_compatible(o, "series sub");
  TruncatedSeries r(var_, order_);
  for (int i = 0; i <= order_; ++i) r.c_[(size_t)i] = c_[(size_t)i] - o.c_[(size_t)i];
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_compatible(o, "series mul");
  TruncatedSeries r(var_, order_);
  for (int i = 0; i <= order_; ++i) {
    if (c_[(size_t)i].is_zero()) continue;
    for (int j = 0; i + j <= order_; ++j) {
      if (o.c_[(size_t)j].is_zero()) continue;
      r.c_[(size_t)(i + j)] += c_[(size_t)i] * o.c_[(size_t)j];
    }
  }
  return r;
}

TruncatedSeries TruncatedSeries::scale(const Scalar& c) const {
  TruncatedSeries r(var_, order_);
  for (int i = 0; i <= order_; ++i) r.c_[(size_t)i] = c_[(size_t)i] * c;
  return r;
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& inner) const {
  check_compatible(inner, "series compose");
  if (!inner.coeff(0).is_zero())
    throw DomainError("series compose: inner series has nonzero constant term");
  // Horner-style substitution, truncating at every step:
  // ((c_n inner + c_{n-1}) inner + ...) inner + c_0.
  TruncatedSeries r = TruncatedSeries::zero(order_, var_);
  for (int j = order_; j >= 1; --j) {
    r = r * inner;
    r.c_[0] += c_[(size_t)j];
  }
  r = r * inner;
  r.c_[0] += c_[0];
  return r;
}

TruncatedSeries TruncatedSeries::composition_inverse() const {
  if (!coeff(0).is_zero())
    throw DomainError("composition inverse: nonzero constant term");
  if (order_ < 1 || !coeff(1).is_invertible())
    throw DomainError("composition inverse: non-invertible leading coefficient");
  Scalar lead_inv = coeff(1).inverse();
  TruncatedSeries u = TruncatedSeries::zero(order_, var_);
  u.set_coeff(1, lead_inv);
  for (int r = 2; r <= order_; ++r) {
    // With u known below order r, the coefficient of y^r in this∘u is
    // a1*u_r + (terms in lower u's); solve the single linear equation.
    Scalar residue = compose(u).coeff(r);
    u.set_coeff(r, -(residue * lead_inv));
  }
  return u;
}

TruncatedSeries TruncatedSeries::truncate(int new_order) const {
  if (new_order > order_)
    throw DomainError("truncate: target order exceeds stored order");
  TruncatedSeries r(var_, new_order);
  for (int i = 0; i <= new_order; ++i) r.c_[(size_t)i] = c_[(size_t)i];
  return r;
}

Scalar TruncatedSeries::eval(const Rational& point) const {
  Scalar r;
  Scalar p(point);
  for (int i = order_; i >= 0; --i) r = r * p + c_[(size_t)i];
  return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  return var_ == o.var_ && order_ == o.order_ && c_ == o.c_;
}

std::string TruncatedSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= order_; ++i) {
    const Scalar& c = c_[(size_t)i];
    if (c.is_zero()) continue;
    std::string body;
    int sign = 1;
    if (c.is_atom()) {
      std::optional<int> s = c.try_sign();
      sign = (s && *s < 0) ? -1 : 1;
      Scalar a = sign < 0 ? -c : c;
      std::string cs = a.str();
      if (cs == "1" && i != 0) cs.clear();
      body = cs;
    } else {
      body = "(" + c.str() + ")";
    }
    if (i > 0) {
      if (!body.empty()) body += " ";
      body += var_;
      if (i != 1) body += "^" + std::to_string(i);
    }
    if (first) {
      if (sign < 0) os << "-";
    } else {
      os << (sign < 0 ? " - " : " + ");
    }
    os << body;
    first = false;
  }
  if (first) return "0";
  return os.str();
}

BivariateTruncated::BivariateTruncated(std::string var_x, std::string var_y,
                                       int order_x, int order_y)
    : var_x_(std::move(var_x)), var_y_(std::move(var_y)), order_x_(order_x),
      order_y_(order_y) {
  if (order_x < 0 || order_y < 0)
    throw DomainError("bivariate orders must be nonnegative");
}

Scalar BivariateTruncated::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Scalar() : it->second;
}

void BivariateTruncated::set_coeff(int i, int j, const Scalar& c) {
  if (i < 0 || j < 0 || i > order_x_ || j > order_y_)
    throw DomainError("bivariate coefficient outside declared orders");
  if (c.is_zero())
    terms_.erase({i, j});
  else
    terms_[{i, j}] = c;
}

BivariateTruncated BivariateTruncated::operator+(const BivariateTruncated& o) const {
  BivariateTruncated r(var_x_, var_y_, std::max(order_x_, o.order_x_),
                       std::max(order_y_, o.order_y_));
  r.terms_ = terms_;
  for (const auto& [k, c] : o.terms_) {
    auto it = r.terms_.find(k);
    if (it == r.terms_.end()) {
      r.terms_[k] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) r.terms_.erase(it);
    }
  }
  return r;
}

BivariateTruncated BivariateTruncated::operator-(const BivariateTruncated& o) const {
  return *this + o.scale(Scalar(-1));
}

BivariateTruncated BivariateTruncated::operator*(const BivariateTruncated& o) const {
  BivariateTruncated r(var_x_, var_y_, order_x_ + o.order_x_, order_y_ + o.order_y_);
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) {
      std::pair<int, int> k{k1.first + k2.first, k1.second + k2.second};
      auto it = r.terms_.find(k);
      if (it == r.terms_.end()) {
        Scalar p = c1 * c2;
        if (!p.is_zero()) r.terms_[k] = p;
      } else {
        it->second += c1 * c2;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  return r;
}

BivariateTruncated BivariateTruncated::scale(const Scalar& c) const {
  BivariateTruncated r(var_x_, var_y_, order_x_, order_y_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) {
    Scalar p = v * c;
    if (!p.is_zero()) r.terms_[k] = p;
  }
  return r;
}

TruncatedSeries BivariateTruncated::coefficient_of_y(int j) const {
  if (j < 0 || j > order_y_)
    throw DomainError("y-power outside declared order");
  TruncatedSeries s(var_x_, order_x_);
  for (const auto& [k, c] : terms_)
    if (k.second == j) s.set_coeff(k.first, c);
  return s;
}

BivariateTruncated BivariateTruncated::divide_by_y_power(int k) const {
  BivariateTruncated r(var_x_, var_y_, order_x_, std::max(order_y_ - k, 0));
  for (const auto& [key, c] : terms_) {
    if (key.second < k)
      throw DomainError("inexact division by y^" + std::to_string(k));
    r.terms_[{key.first, key.second - k}] = c;
  }
  return r;
}

Scalar BivariateTruncated::eval(const Rational& x, const Rational& y) const {
  Scalar r;
  for (const auto& [k, c] : terms_)
    r += c * Scalar(rational_pow(x, k.first) * rational_pow(y, k.second));
  return r;
}

bool BivariateTruncated::operator==(const BivariateTruncated& o) const {
  return var_x_ == o.var_x_ && var_y_ == o.var_y_ && terms_ == o.terms_;
}

std::string BivariateTruncated::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Order terms by total degree then x-degree for a stable, readable form.
  std::map<std::pair<int, std::pair<int, int>>, Scalar> ordered;
  for (const auto& [k, c] : terms_)
    ordered[{k.first + k.second, {k.second, k.first}}] = c;
  for (const auto& [ok, c] : ordered) {
    int j = ok.second.first, i = ok.second.second;
    std::string body;
    int sign = 1;
    if (c.is_atom()) {
      std::optional<int> s = c.try_sign();
      sign = (s && *s < 0) ? -1 : 1;
      Scalar a = sign < 0 ? -c : c;
      std::string cs = a.str();
      if (cs == "1" && (i != 0 || j != 0)) cs.clear();
      body = cs;
    } else {
      body = "(" + c.str() + ")";
    }
    auto add_var = [&body](const std::string& v, int e) {
      if (e == 0) return;
      if (!body.empty()) body += " ";
      body += v;
      if (e != 1) body += "^" + std::to_string(e);
    };
    add_var(var_x_, i);
    add_var(var_y_, j);
    if (first) {
      if (sign < 0) os << "-";
    } else {
      os << (sign < 0 ? " - " : " + ");
    }
    os << body;
    first = false;
  }
  return os.str();
}

BivariateTruncated substitute(const TruncatedSeries& outer,
                              const BivariateTruncated& inner) {
  BivariateTruncated acc(inner.var_x(), inner.var_y(), 0, 0);
  // Horner evaluation; exact since bivariate products grow their orders.
  for (int j = outer.order(); j >= 0; --j) {
    acc = acc * inner;
    const Scalar& c = outer.coeff(j);
    if (!c.is_zero()) {
      BivariateTruncated cc(inner.var_x(), inner.var_y(),
                            std::max(acc.order_x(), 0), std::max(acc.order_y(), 0));
      cc.set_coeff(0, 0, c);
      acc = acc + cc;
    }
  }
  return acc;
}

} // namespace folhol
