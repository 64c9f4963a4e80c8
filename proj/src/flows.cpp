#include "folhol/flows.hpp"

#include <sstream>

namespace folhol {

VectorField VectorField::zero(int order) {
  return VectorField(TruncatedSeries::zero(order, "y"));
}

VectorField::VectorField(const TruncatedSeries& f) : f_(f) {
  if (f_.variable() != "y")
    throw DomainError("vector field series must use variable y");
  if (!f_.coeff(0).is_zero())
    throw DomainError("vector field must vanish at 0 (no constant term)");
  for (int i = 0; i <= f_.order(); ++i)
    if (!f_.coeff(i).is_rational())
      throw DomainError("unsupported coefficient ring: vector field "
                        "coefficients must be rational");
}

int VectorField::vanishing_order() const {
  int v = f_.vanishing_order();
  return v < 0 ? 0 : v;
}

Rational VectorField::linear_rate() const {
  if (f_.order() < 1) return Rational(0);
  return f_.coeff(1).as_rational();
}

FlowJet::FlowJet(int order, Rational exp_rate, std::vector<Scalar> coeffs)
    : order_(order), rate_(std::move(exp_rate)), c_(std::move(coeffs)) {
  if (order_ < 1 || c_.size() != (size_t)order_ + 1)
    throw DomainError("malformed flow jet");
}

const Scalar& FlowJet::coeff(int r) const {
  if (r < 1 || r > order_) throw DomainError("flow coefficient index out of range");
  return c_[(size_t)r];
}

Jet FlowJet::at(const Rational& t0) const {
  TruncatedSeries s = TruncatedSeries::zero(order_, "y");
  for (int r = 1; r <= order_; ++r) s.set_coeff(r, c_[(size_t)r].eval_flow_time(t0));
  return Jet::from_series(s);
}

TruncatedSeries FlowJet::as_series() const {
  TruncatedSeries s = TruncatedSeries::zero(order_, "y");
  for (int r = 1; r <= order_; ++r) s.set_coeff(r, c_[(size_t)r]);
  return s;
}

std::string FlowJet::str(const std::string& time_symbol) const {
  std::string out = as_series().str();
  if (time_symbol == "t") return out;
  // The character 't' only ever appears as the time symbol in canonical form.
  std::string renamed;
  for (char ch : out) {
    if (ch == 't')
      renamed += time_symbol;
    else
      renamed += ch;
  }
  return renamed;
}

bool FlowJet::operator==(const FlowJet& o) const {
  return order_ == o.order_ && rate_ == o.rate_ && c_ == o.c_;
}

FlowJet flow_jet(const VectorField& X, int m) {
  if (m < 1) throw DomainError("flow order must be positive");
  TruncatedSeries f = X.order() >= m ? X.series().truncate(m)
                                     : [&] {
                                         TruncatedSeries g =
                                             TruncatedSeries::zero(m, "y");
                                         for (int i = 0; i <= X.order(); ++i)
                                           g.set_coeff(i, X.series().coeff(i));
                                         return g;
                                       }();
  Rational a = m >= 1 && X.order() >= 1 ? X.linear_rate() : Rational(0);

  std::vector<Scalar> c((size_t)m + 1);
  c[1] = a == 0 ? Scalar(1) : Scalar::e_power(1); // E stands for e^{a t}
  TruncatedSeries phi = TruncatedSeries::zero(m, "y");
  phi.set_coeff(1, c[1]);

  for (int r = 2; r <= m; ++r) {
    // c_r' = a c_r + F_r with F_r the y^r coefficient of f∘phi computed from
    // the coefficients below r (the placeholder c_r = 0 contributes a*0).
    Scalar forcing = f.compose(phi).coeff(r);
    Scalar cr;
    if (a == 0) {
      cr = forcing.integrate_dt(a);
    } else {
      // Integrating factor: c_r = E * g with g' = F_r E^{-1}.
      Scalar g_prime = forcing * Scalar::e_power(-1);
      for (const auto& [j, x] : g_prime.terms()) {
        (void)j;
        for (const auto& [e, q] : x.laurent_terms()) {
          (void)q;
          if (e == 0)
            throw DomainError("unsupported coefficient ring: resonant forcing "
                              "term in flow integration");
        }
      }
      Scalar g = g_prime.integrate_dt(a);
      Scalar g0 = g.eval_flow_time(Rational(0));
      cr = Scalar::e_power(1) * (g - g0);
    }
    c[(size_t)r] = cr;
    phi.set_coeff(r, cr);
  }
  return FlowJet(m, a, std::move(c));
}

FlowJet flow_closed_form_model(int k, int m) {
  if (k < 2) throw DomainError("closed-form model requires k >= 2");
  if (m < k) throw DomainError("closed-form model requires m >= k");
  // y (1 - (k-1) t y^{k-1})^{-1/(k-1)} expanded by the binomial series:
  // coefficient of u^n is prod_{i<n} (alpha + i) / n!, alpha = 1/(k-1).
  std::vector<Scalar> c((size_t)m + 1);
  c[1] = Scalar(1);
  Rational alpha(1, k - 1);
  Rational coef(1);
  for (int n = 1; 1 + n * (k - 1) <= m; ++n) {
    coef *= (alpha + Rational(n - 1)) / Rational(n);
    Rational full = coef * rational_pow(Rational(k - 1), n);
    c[(size_t)(1 + n * (k - 1))] = Scalar::term(full, 0, n);
  }
  return FlowJet(m, Rational(0), std::move(c));
}

VectorField formal_log(const Jet& unipotent) {
  if (unipotent.leading() != Scalar(1))
    throw DomainError("formal logarithm requires a unipotent jet");
  int m = unipotent.order();
  TruncatedSeries x = TruncatedSeries::zero(m, "y");
  for (int r = 2; r <= m; ++r) {
    // Time-1 flow coefficient at order r is x_r plus terms in lower x's.
    Jet partial = flow_jet(VectorField(x), m).at(Rational(1));
    Scalar diff = unipotent.coeff(r) - partial.coeff(r);
    if (!diff.is_rational())
      throw DomainError("formal logarithm requires rational coefficients");
    x.set_coeff(r, x.coeff(r) + diff);
  }
  return VectorField(x);
}

} // namespace folhol
