#include "folhol/jet.hpp"

#include <algorithm>
#include <set>

namespace folhol {

Jet Jet::identity(int order) {
  if (order < 1) throw DomainError("jet order must be positive");
  return Jet(TruncatedSeries::identity(order));
}

Jet Jet::from_series(const TruncatedSeries& s) {
  if (s.order() < 1) throw DomainError("jet order must be positive");
  if (!s.coeff(0).is_zero())
    throw DomainError("jet has nonzero constant term");
  if (!s.coeff(1).is_invertible())
    throw DomainError("jet leading coefficient is not invertible");
  return Jet(s);
}

Jet Jet::embed_translation(const Scalar& t, int k) {
  if (k < 2) throw DomainError("translation embedding requires order k >= 2");
  TruncatedSeries s = TruncatedSeries::identity(k);
  s.set_coeff(k, t);
  return Jet(s);
}

bool Jet::is_identity() const {
  return *this == Jet::identity(order());
}

Jet Jet::mul(const Jet& other) const {
  if (order() != other.order())
    throw DomainError("jet product: order mismatch");
  return Jet(s_.compose(other.s_));
}

Jet Jet::inv() const { return Jet(s_.composition_inverse()); }

Jet Jet::project(int new_order) const {
  if (new_order < 1 || new_order > order())
    throw DomainError("jet projection: target order out of range");
  return Jet(s_.truncate(new_order));
}

Jet Jet::conjugate(const Jet& g) const {
  if (order() != g.order())
    throw DomainError("jet conjugation: order mismatch");
  return mul(g).mul(inv());
}

std::pair<Jet, Jet> Jet::semidirect_split() const {
  Scalar a1 = leading();
  TruncatedSeries lin = TruncatedSeries::zero(order(), s_.variable());
  lin.set_coeff(1, a1);
  // g = (a1 y) ∘ u  with  u = a1^{-1} g.
  TruncatedSeries uni = s_.scale(a1.inverse());
  return {Jet(lin), Jet(uni)};
}

bool Jet::orientation_preserving() const {
  std::optional<int> s = leading().try_sign();
  if (!s || *s == 0)
    throw DomainError("sign of leading coefficient is undecidable in this ring");
  return *s > 0;
}

std::pair<Scalar, Scalar> j2_to_affine(const Jet& g) {
  if (g.order() != 2) throw DomainError("affine correspondence requires a 2-jet");
  Scalar a = g.coeff(1).inverse();
  Scalar b = g.coeff(2) * a * a;
  return {a, b};
}

Jet affine_to_j2(const Scalar& a, const Scalar& b) {
  if (!a.is_invertible()) throw DomainError("affine part a must be invertible");
  TruncatedSeries s = TruncatedSeries::zero(2, "y");
  Scalar ai = a.inverse();
  s.set_coeff(1, ai);
  s.set_coeff(2, b * ai * ai);
  return Jet::from_series(s);
}

namespace {

Jet commutator(const Jet& g, const Jet& h) {
  return g.mul(h).mul(g.inv()).mul(h.inv());
}

// Dedupe by canonical printed form; keeps output deterministic.
std::vector<Jet> dedupe(const std::vector<Jet>& jets, size_t cap) {
  std::vector<Jet> out;
  std::set<std::string> seen;
  for (const auto& j : jets) {
    if (out.size() >= cap) break;
    if (seen.insert(j.str()).second) out.push_back(j);
  }
  return out;
}

} // namespace

DerivedSeriesResult derived_series(const std::vector<Jet>& generators, int max_steps,
                                   int word_depth) {
  if (generators.empty()) throw DomainError("derived series needs generators");
  int order = generators.front().order();
  for (const auto& g : generators)
    if (g.order() != order) throw DomainError("derived series: mixed jet orders");

  constexpr size_t kWordCap = 48;
  DerivedSeriesResult res;
  res.stages.push_back(dedupe(generators, kWordCap));

  auto all_identity = [&](const std::vector<Jet>& v) {
    return std::all_of(v.begin(), v.end(), [](const Jet& j) { return j.is_identity(); });
  };
  if (all_identity(res.stages[0])) {
    res.trivial_stage = 0;
    return res;
  }

  for (int step = 1; step <= max_steps; ++step) {
    const std::vector<Jet>& prev = res.stages.back();
    // Words of bounded length over the previous stage and its inverses.
    std::vector<Jet> words = prev;
    for (const auto& g : prev) words.push_back(g.inv());
    words = dedupe(words, kWordCap);
    std::vector<Jet> current = words;
    for (int d = 1; d < word_depth; ++d) {
      std::vector<Jet> next;
      for (const auto& w : current)
        for (const auto& g : words) {
          if (next.size() >= kWordCap) break;
          next.push_back(w.mul(g));
        }
      current = dedupe(next, kWordCap);
    }
    std::vector<Jet> closure = words;
    closure.insert(closure.end(), current.begin(), current.end());
    closure = dedupe(closure, kWordCap);

    std::vector<Jet> commutators;
    for (const auto& a : closure)
      for (const auto& b : closure) {
        Jet c = commutator(a, b);
        if (!c.is_identity()) commutators.push_back(c);
      }
    commutators = dedupe(commutators, kWordCap);
    if (commutators.empty()) {
      res.stages.push_back({Jet::identity(order)});
      res.trivial_stage = step;
      return res;
    }
    res.stages.push_back(commutators);
  }
  return res;
}

} // namespace folhol
