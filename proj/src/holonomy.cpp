#include "folhol/holonomy.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "folhol/kv_format.hpp"
#include "folhol/series_parse.hpp"

namespace folhol {

const Jet& HolonomyHom::image(const std::string& generator) const {
  auto it = images.find(generator);
  if (it == images.end())
    throw DomainError("no image for generator '" + generator + "'");
  return it->second;
}

Jet HolonomyHom::word_image(const std::string& word) const {
  Jet res = Jet::identity(target_order);
  for (char c : word) {
    if (c == ' ') continue;
    bool inverse = std::isupper((unsigned char)c);
    std::string base(1, (char)std::tolower((unsigned char)c));
    const Jet& g = image(base);
    res = res.mul(inverse ? g.inv() : g);
  }
  return res;
}

bool HolonomyHom::operator==(const HolonomyHom& o) const {
  return target_order == o.target_order && leaf.generators == o.leaf.generators &&
         leaf.relators == o.leaf.relators && images == o.images;
}

HolonomyHom make_hom(int target_order, LeafPresentation leaf,
                     std::map<std::string, Jet> images) {
  HolonomyHom hom;
  hom.target_order = target_order;
  hom.leaf = std::move(leaf);
  hom.images = std::move(images);
  for (const auto& g : hom.leaf.generators) {
    const Jet& j = hom.image(g);
    if (j.order() != target_order)
      throw DomainError("image of '" + g + "' has order " +
                        std::to_string(j.order()) + ", expected " +
                        std::to_string(target_order));
  }
  for (const auto& w : hom.leaf.relators) {
    Jet res = hom.word_image(w);
    hom.relator_residuals.emplace(w, res);
    if (!res.is_identity())
      throw DomainError("inconsistent holonomy data: relator '" + w +
                        "' maps to " + res.str());
  }
  return hom;
}

HolonomyHom holonomy_hom(const FoliationSpec& spec) {
  spec.validate();
  int m = spec.k - 1;
  std::map<std::string, Jet> images;
  for (const auto& g : spec.leaf.generators) {
    const HolonomyDatum& d = spec.holonomy.at(g);
    if (d.kind == HolonomyDatum::Kind::flow)
      images.emplace(g, flow_jet(*d.field, m).at(Rational(1)));
    else
      images.emplace(g, d.jet->project(m));
  }
  return make_hom(m, spec.leaf, std::move(images));
}

HolonomyHom parse_hom(const std::string& text) {
  auto sections = kv::parse(text);
  int target_order = 0;
  LeafPresentation leaf;
  std::map<std::string, Jet> images;
  bool saw_hom = false;
  for (const auto& sec : sections) {
    if (sec.name == "hom") {
      saw_hom = true;
      target_order = (int)kv::as_int(sec.require("target_order"));
      leaf.generators = kv::as_name_list(sec.require("generators"));
      if (const auto* rel = sec.find("relators"))
        for (const auto& w : kv::as_quoted_list(*rel)) {
          std::string reduced = free_reduce(w);
          if (!reduced.empty()) leaf.relators.push_back(reduced);
        }
    } else if (sec.name.rfind("image.", 0) == 0) {
      std::string gen = sec.name.substr(6);
      const auto& je = sec.require("jet");
      try {
        images.emplace(gen, Jet::from_series(parse_series(kv::as_quoted(je), "y",
                                                          -1, je.line)));
      } catch (const DomainError& err) {
        throw ParseError(std::string("invalid jet for '") + gen + "': " + err.what(),
                         je.line, 1);
      }
    } else {
      throw ParseError("unknown section [" + sec.name + "]", sec.line, 1);
    }
  }
  if (!saw_hom) throw ParseError("missing [hom] section", 1, 1);
  if (target_order < 1)
    throw DomainError("target_order must be a positive integer");
  // Pad images below the target order.
  for (auto& [g, j] : images) {
    if (j.order() > target_order)
      throw DomainError("image of '" + g + "' exceeds target order");
    if (j.order() < target_order) {
      TruncatedSeries padded = TruncatedSeries::zero(target_order, "y");
      for (int i = 0; i <= j.order(); ++i) padded.set_coeff(i, j.series().coeff(i));
      j = Jet::from_series(padded);
    }
  }
  for (const auto& g : leaf.generators)
    if (!images.count(g))
      throw DomainError("missing image for generator '" + g + "'");
  for (const auto& [g, j] : images)
    if (!leaf.has_generator(g))
      throw DomainError("image for unknown generator '" + g + "'");
  return make_hom(target_order, std::move(leaf), std::move(images));
}

std::string print_hom(const HolonomyHom& hom) {
  std::ostringstream os;
  os << "[hom]\n";
  os << "target_order = " << hom.target_order << "\n";
  os << "generators = [";
  for (size_t i = 0; i < hom.leaf.generators.size(); ++i) {
    if (i) os << ", ";
    os << hom.leaf.generators[i];
  }
  os << "]\n";
  os << "relators = [";
  for (size_t i = 0; i < hom.leaf.relators.size(); ++i) {
    if (i) os << ", ";
    os << '"' << hom.leaf.relators[i] << '"';
  }
  os << "]\n";
  for (const auto& g : hom.leaf.generators) {
    os << "\n[image." << g << "]\n";
    os << "jet = \"" << hom.image(g).str() << "\"\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Conjugacy solver.
//
// Parametrize the conjugator as h = w ∘ (b1 y) with w unipotent and
// beta := b1^{-1} a symbolic unknown.  The requirement h γ1 h^{-1} = γ2
// becomes  w ∘ (scale γ1) ∘ w^{-1} = γ2, i.e. per generator and order r
//   [y^r]( w ∘ u~ ) = [y^r]( v ∘ w ),      u~_r = u_r beta^{r-1}.
// The order-r unknown w_r enters linearly with the field coefficient
// a^r - a (a = shared leading coefficient), so each stage is an affine
// system; constraints that drop w_r are resolved by eliminating whichever
// symbol still appears linearly with an invertible constant coefficient.

namespace {

// Multivariate polynomial in solver unknowns over Scalar.  Exponent vectors
// are trimmed so keys of different lengths compare consistently.
struct SymPoly {
  std::map<std::vector<int>, Scalar> terms;

  static SymPoly constant(const Scalar& c) {
    SymPoly p;
    if (!c.is_zero()) p.terms[{}] = c;
    return p;
  }
  static SymPoly var(int idx) {
    SymPoly p;
    std::vector<int> m((size_t)idx + 1, 0);
    m[(size_t)idx] = 1;
    p.terms[m] = Scalar(1);
    return p;
  }

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty());
  }
  Scalar constant_value() const {
    if (terms.empty()) return Scalar();
    return terms.begin()->second;
  }

  static std::vector<int> trim(std::vector<int> m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
    return m;
  }

  void add_term(std::vector<int> m, const Scalar& c) {
    if (c.is_zero()) return;
    m = trim(std::move(m));
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms[m] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  SymPoly operator+(const SymPoly& o) const {
    SymPoly r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, c);
    return r;
  }
  SymPoly operator-(const SymPoly& o) const {
    SymPoly r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, -c);
    return r;
  }
  SymPoly operator*(const SymPoly& o) const {
    SymPoly r;
    for (const auto& [m1, c1] : terms)
      for (const auto& [m2, c2] : o.terms) {
        std::vector<int> m(std::max(m1.size(), m2.size()), 0);
        for (size_t i = 0; i < m1.size(); ++i) m[i] += m1[i];
        for (size_t i = 0; i < m2.size(); ++i) m[i] += m2[i];
        r.add_term(std::move(m), c1 * c2);
      }
    return r;
  }
  SymPoly scale(const Scalar& c) const {
    SymPoly r;
    for (const auto& [m, v] : terms) r.add_term(m, v * c);
    return r;
  }

  int degree_in(int idx) const {
    int d = 0;
    for (const auto& [m, c] : terms) {
      (void)c;
      if ((size_t)idx < m.size()) d = std::max(d, m[(size_t)idx]);
    }
    return d;
  }

  std::set<int> vars() const {
    std::set<int> out;
    for (const auto& [m, c] : terms) {
      (void)c;
      for (size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) out.insert((int)i);
    }
    return out;
  }

  SymPoly substitute(int idx, const SymPoly& value) const {
    SymPoly r;
    for (const auto& [m, c] : terms) {
      int e = (size_t)idx < m.size() ? m[(size_t)idx] : 0;
      std::vector<int> rest = m;
      if ((size_t)idx < rest.size()) rest[(size_t)idx] = 0;
      SymPoly term;
      term.add_term(rest, c);
      for (int i = 0; i < e; ++i) term = term * value;
      r = r + term;
    }
    return r;
  }

  // If the polynomial is  c * x_idx + rest  with c a nonzero constant and
  // rest free of x_idx, return (c, rest).
  std::optional<std::pair<Scalar, SymPoly>> linear_split(int idx) const {
    Scalar coeff;
    SymPoly rest;
    for (const auto& [m, c] : terms) {
      int e = (size_t)idx < m.size() ? m[(size_t)idx] : 0;
      if (e == 0) {
        rest.add_term(m, c);
      } else if (e == 1) {
        std::vector<int> others = m;
        others[(size_t)idx] = 0;
        if (!trim(others).empty()) return std::nullopt; // coefficient not constant
        coeff += c;
      } else {
        return std::nullopt;
      }
    }
    if (coeff.is_zero() || !coeff.is_invertible()) return std::nullopt;
    return std::make_pair(coeff, rest);
  }
};

using PolySeries = std::vector<SymPoly>; // index = power of y, 0..order

PolySeries ps_zero(int order) { return PolySeries((size_t)order + 1); }

PolySeries ps_mul(const PolySeries& a, const PolySeries& b, int order) {
  PolySeries r = ps_zero(order);
  for (int i = 0; i <= order; ++i) {
    if (a[(size_t)i].is_zero()) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (b[(size_t)j].is_zero()) continue;
      r[(size_t)(i + j)] = r[(size_t)(i + j)] + a[(size_t)i] * b[(size_t)j];
    }
  }
  return r;
}

// outer ∘ inner at the given truncation order (inner constant term zero).
PolySeries ps_compose(const PolySeries& outer, const PolySeries& inner, int order) {
  PolySeries r = ps_zero(order);
  for (int j = order; j >= 1; --j) {
    r = ps_mul(r, inner, order);
    r[0] = r[0] + outer[(size_t)j];
  }
  r = ps_mul(r, inner, order);
  r[0] = r[0] + outer[0];
  return r;
}

struct Eliminator {
  std::map<int, SymPoly> assignments;           // var -> resolved value
  std::vector<std::pair<int, SymPoly>> pending; // (order, constraint)
  int failed_order = 0;
  std::string failure;

  bool failed() const { return failed_order != 0; }

  SymPoly reduce(SymPoly p) const {
    for (const auto& [v, val] : assignments)
      if (p.degree_in(v) > 0) p = p.substitute(v, val);
    return p;
  }

  void assign(int var, const SymPoly& value) {
    SymPoly v = reduce(value);
    for (auto& [w, val] : assignments) {
      (void)w;
      if (val.degree_in(var) > 0) val = val.substitute(var, v);
    }
    assignments[var] = v;
    std::vector<std::pair<int, SymPoly>> old;
    old.swap(pending);
    for (auto& [order, c] : old) {
      if (failed()) break;
      resolve(c, order);
    }
  }

  void resolve(SymPoly c, int order) {
    if (failed()) return;
    c = reduce(c);
    if (c.is_zero()) return;
    if (c.is_constant()) {
      failed_order = order;
      failure = "inconsistent constraint at order " + std::to_string(order);
      return;
    }
    // Prefer the most recently introduced symbol (the current stage unknown).
    std::set<int> vs = c.vars();
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
      auto split = c.linear_split(*it);
      if (!split) continue;
      assign(*it, split->second.scale(-(split->first.inverse())));
      return;
    }
    pending.emplace_back(order, std::move(c));
  }
};

} // namespace

ConjugacyResult are_conjugate(const HolonomyHom& g1, const HolonomyHom& g2) {
  if (g1.target_order != g2.target_order)
    throw DomainError("conjugacy: target orders differ");
  std::set<std::string> n1(g1.leaf.generators.begin(), g1.leaf.generators.end());
  std::set<std::string> n2(g2.leaf.generators.begin(), g2.leaf.generators.end());
  if (n1 != n2) throw DomainError("conjugacy: generator sets differ");

  const int m = g1.target_order;
  ConjugacyResult res;

  // Leading coefficients are conjugation invariants; they must match.
  for (const auto& g : g1.leaf.generators) {
    if (g1.image(g).leading() != g2.image(g).leading()) {
      res.conjugate = false;
      res.obstruction_order = 1;
      res.detail = "leading coefficient of generator '" + g + "' differs (" +
                   g1.image(g).leading().str() + " vs " + g2.image(g).leading().str() +
                   ")";
      return res;
    }
  }
  if (m == 1) {
    res.conjugate = true;
    res.conjugator = Jet::identity(1);
    res.detail = "images agree at order 1";
    return res;
  }

  // Unknowns: var 0 = beta (inverse of the conjugator's linear coefficient),
  // then one symbol per stage whose affine system leaves it undetermined.
  const int kBeta = 0;
  int next_var = 1;
  Eliminator elim;

  PolySeries w = ps_zero(m);
  w[1] = SymPoly::constant(Scalar(1));
  std::vector<int> w_vars((size_t)m + 1, -1);

  SymPoly beta = SymPoly::var(kBeta);
  for (int r = 2; r <= m && !elim.failed(); ++r) {
    int var = next_var++;
    w_vars[(size_t)r] = var;
    w[(size_t)r] = SymPoly::var(var);
    for (const auto& g : g1.leaf.generators) {
      const Jet& u = g1.image(g);
      const Jet& v = g2.image(g);
      // u~ = conjugate of u by the linear part: coefficients u_j beta^{j-1}.
      PolySeries ut = ps_zero(r), vs = ps_zero(r), wr = ps_zero(r);
      SymPoly beta_pow = SymPoly::constant(Scalar(1));
      for (int j = 1; j <= r; ++j) {
        ut[(size_t)j] = beta_pow.scale(u.coeff(j));
        vs[(size_t)j] = SymPoly::constant(v.coeff(j));
        wr[(size_t)j] = elim.reduce(w[(size_t)j]);
        beta_pow = beta_pow * beta;
      }
      SymPoly lhs = ps_compose(wr, ut, r)[(size_t)r];
      SymPoly rhs = ps_compose(vs, wr, r)[(size_t)r];
      elim.resolve(lhs - rhs, r);
      if (elim.failed()) break;
    }
  }

  if (!elim.failed()) {
    // Ground the remaining freedom: unipotent directions to 0, scaling to 1.
    std::map<int, Scalar> ground;
    std::set<int> free_vars;
    for (int v = 0; v < next_var; ++v)
      if (!elim.assignments.count(v)) free_vars.insert(v);
    for (int v : free_vars) ground[v] = v == kBeta ? Scalar(1) : Scalar();

    auto evaluate = [&](SymPoly p) -> Scalar {
      p = elim.reduce(p);
      for (const auto& [v, val] : ground)
        if (p.degree_in(v) > 0) p = p.substitute(v, SymPoly::constant(val));
      if (!p.is_constant())
        throw DomainError("internal: ungrounded symbol in conjugacy solve");
      return p.constant_value();
    };

    int bad_order = 0;
    for (const auto& [order, c] : elim.pending) {
      if (!evaluate(c).is_zero()) {
        bad_order = order;
        break;
      }
    }
    if (bad_order == 0) {
      Scalar beta_val = evaluate(SymPoly::var(kBeta));
      if (beta_val.is_zero() || !beta_val.is_invertible()) {
        res.conjugate = false;
        res.obstruction_order = 2;
        res.detail = "scaling part of the conjugator degenerates";
        return res;
      }
      Scalar b1 = beta_val.inverse();
      TruncatedSeries hs = TruncatedSeries::zero(m, "y");
      Scalar b1_pow = b1;
      for (int j = 1; j <= m; ++j) {
        hs.set_coeff(j, evaluate(w[(size_t)j]) * b1_pow);
        b1_pow *= b1;
      }
      Jet h = Jet::from_series(hs);
      for (const auto& g : g1.leaf.generators)
        if (h.conjugate(g1.image(g)) != g2.image(g))
          throw DomainError("internal: conjugacy solution failed verification");
      res.conjugate = true;
      res.conjugator = h;
      res.detail = "conjugator found by order-by-order elimination";
      return res;
    }
    elim.failed_order = bad_order;
    elim.failure = "constraint at order " + std::to_string(bad_order) +
                   " has no solution in the supported exact coefficient field";
  }

  res.conjugate = false;
  res.obstruction_order = elim.failed_order;
  res.detail = elim.failure;
  return res;
}

FoliationSpec realize_hom(const HolonomyHom& hom, int k) {
  if (k < 2) throw DomainError("realization requires k >= 2");
  if (hom.target_order != k - 1)
    throw DomainError("realization: homomorphism has target order " +
                      std::to_string(hom.target_order) + ", expected k-1 = " +
                      std::to_string(k - 1));
  FoliationSpec spec;
  spec.k = k;
  spec.leaf = hom.leaf;
  spec.bundle_trivial = true;
  for (const auto& g : hom.leaf.generators) {
    const Jet& img = hom.image(g);
    TruncatedSeries lift = TruncatedSeries::zero(k, "y");
    for (int i = 0; i <= k - 1; ++i) lift.set_coeff(i, img.series().coeff(i));
    HolonomyDatum d;
    d.kind = HolonomyDatum::Kind::jet;
    d.jet = Jet::from_series(lift);
    d.orientation = d.jet->orientation_preserving() ? 1 : -1;
    spec.holonomy.emplace(g, std::move(d));
  }
  spec.validate();
  return spec;
}

GammaR gamma_r(const HolonomyHom& hom, int k) {
  if (hom.target_order != k - 1)
    throw DomainError("gamma_r: homomorphism target order must be k-1");
  GammaR g{hom, k, {}};
  for (const auto& gen : hom.leaf.generators) {
    const Jet& img = hom.image(gen);
    TruncatedSeries lift = TruncatedSeries::zero(k, "y");
    for (int i = 0; i <= k - 1; ++i) lift.set_coeff(i, img.series().coeff(i));
    g.lifts.emplace(gen, Jet::from_series(lift));
  }
  return g;
}

std::optional<std::string> gamma_r_closed_form(const GammaR& g) {
  const std::string central = "t y^" + std::to_string(g.k);
  bool all_identity = true;
  for (const auto& gen : g.base.leaf.generators)
    if (!g.base.image(gen).is_identity()) all_identity = false;
  if (g.base.leaf.generators.empty() || all_identity)
    return "{y + " + central + " : t in R}";

  if (g.base.leaf.generators.size() != 1) return std::nullopt;
  const Jet& img = g.base.image(g.base.leaf.generators.front());

  bool linear_only = true;
  for (int i = 2; i <= img.order(); ++i)
    if (!img.coeff(i).is_zero()) linear_only = false;
  if (linear_only) {
    // Powers of a linear jet are powers of its coefficient.
    std::string base = img.leading().str();
    std::string power;
    if (base == "E")
      power = "E^n";
    else if (base.find(' ') == std::string::npos && base.find('/') == std::string::npos &&
             base.find('+') == std::string::npos && base.find('-') == std::string::npos)
      power = base + "^n";
    else
      power = "(" + base + ")^n";
    return "{" + power + " y + " + central + " : n in Z, t in R}";
  }

  if (img.leading() == Scalar(1)) {
    // Unipotent generator: powers are the integer-time flow of the log.
    for (int i = 0; i <= img.order(); ++i)
      if (!img.coeff(i).is_rational()) return std::nullopt;
    FlowJet pattern = flow_jet(formal_log(img), img.order());
    return "{" + pattern.str("n") + " + " + central + " : n in Z, t in R}";
  }
  return std::nullopt;
}

std::map<std::string, Scalar> bott_character(const HolonomyHom& hom) {
  std::map<std::string, Scalar> out;
  for (const auto& g : hom.leaf.generators) out[g] = hom.image(g).leading();
  return out;
}

ExtensionReport extension_report(const FoliationSpec& spec) {
  HolonomyHom hom = holonomy_hom(spec);
  bool two_sided = spec.bundle_trivial;
  for (const auto& g : spec.leaf.generators) {
    if (spec.holonomy.at(g).orientation != 1) two_sided = false;
    if (!hom.image(g).orientation_preserving()) two_sided = false;
  }
  ExtensionReport rep{two_sided ? ExtensionReport::Ideal::KplusK
                                : ExtensionReport::Ideal::K,
                      two_sided ? 2 : 1, gamma_r(hom, spec.k)};
  return rep;
}

} // namespace folhol
