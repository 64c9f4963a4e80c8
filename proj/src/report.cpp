#include "folhol/report.hpp"

#include <future>
#include <sstream>

namespace folhol {

void Report::add(std::string heading, std::string body) {
  sections.emplace_back(std::move(heading), std::move(body));
}

std::string Report::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [heading, body] : sections) {
    if (!first) os << "\n";
    os << "# " << heading << "\n" << body;
    if (!body.empty() && body.back() != '\n') os << "\n";
    first = false;
  }
  return os.str();
}

namespace {

std::string spec_summary(const FoliationSpec& spec) {
  std::ostringstream os;
  os << "k: " << spec.k << "\n";
  os << "generators:";
  if (spec.leaf.generators.empty()) os << " (none)";
  for (const auto& g : spec.leaf.generators) os << " " << g;
  os << "\n";
  os << "relators:";
  if (spec.leaf.relators.empty()) os << " (none)";
  for (const auto& w : spec.leaf.relators) os << " \"" << w << "\"";
  os << "\n";
  os << "bundle_trivial: " << (spec.bundle_trivial ? "true" : "false") << "\n";
  return os.str();
}

std::string hom_section(const HolonomyHom& hom) {
  std::ostringstream os;
  if (hom.leaf.generators.empty()) {
    os << "gamma: trivial (no generators)\n";
  } else {
    for (const auto& g : hom.leaf.generators)
      os << g << " -> " << hom.image(g).str() << "\n";
  }
  if (hom.leaf.relators.empty())
    os << "relator check: (no relators)\n";
  else
    os << "relator check: all identity\n";
  return os.str();
}

std::string gamma_r_section(const GammaR& gr) {
  std::ostringstream os;
  bool trivial = true;
  for (const auto& g : gr.base.leaf.generators)
    if (!gr.base.image(g).is_identity()) trivial = false;
  if (gr.base.leaf.generators.empty() || trivial) {
    os << "Gamma: trivial\n";
  } else {
    os << "Gamma generated by:";
    os << "\n";
    for (const auto& g : gr.base.leaf.generators)
      os << "  " << g << " -> " << gr.base.image(g).str() << "\n";
  }
  os << "Gamma_R lifts (order " << gr.k << ", top coefficient 0):\n";
  if (gr.base.leaf.generators.empty()) os << "  (none)\n";
  for (const auto& g : gr.base.leaf.generators)
    os << "  " << g << " -> " << gr.lifts.at(g).str() << "\n";
  os << "central line: {y + t y^" << gr.k << " : t in R}\n";
  if (auto cf = gamma_r_closed_form(gr)) os << "Gamma_R: " << *cf << "\n";
  return os.str();
}

std::string extension_section(const ExtensionReport& er) {
  std::ostringstream os;
  os << "open leaves: " << er.open_leaf_count << "\n";
  os << "ideal: " << (er.ideal_kind == ExtensionReport::Ideal::KplusK ? "K (+) K" : "K")
     << "\n";
  os << "extension: 0 -> I -> C*(G(F)) -> C*(Gamma_R) (x) K -> 0\n";
  return os.str();
}

} // namespace

Report report_holonomy(const FoliationSpec& spec) {
  Report rep;
  HolonomyHom hom = holonomy_hom(spec);
  ExtensionReport er = extension_report(spec);

  rep.add("spec", spec_summary(spec));
  rep.add("holonomy homomorphism (order " + std::to_string(hom.target_order) + ")",
          hom_section(hom));
  {
    std::ostringstream os;
    auto bott = bott_character(hom);
    if (bott.empty()) os << "(no generators)\n";
    for (const auto& g : hom.leaf.generators)
      os << g << " -> " << bott.at(g).str() << "\n";
    rep.add("bott character", os.str());
  }
  rep.add("gamma_R", gamma_r_section(er.quotient));
  rep.add("extension", extension_section(er));
  return rep;
}

Report report_compare(const FoliationSpec& s1, const FoliationSpec& s2) {
  if (s1.k != s2.k)
    throw DomainError("compare: transverse orders differ (" + std::to_string(s1.k) +
                      " vs " + std::to_string(s2.k) + ")");
  if (s1.leaf.generators != s2.leaf.generators)
    throw DomainError("compare: generator lists differ");

  // Independent specs; evaluate the two pipelines concurrently.
  auto f1 = std::async(std::launch::async, [&] { return holonomy_hom(s1); });
  auto f2 = std::async(std::launch::async, [&] { return holonomy_hom(s2); });
  HolonomyHom h1 = f1.get();
  HolonomyHom h2 = f2.get();

  Report rep;
  {
    std::ostringstream os;
    os << "k: " << s1.k << "\n";
    os << "holonomy 1:\n";
    for (const auto& g : h1.leaf.generators)
      os << "  " << g << " -> " << h1.image(g).str() << "\n";
    os << "holonomy 2:\n";
    for (const auto& g : h2.leaf.generators)
      os << "  " << g << " -> " << h2.image(g).str() << "\n";
    rep.add("inputs", os.str());
  }
  ConjugacyResult cr = are_conjugate(h1, h2);
  std::ostringstream os;
  if (cr.conjugate) {
    os << "equivalent near the singular leaf\n";
    os << "conjugator: " << cr.conjugator->str() << "\n";
  } else {
    os << "not equivalent (fixed generator matching)\n";
    os << "obstruction order: " << cr.obstruction_order << "\n";
    os << "detail: " << cr.detail << "\n";
  }
  rep.add("verdict", os.str());
  return rep;
}

namespace {

const std::string kRow2 = R"([foliation]
k = 2
generators = [a]
relators = []
bundle_trivial = true

[holonomy.a]
type = flow
field = "0"
orientation = +1
)";

const std::string kRow3 = R"([foliation]
k = 2
generators = [a]
relators = []
bundle_trivial = true

[holonomy.a]
type = flow
field = "y"
orientation = +1
)";

const std::string kRow4 = R"([foliation]
k = 4
generators = [a]
relators = []
bundle_trivial = true

[holonomy.a]
type = flow
field = "y^2"
orientation = +1
)";

} // namespace

const std::string& table1_spec_text(int row) {
  switch (row) {
    case 2: return kRow2;
    case 3: return kRow3;
    case 4: return kRow4;
    default: throw DomainError("table1 fixtures exist for rows 2..4");
  }
}

Report report_table1() {
  Report rep;
  bool all_ok = true;

  auto row_body = [&](const std::string& foliation, const std::string& computed,
                      const std::string& expected, const std::string& ambient,
                      const std::string& extra) {
    std::ostringstream os;
    os << "foliation: " << foliation << "\n";
    os << "holonomy group: " << computed << "\n";
    os << "expected:       " << expected << "\n";
    os << "ambient group: " << ambient << "\n";
    if (!extra.empty()) os << extra;
    bool ok = computed == expected;
    os << "status: " << (ok ? "ok" : "MISMATCH") << "\n";
    if (!ok) all_ok = false;
    return os.str();
  };

  // Row 1 is the degenerate order-1 case: the unique transverse order 1
  // foliation, whose holonomy group is the full positive linear group.
  rep.add("row 1",
          row_body("F{d/dx, y d/dy} (k = 1: unique foliation)",
                   "{E^t y : t in R}", "{E^t y : t in R}", "J^1",
                   "note: k = 1 is degenerate; reported from the closed form\n"));

  struct RowSpec {
    int row;
    std::string foliation;
    std::string expected;
    std::string ambient;
  };
  const std::vector<RowSpec> rows = {
      {2, "F{d/dx, y^2 d/dy}", "{y + t y^2 : t in R}", "J^2"},
      {3, "F{d/dx + y d/dy, y^2 d/dy}", "{E^n y + t y^2 : n in Z, t in R}", "J^2"},
      {4, "F{d/dx + y^2 d/dy, y^4 d/dy}",
       "{y + n y^2 + n^2 y^3 + t y^4 : n in Z, t in R}", "J^4"},
  };
  for (const auto& r : rows) {
    FoliationSpec spec = parse_spec(table1_spec_text(r.row));
    HolonomyHom hom = holonomy_hom(spec);
    GammaR gr = gamma_r(hom, spec.k);
    auto cf = gamma_r_closed_form(gr);
    std::string computed = cf ? *cf : "(no closed form)";
    std::string extra;
    if (r.row == 4) {
      // Explicit jet powers: the lift powers must follow the n-pattern.
      const Jet& lift = gr.lifts.at("a");
      bool powers_ok = true;
      for (int n = -3; n <= 3; ++n) {
        Jet p = Jet::identity(spec.k);
        for (int i = 0; i < std::abs(n); ++i)
          p = n > 0 ? p.mul(lift) : p.mul(lift.inv());
        TruncatedSeries want = TruncatedSeries::zero(spec.k - 1, "y");
        want.set_coeff(1, Scalar(1));
        want.set_coeff(2, Scalar(Rational(n)));
        want.set_coeff(3, Scalar(Rational(n) * Rational(n)));
        if (p.project(spec.k - 1) != Jet::from_series(want)) powers_ok = false;
      }
      extra = std::string("power check n in {-3..3}: ") + (powers_ok ? "ok" : "MISMATCH") +
              "\n";
      if (!powers_ok) all_ok = false;
    }
    rep.add("row " + std::to_string(r.row),
            row_body(r.foliation, computed, r.expected, r.ambient, extra));
  }
  rep.exit_status = all_ok ? 0 : 1;
  return rep;
}

} // namespace folhol
