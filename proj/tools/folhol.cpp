#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "folhol/groupoid.hpp"
#include "folhol/report.hpp"
#include "folhol/series_parse.hpp"

using namespace folhol;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Rational parse_rational(const std::string& text) {
  Scalar c = parse_series(text, "y", 0).coeff(0);
  if (!c.is_rational()) throw DomainError("expected a rational number: " + text);
  return c.as_rational();
}

GroupoidElement parse_arrow(const std::string& text, int k) {
  std::string s;
  for (char c : text)
    if (!std::isspace((unsigned char)c)) s += c;
  auto body = [&](size_t prefix) {
    if (s.back() != ')') throw DomainError("malformed arrow: " + text);
    return s.substr(prefix, s.size() - prefix - 1);
  };
  if (s.rfind("pair(", 0) == 0) {
    std::string b = body(5);
    size_t comma = b.find(',');
    if (comma == std::string::npos) throw DomainError("pair arrow needs two points");
    return GroupoidElement::pair_arrow(parse_rational(b.substr(0, comma)),
                                       parse_rational(b.substr(comma + 1)));
  }
  if (s.rfind("jet(", 0) == 0)
    return GroupoidElement::jet_arrow(
        Jet::from_series(parse_series(body(4), "y", k)));
  throw DomainError("arrow must be pair(y2, y1) or jet(<series>): " + text);
}

int run(int argc, char** argv) {
  CLI::App app{"exact holonomy calculus for transverse order-k foliations"};
  app.require_subcommand(1);

  // ---- jet ----
  auto* jet_cmd = app.add_subcommand("jet", "jet group arithmetic");
  jet_cmd->require_subcommand(1);
  int jet_order = 0;
  std::vector<std::string> jet_args;
  int project_to = 0;
  auto add_jet_sub = [&](const std::string& name, const std::string& desc,
                         size_t arity) {
    auto* sub = jet_cmd->add_subcommand(name, desc);
    sub->add_option("--order", jet_order, "jet order r")->required();
    sub->add_option("series", jet_args, "series literal(s)")
        ->expected((int)arity)
        ->required();
    return sub;
  };
  auto* jm = add_jet_sub("mul", "compose-and-truncate product g∘h", 2);
  auto* ji = add_jet_sub("inv", "group inverse", 1);
  auto* jp = add_jet_sub("project", "delete terms above an order", 1);
  jp->add_option("--to", project_to, "target order")->required();
  auto* jc = add_jet_sub("conjugate", "h g h^-1 (args: h g)", 2);
  auto* js = add_jet_sub("split", "linear and unipotent factors", 1);

  // ---- flow ----
  auto* flow_cmd = app.add_subcommand("flow", "formal flow of a vector field");
  std::string flow_field;
  int flow_order = 0;
  std::string flow_time;
  flow_cmd->add_option("--field", flow_field, "vector field series g(y)")->required();
  flow_cmd->add_option("--order", flow_order, "truncation order m")->required();
  flow_cmd->add_option("--time", flow_time, "evaluate at rational time t0");

  // ---- holonomy / report / compare ----
  std::string spec_path, spec_path2;
  auto* hol_cmd = app.add_subcommand("holonomy", "holonomy invariant report");
  hol_cmd->add_option("spec", spec_path, "foliation spec file")->required();
  auto* rep_cmd = app.add_subcommand("report", "full structural report");
  rep_cmd->add_option("spec", spec_path, "foliation spec file")->required();
  auto* cmp_cmd = app.add_subcommand("compare", "decide conjugacy-equivalence");
  cmp_cmd->add_option("spec1", spec_path, "first spec file")->required();
  cmp_cmd->add_option("spec2", spec_path2, "second spec file")->required();

  // ---- realize ----
  auto* real_cmd = app.add_subcommand("realize", "spec realizing a homomorphism");
  std::string hom_path;
  int realize_k = 0;
  real_cmd->add_option("--hom", hom_path, "homomorphism file")->required();
  real_cmd->add_option("--k", realize_k, "transverse order k")->required();

  // ---- separate ----
  auto* sep_cmd = app.add_subcommand("separate", "separation certificate");
  std::string theta1, theta2;
  int sep_k = 0;
  sep_cmd->add_option("--theta1", theta1, "first polynomial")->required();
  sep_cmd->add_option("--theta2", theta2, "second polynomial")->required();
  sep_cmd->add_option("--k", sep_k, "transverse order k")->required();

  // ---- groupoid ----
  auto* grp_cmd = app.add_subcommand("groupoid", "blowup groupoid arithmetic");
  grp_cmd->require_subcommand(1);
  auto* grp_compose = grp_cmd->add_subcommand("compose", "compose arrows");
  int grp_k = 0;
  std::vector<std::string> arrows;
  grp_compose->add_option("--k", grp_k, "jet order of the model")->required();
  grp_compose->add_option("arrows", arrows, "arrows, leftmost applied last")
      ->expected(-2)
      ->required();

  // ---- table1 ----
  auto* tbl_cmd = app.add_subcommand("table1", "recompute the model cylinder rows");

  CLI11_PARSE(app, argc, argv);

  auto parse_jet = [&](const std::string& text) {
    return Jet::from_series(parse_series(text, "y", jet_order));
  };

  if (jm->parsed()) {
    std::cout << parse_jet(jet_args[0]).mul(parse_jet(jet_args[1])).str() << "\n";
  } else if (ji->parsed()) {
    std::cout << parse_jet(jet_args[0]).inv().str() << "\n";
  } else if (jp->parsed()) {
    std::cout << parse_jet(jet_args[0]).project(project_to).str() << "\n";
  } else if (jc->parsed()) {
    std::cout << parse_jet(jet_args[0]).conjugate(parse_jet(jet_args[1])).str()
              << "\n";
  } else if (js->parsed()) {
    auto [lin, uni] = parse_jet(jet_args[0]).semidirect_split();
    std::cout << "linear: " << lin.str() << "\n";
    std::cout << "unipotent: " << uni.str() << "\n";
  } else if (flow_cmd->parsed()) {
    VectorField field(parse_series(flow_field, "y", -1));
    FlowJet fj = flow_jet(field, flow_order);
    if (flow_time.empty())
      std::cout << fj.str() << "\n";
    else
      std::cout << fj.at(parse_rational(flow_time)).str() << "\n";
  } else if (hol_cmd->parsed()) {
    Report rep = report_holonomy(parse_spec(read_file(spec_path)));
    std::cout << rep.str();
    return rep.exit_status;
  } else if (rep_cmd->parsed()) {
    FoliationSpec spec = parse_spec(read_file(spec_path));
    Report rep = report_holonomy(spec);
    Report full;
    full.add("canonical spec", print_spec(spec));
    for (auto& s : rep.sections) full.sections.push_back(std::move(s));
    full.exit_status = rep.exit_status;
    std::cout << full.str();
    return full.exit_status;
  } else if (cmp_cmd->parsed()) {
    Report rep = report_compare(parse_spec(read_file(spec_path)),
                                parse_spec(read_file(spec_path2)));
    std::cout << rep.str();
    return rep.exit_status;
  } else if (real_cmd->parsed()) {
    HolonomyHom hom = parse_hom(read_file(hom_path));
    std::cout << print_spec(realize_hom(hom, realize_k));
  } else if (sep_cmd->parsed()) {
    TruncatedSeries t1 = parse_series(theta1, "y");
    TruncatedSeries t2 = parse_series(theta2, "y");
    SeparationCertificate cert = separation_epsilon(t1, t2, sep_k);
    Report rep;
    {
      std::ostringstream os;
      os << "theta1: " << t1.str() << "\n";
      os << "theta2: " << t2.str() << "\n";
      os << "k: " << sep_k << "\n";
      rep.add("inputs", os.str());
    }
    {
      std::ostringstream os;
      os << "epsilon: " << rational_str(cert.epsilon) << "\n";
      os << "lowest differing order: " << cert.lowest_order << "\n";
      os << "certificate: " << cert.explanation << "\n";
      rep.add("separation", os.str());
    }
    std::cout << rep.str();
  } else if (grp_compose->parsed()) {
    GroupoidElement acc = parse_arrow(arrows.front(), grp_k);
    for (size_t i = 1; i < arrows.size(); ++i)
      acc = acc.compose(parse_arrow(arrows[i], grp_k));
    std::cout << acc.str() << "\n";
  } else if (tbl_cmd->parsed()) {
    Report rep = report_table1();
    std::cout << rep.str();
    return rep.exit_status;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "error[parse]: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error[domain]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return 1;
  }
}
