#include "folhol/foliation.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "folhol/kv_format.hpp"
#include "folhol/series_parse.hpp"

namespace folhol {

namespace kv {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

const Entry* Section::find(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

const Entry& Section::require(const std::string& key) const {
  const Entry* e = find(key);
  if (!e)
    throw ParseError("missing key '" + key + "' in section [" + name + "]", line, 1);
  return *e;
}

std::vector<Section> parse(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("unterminated section header", lineno, (int)line.size());
      sections.push_back({trim(line.substr(1, line.size() - 2)), lineno, {}});
      if (sections.back().name.empty())
        throw ParseError("empty section name", lineno, 1);
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", lineno, 1);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", lineno, 1);
    if (sections.empty())
      throw ParseError("key '" + key + "' outside any section", lineno, 1);
    sections.back().entries.push_back({key, value, lineno});
  }
  return sections;
}

long as_int(const Entry& e) {
  try {
    size_t used = 0;
    long v = std::stol(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected integer for '" + e.key + "'", e.line, 1);
  }
}

bool as_bool(const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw ParseError("expected true|false for '" + e.key + "'", e.line, 1);
}

std::vector<std::string> as_name_list(const Entry& e) {
  const std::string& v = e.value;
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw ParseError("expected [a, b, ...] for '" + e.key + "'", e.line, 1);
  std::vector<std::string> out;
  std::string body = v.substr(1, v.size() - 2);
  std::istringstream items(body);
  std::string item;
  while (std::getline(items, item, ',')) {
    std::string name = trim(item);
    if (name.empty())
      throw ParseError("empty name in list for '" + e.key + "'", e.line, 1);
    out.push_back(name);
  }
  return out;
}

std::vector<std::string> as_quoted_list(const Entry& e) {
  const std::string& v = e.value;
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw ParseError("expected [\"...\", ...] for '" + e.key + "'", e.line, 1);
  std::vector<std::string> out;
  size_t i = 1;
  size_t end = v.size() - 1;
  while (i < end) {
    while (i < end && (v[i] == ' ' || v[i] == ',')) ++i;
    if (i >= end) break;
    if (v[i] != '"')
      throw ParseError("expected quoted string in list for '" + e.key + "'", e.line,
                       (int)i + 1);
    size_t close = v.find('"', i + 1);
    if (close == std::string::npos || close > end)
      throw ParseError("unterminated string in list for '" + e.key + "'", e.line,
                       (int)i + 1);
    out.push_back(v.substr(i + 1, close - i - 1));
    i = close + 1;
  }
  return out;
}

std::string as_quoted(const Entry& e) {
  const std::string& v = e.value;
  if (v.size() < 2 || v.front() != '"' || v.back() != '"')
    throw ParseError("expected quoted string for '" + e.key + "'", e.line, 1);
  return v.substr(1, v.size() - 2);
}

} // namespace kv

bool LeafPresentation::has_generator(const std::string& name) const {
  for (const auto& g : generators)
    if (g == name) return true;
  return false;
}

std::string free_reduce(const std::string& word) {
  std::string out;
  for (char c : word) {
    if (c == ' ') continue;
    if (!out.empty() && out.back() != c &&
        std::tolower((unsigned char)out.back()) == std::tolower((unsigned char)c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

void FoliationSpec::validate() const {
  if (k == 1)
    throw DomainError("k = 1 is rejected: there is a unique transverse order 1 "
                      "model (see the table1 command for its degenerate report)");
  if (k < 2) throw DomainError("transverse order k must be >= 2");

  std::set<std::string> names;
  for (const auto& g : leaf.generators) {
    if (g.size() != 1 || !std::islower((unsigned char)g[0]))
      throw DomainError("generator names must be single lowercase letters: '" + g + "'");
    if (!names.insert(g).second)
      throw DomainError("duplicate generator '" + g + "'");
  }
  for (const auto& w : leaf.relators) {
    if (w != free_reduce(w))
      throw DomainError("relator '" + w + "' is not freely reduced");
    for (char c : w) {
      std::string base(1, (char)std::tolower((unsigned char)c));
      if (!leaf.has_generator(base))
        throw DomainError("relator references unknown generator '" + base + "'");
    }
  }
  for (const auto& g : leaf.generators) {
    auto it = holonomy.find(g);
    if (it == holonomy.end())
      throw DomainError("missing holonomy datum for generator '" + g + "'");
    const HolonomyDatum& d = it->second;
    if (d.orientation != 1 && d.orientation != -1)
      throw DomainError("orientation character must be +1 or -1");
    if (d.kind == HolonomyDatum::Kind::flow) {
      if (!d.field) throw DomainError("flow datum without field");
    } else {
      if (!d.jet) throw DomainError("jet datum without jet");
      if (d.jet->order() < k - 1)
        throw DomainError("jet datum for '" + g + "' has order " +
                          std::to_string(d.jet->order()) + " < k-1 = " +
                          std::to_string(k - 1));
    }
  }
  for (const auto& [g, d] : holonomy)
    if (!leaf.has_generator(g))
      throw DomainError("holonomy datum for unknown generator '" + g + "'");

  // One exponential symbol only: all nonzero linear rates must agree.
  std::optional<Rational> rate;
  for (const auto& [g, d] : holonomy) {
    if (d.kind != HolonomyDatum::Kind::flow) continue;
    Rational a = d.field->linear_rate();
    if (a == 0) continue;
    if (rate && *rate != a)
      throw DomainError("unsupported coefficient ring: generators '" + g +
                        "' and another use different nonzero linear rates (" +
                        rational_str(a) + " vs " + rational_str(*rate) + ")");
    rate = a;
  }
}

FoliationSpec parse_spec(const std::string& text) {
  auto sections = kv::parse(text);
  FoliationSpec spec;
  bool saw_foliation = false;
  for (const auto& sec : sections) {
    if (sec.name == "foliation") {
      if (saw_foliation)
        throw ParseError("duplicate [foliation] section", sec.line, 1);
      saw_foliation = true;
      spec.k = (int)kv::as_int(sec.require("k"));
      spec.leaf.generators = kv::as_name_list(sec.require("generators"));
      if (const auto* rel = sec.find("relators")) {
        for (const auto& w : kv::as_quoted_list(*rel)) {
          std::string reduced = free_reduce(w);
          if (!reduced.empty()) spec.leaf.relators.push_back(reduced);
        }
      }
      if (const auto* bt = sec.find("bundle_trivial"))
        spec.bundle_trivial = kv::as_bool(*bt);
    } else if (sec.name.rfind("holonomy.", 0) == 0) {
      std::string gen = sec.name.substr(9);
      if (spec.holonomy.count(gen))
        throw ParseError("duplicate holonomy section for '" + gen + "'", sec.line, 1);
      HolonomyDatum d;
      const auto& type = sec.require("type");
      if (type.value == "flow") {
        d.kind = HolonomyDatum::Kind::flow;
        const auto& fe = sec.require("field");
        try {
          d.field = VectorField(
              parse_series(kv::as_quoted(fe), "y", -1, fe.line));
        } catch (const DomainError& err) {
          throw ParseError(std::string("invalid field for '") + gen + "': " +
                               err.what(),
                           fe.line, 1);
        }
      } else if (type.value == "jet") {
        d.kind = HolonomyDatum::Kind::jet;
        const auto& je = sec.require("jet");
        try {
          d.jet = Jet::from_series(parse_series(kv::as_quoted(je), "y", -1, je.line));
        } catch (const DomainError& err) {
          throw ParseError(std::string("invalid jet for '") + gen + "': " + err.what(),
                           je.line, 1);
        }
      } else {
        throw ParseError("holonomy type must be flow|jet", type.line, 1);
      }
      if (const auto* oe = sec.find("orientation")) {
        if (oe->value == "+1")
          d.orientation = 1;
        else if (oe->value == "-1")
          d.orientation = -1;
        else
          throw ParseError("orientation must be +1 or -1", oe->line, 1);
      }
      spec.holonomy.emplace(gen, std::move(d));
    } else {
      throw ParseError("unknown section [" + sec.name + "]", sec.line, 1);
    }
  }
  if (!saw_foliation) throw ParseError("missing [foliation] section", 1, 1);

  // Jet data parsed before k was necessarily known may need padding to k-1.
  for (auto& [gen, d] : spec.holonomy) {
    if (d.kind == HolonomyDatum::Kind::jet && d.jet->order() < spec.k - 1) {
      TruncatedSeries padded = TruncatedSeries::zero(spec.k - 1, "y");
      for (int i = 0; i <= d.jet->order(); ++i)
        padded.set_coeff(i, d.jet->series().coeff(i));
      d.jet = Jet::from_series(padded);
    }
  }
  spec.validate();
  return spec;
}

std::string print_spec(const FoliationSpec& spec) {
  std::ostringstream os;
  os << "[foliation]\n";
  os << "k = " << spec.k << "\n";
  os << "generators = [";
  for (size_t i = 0; i < spec.leaf.generators.size(); ++i) {
    if (i) os << ", ";
    os << spec.leaf.generators[i];
  }
  os << "]\n";
  os << "relators = [";
  for (size_t i = 0; i < spec.leaf.relators.size(); ++i) {
    if (i) os << ", ";
    os << '"' << spec.leaf.relators[i] << '"';
  }
  os << "]\n";
  os << "bundle_trivial = " << (spec.bundle_trivial ? "true" : "false") << "\n";
  for (const auto& g : spec.leaf.generators) {
    const HolonomyDatum& d = spec.holonomy.at(g);
    os << "\n[holonomy." << g << "]\n";
    if (d.kind == HolonomyDatum::Kind::flow) {
      os << "type = flow\n";
      os << "field = \"" << d.field->str() << "\"\n";
    } else {
      os << "type = jet\n";
      os << "jet = \"" << d.jet->str() << "\"\n";
    }
    os << "orientation = " << (d.orientation > 0 ? "+1" : "-1") << "\n";
  }
  return os.str();
}

SubmersionCandidate::SubmersionCandidate(BivariateTruncated p_, int k_)
    : p(std::move(p_)), k(k_) {
  if (k < 2) throw DomainError("submersion criterion requires k >= 2");
  if (!p.coefficient_of_y(0).is_zero())
    throw DomainError("submersion candidate must vanish on the leaf (p(x,0) = 0)");
}

SubmersionVerdict check_local_submersion(const SubmersionCandidate& c) {
  for (int r = 1; r <= c.k - 1; ++r) {
    TruncatedSeries coeff = c.p.coefficient_of_y(r);
    bool constant = true;
    for (int i = 1; i <= coeff.order(); ++i)
      if (!coeff.coeff(i).is_zero()) constant = false;
    if (!constant)
      return {false, r,
              "coefficient of y^" + std::to_string(r) +
                  " depends on x: " + coeff.str()};
    if (r == 1 && coeff.coeff(0).is_zero())
      return {false, 1, "coefficient of y vanishes"};
  }
  return {true, 0, "submersion criterion holds for r = 1.." + std::to_string(c.k - 1)};
}

bool check_vertical_automorphism(const BivariateTruncated& theta_family, int k) {
  if (k < 2) throw DomainError("vertical automorphism test requires k >= 2");
  if (!theta_family.coefficient_of_y(0).is_zero())
    throw DomainError("vertical family must fix the leaf (theta_x(0) = 0)");
  for (int r = 1; r <= std::min(k - 1, theta_family.order_y()); ++r) {
    TruncatedSeries coeff = theta_family.coefficient_of_y(r);
    for (int i = 1; i <= coeff.order(); ++i)
      if (!coeff.coeff(i).is_zero()) return false;
  }
  return true;
}

} // namespace folhol
