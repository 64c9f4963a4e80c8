#ifndef FOLHOL_KV_FORMAT_HPP
#define FOLHOL_KV_FORMAT_HPP

#include <string>
#include <vector>

#include "folhol/errors.hpp"

namespace folhol::kv {

/// Sectioned key-value text: `[section]` headers followed by `key = value`
/// lines; `#` starts a comment; blank lines ignored.
struct Entry {
  std::string key;
  std::string value; // raw, trimmed
  int line;
};

struct Section {
  std::string name;
  int line;
  std::vector<Entry> entries;

  const Entry* find(const std::string& key) const;
  const Entry& require(const std::string& key) const;
};

std::vector<Section> parse(const std::string& text);

long as_int(const Entry& e);
bool as_bool(const Entry& e);
/// `[a, b, c]` — bare identifiers.
std::vector<std::string> as_name_list(const Entry& e);
/// `["w1", "w2"]` — quoted strings.
std::vector<std::string> as_quoted_list(const Entry& e);
/// `"text"` — one quoted string.
std::string as_quoted(const Entry& e);

} // namespace folhol::kv

#endif
