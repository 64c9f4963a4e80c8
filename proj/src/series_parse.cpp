#include "folhol/series_parse.hpp"

#include <cctype>
#include <map>

namespace folhol {

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;
  int line;

  explicit Cursor(const std::string& text, int line) : s(text), line(line) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("series literal: " + msg, line, (int)pos + 1);
  }
  long integer() {
    skip_ws();
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      neg = s[pos] == '-';
      ++pos;
    }
    skip_ws();
    if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected integer");
    long v = 0;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
      v = v * 10 + (s[pos] - '0');
      if (v > (1L << 60)) fail("integer literal too large");
      ++pos;
    }
    return neg ? -v : v;
  }
  long exponent(bool allow_negative) {
    // caller consumed '^'
    long e = integer();
    if (!allow_negative && e < 0) fail("negative exponent not allowed here");
    return e;
  }
};

} // namespace

TruncatedSeries parse_series(const std::string& text, const std::string& variable,
                             int order, int line) {
  if (variable.size() != 1)
    throw DomainError("series variable must be a single letter");
  char var = variable[0];
  Cursor c(text, line);
  std::map<int, Scalar> coeffs;
  int max_power = 0;

  bool first = true;
  while (!c.done()) {
    int sign = 1;
    char ch = c.peek();
    if (ch == '+' || ch == '-') {
      sign = ch == '-' ? -1 : 1;
      ++c.pos;
    } else if (!first) {
      c.fail("expected '+' or '-' between terms");
    }
    // one term: optional rational coefficient then optional E, t, var factors
    bool saw_factor = false;
    Rational coef(1);
    long e_exp = 0;
    int t_exp = 0;
    int y_exp = 0;
    bool saw_coef = false, saw_e = false, saw_t = false, saw_y = false;
    for (;;) {
      char f = c.peek();
      if (std::isdigit((unsigned char)f)) {
        if (saw_coef || saw_e || saw_t || saw_y)
          c.fail("numeric coefficient must come first in a term");
        long num = c.integer();
        long den = 1;
        if (c.peek() == '/') {
          ++c.pos;
          den = c.integer();
          if (den <= 0) c.fail("denominator must be positive");
        }
        coef = Rational(num, den);
        coef.canonicalize();
        saw_coef = saw_factor = true;
      } else if (f == 'E') {
        if (saw_e) c.fail("repeated E factor");
        ++c.pos;
        e_exp = 1;
        if (c.peek() == '^') {
          ++c.pos;
          e_exp = c.exponent(true);
        }
        saw_e = saw_factor = true;
      } else if (f == 't' && var != 't') {
        if (saw_t) c.fail("repeated t factor");
        ++c.pos;
        t_exp = 1;
        if (c.peek() == '^') {
          ++c.pos;
          t_exp = (int)c.exponent(false);
        }
        saw_t = saw_factor = true;
      } else if (f == var) {
        if (saw_y) c.fail(std::string("repeated ") + var + " factor");
        ++c.pos;
        y_exp = 1;
        if (c.peek() == '^') {
          ++c.pos;
          y_exp = (int)c.exponent(false);
        }
        saw_y = saw_factor = true;
      } else {
        break;
      }
    }
    if (!saw_factor) c.fail("expected a term");
    Scalar value = Scalar::term(coef * Rational(sign), e_exp, t_exp);
    coeffs[y_exp] += value;
    max_power = std::max(max_power, y_exp);
    first = false;
  }
  if (first) c.fail("empty series literal");

  int final_order = order >= 0 ? order : std::max(max_power, 1);
  if (max_power > final_order)
    throw ParseError("series literal: power " + std::to_string(max_power) +
                         " exceeds truncation order " + std::to_string(final_order),
                     line, 1);
  TruncatedSeries s(variable, final_order);
  for (const auto& [p, v] : coeffs) s.set_coeff(p, v);
  return s;
}

} // namespace folhol
