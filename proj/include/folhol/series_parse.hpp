#ifndef FOLHOL_SERIES_PARSE_HPP
#define FOLHOL_SERIES_PARSE_HPP

#include <string>

#include "folhol/series.hpp"

namespace folhol {

/// Parse a series literal: a sum of terms `c`, `c y^n`, `c E^m y^n`,
/// `c t^j y^n` with c an integer or `p/q`; whitespace-insensitive, `^1`
/// optional, E-exponents may be negative.  When `order` is negative the
/// literal's own degree is used (at least 1).  Column numbers in errors are
/// 1-based; `line` seeds the reported line for embedded literals.
TruncatedSeries parse_series(const std::string& text, const std::string& variable,
                             int order = -1, int line = 1);

} // namespace folhol

#endif
