#ifndef FOLHOL_ERRORS_HPP
#define FOLHOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace folhol {

/// Violation of an operation precondition or a value invariant.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed textual input (series literals, spec files, hom files).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line(line), column(column) {}

  int line;
  int column;
};

} // namespace folhol

#endif
