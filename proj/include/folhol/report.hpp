#ifndef FOLHOL_REPORT_HPP
#define FOLHOL_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "folhol/holonomy.hpp"

namespace folhol {

/// Sectioned plain-text report.  Byte-deterministic for identical inputs:
/// no timestamps, no environment leakage.
struct Report {
  std::vector<std::pair<std::string, std::string>> sections;
  int exit_status = 0;

  void add(std::string heading, std::string body);
  std::string str() const;
};

/// Full invariant report: homomorphism, Bott character, Gamma generators,
/// Gamma_R descriptor and the extension structure.
Report report_holonomy(const FoliationSpec& spec);

/// Conjugacy comparison of two specs over the same leaf presentation.
Report report_compare(const FoliationSpec& s1, const FoliationSpec& s2);

/// Recompute the four built-in model foliations of the cylinder and check
/// their holonomy-group descriptors; nonzero exit status on any mismatch.
Report report_table1();

/// The built-in cylinder fixtures used by report_table1 (rows 2..4).
const std::string& table1_spec_text(int row);

} // namespace folhol

#endif
