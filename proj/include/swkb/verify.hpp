#pragma once

#include <string>
#include <vector>

namespace swkb {

struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Exact property checks on the series up to `order` (>= 1). With
/// inject_mutation the q_2 coefficient handed to the split-based checks is
/// perturbed, which must make the suite fail.
std::vector<SuiteCheck> run_property_suite(int order, bool inject_mutation = false);

}  // namespace swkb
