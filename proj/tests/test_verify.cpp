#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "swkb/verify.hpp"

using namespace swkb;

namespace {

bool all_pass(const std::vector<SuiteCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.pass; });
}

}  // namespace

TEST_CASE("property suite passes") {
  for (int order : {1, 2, 5, 8}) {
    CAPTURE(order);
    const auto checks = run_property_suite(order);
    for (const auto& c : checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("mutation is detected") {
  for (int order : {1, 4, 8}) {
    CAPTURE(order);
    CHECK_FALSE(all_pass(run_property_suite(order, true)));
  }
  CHECK_THROWS_AS(run_property_suite(0), std::invalid_argument);
}
