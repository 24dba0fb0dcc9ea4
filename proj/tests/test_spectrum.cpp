#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "swkb/errors.hpp"
#include "swkb/spectrum.hpp"

using namespace swkb;

namespace {

const PolynomialSuperpotential oscillator{{0.0, 1.0}, 1.0, "oscillator"};
const PolynomialSuperpotential cubic{{0.0, 0.0, 0.0, 1.0 / 3.0}, 1.0, "cubic"};

// Sinc-DVR eigenvalues of x^6/9 - x^2 (see test_oracle).
constexpr double kCubicLevels[] = {0.0, 1.11745111405788, 3.6364383042126143, 6.744011685443872};

PolynomialSuperpotential with_hbar(PolynomialSuperpotential p, double hbar) {
  p.hbar = hbar;
  return p;
}

}  // namespace

TEST_CASE("action") {
  CHECK(action(oscillator, 0, 4.0) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-11));
  CHECK(action(oscillator, 4, 4.0) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-11));
  CHECK(std::abs(action(cubic, 0, 1.0) - 5.25408053001401033232) < 1e-10);
  const ActionFunction f(cubic, 0);
  double previous = 0.0;
  for (double E = 0.05; E < 40.0; E *= 1.5) {
    const double a = f(E);
    CHECK(a > previous);
    previous = a;
  }
  CHECK(f.target(3) == doctest::Approx(6.0 * std::numbers::pi));
  CHECK(ActionFunction(cubic, 0, Partner::plus).target(2) == doctest::Approx(6.0 * std::numbers::pi));
}

TEST_CASE("oscillator levels") {
  for (int order : {0, 2, 4}) {
    for (int n = 0; n <= 5; ++n) {
      CAPTURE(order);
      CAPTURE(n);
      const LevelSolution s = solve_level({oscillator, order, n, Partner::minus});
      CHECK(std::abs(s.E - 2.0 * n) < 1e-8);
      CHECK(s.analytic_zero == (n == 0));
      const LevelSolution p = solve_level({oscillator, order, n, Partner::plus});
      CHECK(std::abs(p.E - 2.0 * (n + 1)) < 1e-8);
    }
  }
}

TEST_CASE("cubic levels approach the oracle") {
  CHECK(solve_level({cubic, 0, 0, Partner::minus}).E == 0.0);
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    const double e0 = solve_level({cubic, 0, n, Partner::minus}).E;
    const double e2 = solve_level({cubic, 2, n, Partner::minus}).E;
    CHECK(std::abs(e2 - kCubicLevels[n]) < std::abs(e0 - kCubicLevels[n]));
  }
  // The hbar^2 term grows like E^{-2/3}: no ground-state root beyond order 0.
  CHECK_THROWS_AS(solve_level({cubic, 2, 0, Partner::minus}), BracketNotFound);
}

TEST_CASE("corrections scale with hbar^2") {
  // Fixed classical action: n hbar held constant.
  std::vector<double> shifts;
  for (int halvings = 0; halvings < 3; ++halvings) {
    const double hbar = std::pow(0.5, halvings);
    const int n = 1 << halvings;
    const auto phi = with_hbar(cubic, hbar);
    const double e0 = solve_level({phi, 0, n, Partner::minus}).E;
    const double e2 = solve_level({phi, 2, n, Partner::minus}).E;
    shifts.push_back(std::abs(e2 - e0));
  }
  CHECK(shifts[0] / shifts[1] == doctest::Approx(4.0).epsilon(0.15));
  CHECK(shifts[1] / shifts[2] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("degeneracy report") {
  const SpectrumReport osc = degeneracy_report(oscillator, {0, 2}, 3);
  REQUIRE(osc.degeneracy.size() == 6);
  for (const auto& d : osc.degeneracy) {
    REQUIRE(d.gap.has_value());
    CHECK(*d.minus == doctest::Approx(2.0 * d.n));
    CHECK(*d.gap < 1e-9);
  }

  SpectrumReport r = degeneracy_report(cubic, {0, 4}, 4);
  const auto gap = r.max_gap();
  REQUIRE(gap.has_value());
  CHECK(*gap < 1e-8);
  CHECK_FALSE(r.levels[0].energies[1].has_value());
  CHECK_FALSE(r.levels[0].failures[1].empty());

  attach_oracle(r, {kCubicLevels[0], kCubicLevels[1], kCubicLevels[2], kCubicLevels[3]});
  CHECK(r.levels[1].oracle.has_value());
  CHECK_FALSE(r.levels[4].oracle.has_value());
  CHECK(*r.levels[1].abs_error[1] < *r.levels[1].abs_error[0]);

  const nlohmann::json j = to_json(r);
  CHECK(j["levels"].size() == 5);
  CHECK(j["levels"][0]["energies"][1]["E"].is_null());
  CHECK(j["degeneracy"].size() == 8);
  const std::string text = to_text(r);
  CHECK(text.find("oracle") != std::string::npos);
  CHECK(text == to_text(r));
}
