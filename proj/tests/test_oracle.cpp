#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "swkb/errors.hpp"
#include "swkb/oracle.hpp"

using namespace swkb;

namespace {

const PolynomialSuperpotential cubic{{0.0, 0.0, 0.0, 1.0 / 3.0}, 1.0, "cubic"};

// Sinc-DVR on [-6, 6] with 500 points (numpy eigvalsh), stable to ~1e-11.
constexpr double kMinusReference[] = {0.0, 1.11745111405788, 3.6364383042126143, 6.744011685443872,
                                      10.41692015290295};
constexpr double kPlusReference[] = {1.117451114060452, 3.6364383042087236, 6.744011685444609, 10.41692015289116};

double square(double x) { return x * x; }

}  // namespace

TEST_CASE("harmonic oscillator") {
  const OracleResult r = eigenvalues(square, 1.0, {8.0, 4096}, 5);
  for (int k = 0; k < 5; ++k) {
    CAPTURE(k);
    CHECK(std::abs(r.values[k] - (2 * k + 1)) < 1e-6);
    CHECK(r.boundary_amplitude[k] < 1e-6);
  }
  const OracleResult auto_grid = oracle_spectrum({{0.0, 1.0}, 1.0, ""}, Partner::plus, 4);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(auto_grid.values[k] - 2.0 * (k + 1)) < 1e-6);
}

TEST_CASE("second-order convergence") {
  const GridSpec g1{8.0, 512}, g2{8.0, 1024}, g3{8.0, 2048};
  const auto e1 = grid_eigenvalues(square, 1.0, g1, 3);
  const auto e2 = grid_eigenvalues(square, 1.0, g2, 3);
  const auto e3 = grid_eigenvalues(square, 1.0, g3, 3);
  for (int k = 0; k < 3; ++k) {
    CAPTURE(k);
    const double exact = 2 * k + 1;
    const double ratio1 = (e1[k] - exact) / (e2[k] - exact);
    const double ratio2 = (e2[k] - exact) / (e3[k] - exact);
    CHECK(ratio1 == doctest::Approx(4.0).epsilon(0.05));
    CHECK(ratio2 == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("sextic partners") {
  const OracleResult minus = oracle_spectrum(cubic, Partner::minus, 5);
  const OracleResult plus = oracle_spectrum(cubic, Partner::plus, 4);
  CHECK(std::abs(minus.values[0]) < 1e-6);
  for (int k = 0; k < 5; ++k) CHECK(std::abs(minus.values[k] - kMinusReference[k]) < 1e-8);
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(plus.values[k] - kPlusReference[k]) < 1e-8);
    CHECK(std::abs(plus.values[k] - minus.values[k + 1]) < 1e-6);
  }
  const auto V = partner_potential(cubic, Partner::minus);
  CHECK(V(3.0) >= minus.values.back() + 20.0);
  CHECK(V(-minus.grid.half_width) >= minus.values.back() + 20.0);
}

TEST_CASE("partner potentials") {
  const auto vm = partner_potential(cubic, Partner::minus);
  const auto vp = partner_potential(cubic, Partner::plus);
  CHECK(vm(1.5) == doctest::Approx(std::pow(1.5, 6) / 9.0 - 2.25));
  CHECK(vp(1.5) == doctest::Approx(std::pow(1.5, 6) / 9.0 + 2.25));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(eigenvalues(square, 1.0, {1.5, 1024}, 3), DomainTooSmall);
  CHECK_THROWS_AS(grid_eigenvalues(square, 1.0, {8.0, 64}, 17), std::invalid_argument);
  CHECK_THROWS_AS(grid_eigenvalues(square, 1.0, {8.0, 32}, 1), std::invalid_argument);
  const nlohmann::json j = to_json(eigenvalues(square, 1.0, {8.0, 1024}, 2));
  CHECK(j["values"].size() == 2);
  CHECK(j["points"] == 1024);
}
