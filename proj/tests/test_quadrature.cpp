#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "swkb/errors.hpp"
#include "swkb/quadrature.hpp"
#include "swkb/reduction.hpp"

using namespace swkb;

namespace {

const PolynomialSuperpotential oscillator{{0.0, 1.0}, 1.0, "oscillator"};
const PolynomialSuperpotential cubic{{0.0, 0.0, 0.0, 1.0 / 3.0}, 1.0, "cubic"};

Expression u(int h) { return Expression::u_power(h); }

// 2 * integral of sqrt(E - x^6/9) over the classical region (mpmath, 30 digits).
struct RealAxisValue {
  double E;
  double action;
};
constexpr RealAxisValue kCubicActions[] = {
    {0.5, 3.30986332880373177721},
    {1.0, 5.25408053001401033232},
    {2.0, 8.34033296046987505571},
};

}  // namespace

TEST_CASE("superpotential") {
  CHECK(cubic.degree() == 3);
  const auto d = cubic.derivatives({2.0, 0.0}, 4);
  CHECK(d[0].real() == doctest::Approx(8.0 / 3.0));
  CHECK(d[1].real() == doctest::Approx(4.0));
  CHECK(d[2].real() == doctest::Approx(4.0));
  CHECK(d[3].real() == doctest::Approx(2.0));
  CHECK(d[4].real() == 0.0);
  const auto p = PolynomialSuperpotential::from_json(nlohmann::json::parse(R"({"coefficients":[0,1],"hbar":0.5})"));
  CHECK(p.hbar == 0.5);
  CHECK_THROWS_AS(PolynomialSuperpotential::from_json(nlohmann::json::parse(R"({"coefficients":[1]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(PolynomialSuperpotential::from_json(nlohmann::json::parse(R"({"coefficients":[0,1],"hbar":0})")),
                  std::invalid_argument);
}

TEST_CASE("turning points") {
  const TurningPoints osc = turning_points(oscillator, 4.0);
  CHECK(osc.left == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(osc.right == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(osc.excluded.empty());

  const TurningPoints tp = turning_points(cubic, 1.0);
  CHECK(tp.right == doctest::Approx(1.44224957030740838).epsilon(1e-13));
  CHECK(tp.left == doctest::Approx(-1.44224957030740838).epsilon(1e-13));
  REQUIRE(tp.excluded.size() == 4);
  for (const auto& z : tp.excluded) {
    CHECK(std::abs(z.imag()) > 1.0);
    CHECK(std::abs(std::pow(z, 6) / 9.0 - 1.0) < 1e-12);
  }

  CHECK_THROWS_AS(turning_points(oscillator, -1.0), NoClassicalRegion);
  CHECK_THROWS_AS(turning_points(oscillator, 0.0), NoClassicalRegion);
  // phi = x^2 - 1 at E = 1/4 has two wells.
  const PolynomialSuperpotential double_well{{-1.0, 0.0, 1.0}, 1.0, ""};
  CHECK_THROWS_AS(turning_points(double_well, 0.25), AmbiguousRegion);
}

TEST_CASE("contour construction") {
  const TurningPoints tp = turning_points(cubic, 1.0);
  const Contour c = make_contour(tp);
  CHECK(c.center == doctest::Approx(0.0));
  CHECK(c.b == doctest::Approx(0.5 * c.a));
  CHECK(c.encloses(tp.left));
  CHECK(c.encloses(tp.right));
  for (const auto& z : tp.excluded) {
    CHECK_FALSE(c.encloses(z));
    CHECK(c.distance(z) >= 0.2 * c.a);
  }
  CHECK_NOTHROW(validate_contour(c, tp));
  Contour tight = c;
  tight.a = 1.2 * (tp.right - tp.left);
  tight.b = 1.5;
  CHECK_THROWS_AS(validate_contour(tight, tp), AmbiguousRegion);
}

TEST_CASE("branch tracking") {
  const TurningPoints tp = turning_points(cubic, 1.0);
  const Contour c = make_contour(tp);
  BranchState state;
  std::complex<double> first;
  std::complex<double> prev;
  constexpr int kSteps = 512;
  for (int j = 0; j <= kSteps; ++j) {
    const auto z = c.point(2.0 * std::numbers::pi * j / kSteps);
    const auto phi = cubic.derivatives(z, 0)[0];
    const auto uu = 1.0 - phi * phi;
    const auto s = state.next(uu);
    CHECK(std::abs(s * s - uu) <= 1e-10 * std::abs(uu));
    if (j == 0) {
      CHECK(s.imag() > 0.0);
      first = s;
    } else {
      CHECK(std::abs(s - prev) < 0.1 * std::abs(s));
    }
    prev = s;
  }
  CHECK(std::abs(prev - first) < 1e-12);
}

TEST_CASE("leading action") {
  const ContourIntegral osc = contour_integrate(u(1), oscillator, 4.0);
  CHECK(osc.value.real() == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-11));
  CHECK(std::abs(osc.value.imag()) < 1e-9);
  for (const auto& [E, action] : kCubicActions) {
    CAPTURE(E);
    const ContourIntegral r = contour_integrate(u(1), cubic, E);
    CHECK(std::abs(r.value.real() - action) < 1e-10);
    CHECK(std::abs(r.value.imag()) < 1e-9);
  }
}

TEST_CASE("oscillator corrections vanish") {
  const Expression d1 = Expression::phi(1);
  for (double E : {0.5, 4.0, 9.0}) {
    CAPTURE(E);
    CHECK(std::abs(contour_integrate(d1 * d1 * u(-5), oscillator, E).value) < 1e-10);
  }
  const QuantizationCondition qc = quantization_integrands(6);
  for (std::size_t k = 1; k < qc.corrections.size(); ++k)
    CHECK(std::abs(contour_integrate(qc.corrections[k].integrand, oscillator, 4.0).value) < 1e-10);
}

TEST_CASE("total derivatives integrate to zero") {
  const QuantizationCondition qc = quantization_integrands(6);
  const SplitSeries split = split_series(generate_series(6));
  CHECK(std::abs(contour_integrate(split.p[2] - qc.corrections[1].integrand, cubic, 1.0).value) < 1e-10);
  for (const auto& d : qc.dropped) {
    if (d.pi_constant || d.certificate.is_zero()) continue;
    CAPTURE(d.order);
    CHECK(std::abs(contour_integrate(differentiate(d.certificate), cubic, 1.0).value) < 1e-10);
  }
  // p_1 = -(1/4) (ln u)' and u has two zeros inside the contour.
  QuadratureOptions complex_ok;
  complex_ok.require_real = false;
  const auto log_term = contour_integrate(split.p[1], cubic, 1.0, complex_ok).value;
  CHECK(std::abs(log_term - std::complex<double>(0.0, -std::numbers::pi)) < 1e-10);
  CHECK_THROWS_AS(contour_integrate(split.p[1], cubic, 1.0), BranchTrackingError);
  // q_1 gives pi.
  CHECK(contour_integrate(split.q[1], cubic, 1.0).value.real() == doctest::Approx(std::numbers::pi).epsilon(1e-11));
}

TEST_CASE("reduced and unreduced integrands agree") {
  const QuantizationCondition qc = quantization_integrands(4);
  const SplitSeries split = split_series(generate_series(4));
  for (double E : {0.5, 1.0, 2.0}) {
    CAPTURE(E);
    const auto r = contour_integrate({split.p[2], qc.corrections[1].integrand, split.p[4], qc.corrections[2].integrand},
                                     cubic, E);
    CHECK(std::abs(r[0].value - r[1].value) < 1e-9);
    CHECK(std::abs(r[2].value - r[3].value) < 1e-9);
    for (const auto& v : r) CHECK(std::abs(v.value.imag()) < 1e-9);
  }
}

TEST_CASE("contour independence") {
  const QuantizationCondition qc = quantization_integrands(4);
  std::vector<Expression> integrands;
  for (const auto& c : qc.corrections) integrands.push_back(c.integrand);

  const TurningPoints osc_tp = turning_points(oscillator, 4.0);
  Contour big = make_contour(osc_tp);
  const auto base = contour_integrate(integrands, oscillator, 4.0, big);
  big.a *= 2.0;
  big.b *= 2.0;
  const auto doubled = contour_integrate(integrands, oscillator, 4.0, big);
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(std::abs(base[i].value - doubled[i].value) < 1e-10);

  const TurningPoints tp = turning_points(cubic, 1.0);
  const Contour c = make_contour(tp);
  Contour narrow = c;
  narrow.b *= 0.5;
  REQUIRE_NOTHROW(validate_contour(narrow, tp));
  const auto r1 = contour_integrate(integrands, cubic, 1.0, c);
  const auto r2 = contour_integrate(integrands, cubic, 1.0, narrow);
  for (std::size_t i = 0; i < r1.size(); ++i) CHECK(std::abs(r1[i].value - r2[i].value) < 1e-9);
}

TEST_CASE("sample limit") {
  QuadratureOptions opts;
  opts.max_samples = opts.min_samples;
  CHECK_THROWS_AS(contour_integrate(u(1), cubic, 1.0, opts), NonConvergence);
}
