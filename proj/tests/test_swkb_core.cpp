#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swkb/antiderivative.hpp"
#include "swkb/errors.hpp"
#include "swkb/identities.hpp"
#include "swkb/series.hpp"
#include "swkb/wkb.hpp"

using namespace swkb;

namespace {

const Expression phi = Expression::phi(0);
const Expression dphi = Expression::phi(1);
const Expression ddphi = Expression::phi(2);
const GaussianRational I = GaussianRational::i();

Expression u(int h) { return Expression::u_power(h); }
Expression c(long n, long d = 1) { return Expression::constant(GaussianRational(Rational(n, d))); }

constexpr int kSeriesOrder = 10;

const HbarSeries& minus_series() {
  static const HbarSeries s = generate_series(kSeriesOrder, Partner::minus);
  return s;
}

const HbarSeries& plus_series() {
  static const HbarSeries s = generate_series(kSeriesOrder, Partner::plus);
  return s;
}

const SplitSeries& split() {
  static const SplitSeries s = split_series(minus_series());
  return s;
}

}  // namespace

TEST_CASE("leading coefficients") {
  CHECK(generate_series(0).coeffs.size() == 1);
  CHECK(generate_series(0)[0] == u(1));
  const Expression half_p = c(1, 2) * phi * dphi * u(-2);
  const Expression half_q = c(1, 2) * dphi * u(-1);
  CHECK(minus_series()[1] == half_p + I * half_q);
  CHECK(plus_series()[1] == half_p - I * half_q);
  CHECK(split().p[0] == u(1));
  CHECK(split().q[0].is_zero());
  CHECK(split().p[1] == half_p);
  CHECK(split().q[1] == half_q);
}

TEST_CASE("riccati residual vanishes") {
  for (int n = 0; n <= kSeriesOrder; ++n) {
    CAPTURE(n);
    CHECK(riccati_residual(minus_series(), n).is_zero());
    CHECK(riccati_residual(plus_series(), n).is_zero());
  }
  HbarSeries broken = minus_series();
  broken.coeffs[2] += c(1) * dphi;
  CHECK_FALSE(riccati_residual(broken, 2).is_zero());
}

TEST_CASE("split is real with alternating parity") {
  for (int n = 1; n <= kSeriesOrder; ++n) {
    CAPTURE(n);
    const Expression& p = split().p[n];
    const Expression& q = split().q[n];
    CHECK(is_real(p));
    CHECK(is_real(q));
    const UParity half = n % 2 == 0 ? UParity::all_odd_half : UParity::all_even;
    const UParity whole = n % 2 == 0 ? UParity::all_even : UParity::all_odd_half;
    CHECK(u_parity(p) == half);
    CHECK(u_parity(q) == whole);
  }
}

TEST_CASE("q3 is the derivative of the known bracket") {
  const Expression bracket = c(1, 16) * (c(5) * phi * dphi * dphi * u(-5) + c(2) * ddphi * u(-3));
  CHECK(split().q[3] == differentiate(bracket));
}

TEST_CASE("odd q are total derivatives") {
  for (int m = 3; m <= 9; m += 2) {
    CAPTURE(m);
    const auto cert = antiderivative(split().q[m]);
    REQUIRE(cert.has_value());
    CHECK(differentiate(*cert) == split().q[m]);
  }
  // q1 is the exception: it integrates to pi through a logarithm.
  CHECK_FALSE(antiderivative(split().q[1]).has_value());
}

TEST_CASE("L sequence") {
  const LSequence l = l_sequence(kSeriesOrder - 1, minus_series());
  CHECK(l[1] == I * c(1, 2) * dphi * u(-2));
  for (int n = 1; n <= kSeriesOrder - 1; ++n) {
    CAPTURE(n);
    CHECK(I * c(1, 2) * differentiate(l[n]) == split().q[n + 1]);
    CHECK(min_e_degree(split().q[n + 1]) >= 0);
  }
  CHECK_THROWS_AS(l_sequence(3, plus_series()), std::invalid_argument);
}

TEST_CASE("partner series from the log identity") {
  const HbarSeries via_log = partner_via_log_identity(minus_series(), 8);
  CHECK(via_log.sign == Partner::plus);
  CHECK(via_log[0] == u(1));
  for (int n = 0; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(via_log[n] == plus_series()[n]);
    CHECK(plus_series()[n] == minus_series()[n] - GaussianRational(2) * I * split().q[n]);
  }
}

TEST_CASE("pbar coefficients are total derivatives") {
  const HbarSeries pbar = pbar_series(8);
  CHECK(pbar[0] == u(1));
  const auto log = antiderivative_with_log(pbar[1]);
  REQUIRE(log.has_value());
  CHECK(log->ring_part.is_zero());
  CHECK(log->log_u == GaussianRational(Rational(-1, 4)));
  CHECK_FALSE(antiderivative(pbar[1]).has_value());
  for (int n = 2; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(is_real(pbar[n]));
    const auto cert = antiderivative(pbar[n]);
    REQUIRE(cert.has_value());
    CHECK(differentiate(*cert) == pbar[n]);
  }
}

TEST_CASE("generating system") {
  const CheckReport r = generating_system_check(6);
  CHECK(r.orders.size() == 6);
  CHECK(r.pass());
  CHECK(r.first_failure() == -1);

  SplitSeries mutated = split_series(generate_series(6));
  mutated.q[2] = c(3, 2) * mutated.q[2];
  const CheckReport bad = generating_system_check(mutated, 6);
  CHECK_FALSE(bad.pass());
  CHECK(bad.first_failure() == 2);
  CHECK_FALSE(bad.orders[1].detail.empty());
  CHECK_THROWS_AS(generating_system_check(0), std::invalid_argument);
}

TEST_CASE("imaginary part is a logarithmic derivative") {
  const CheckReport r = imag_relation_check(6);
  CHECK(r.orders.size() == 6);
  CHECK(r.pass());
  // Order 1: -p1 on the I side.
  CHECK(-split().p[1] == c(1, 2) * differentiate(u(1)) * u(-1));

  SplitSeries mutated = split_series(generate_series(6));
  mutated.p[3] = mutated.p[3] + c(1) * dphi * ddphi * u(-5);
  CHECK(imag_relation_check(mutated, 6).first_failure() == 3);
}

TEST_CASE("WKB series after substitution") {
  const WkbSubstitutionReport r = wkb_series_and_substitute(4);
  CHECK(r.series_match);
  CHECK(r.substituted[0] == u(1));
  CHECK(r.log_terms_ok);
  CHECK(r.log_term_certificates.size() == 4);
  CHECK(r.odd_wkb_certificates.size() == 1);
  CHECK(r.condition_orders == std::vector<int>{2, 4});
  CHECK(r.pass());
  // hbar^1 term of the log expansion: -(phi'/u)'.
  const auto& first = r.log_term_certificates[0];
  REQUIRE(first.has_value());
  CHECK(differentiate(*first) == -differentiate(dphi * u(-2)));

  CHECK_THROWS_AS(wkb_series_and_substitute(5), SubstitutionOverflow);
  CHECK(wkb_series_and_substitute(0).series_match);
}
