#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swkb/antiderivative.hpp"
#include "swkb/errors.hpp"
#include "swkb/reduction.hpp"

using namespace swkb;

namespace {

const Expression phi = Expression::phi(0);
const Expression d1 = Expression::phi(1);
const Expression d3 = Expression::phi(3);
const Expression E = Expression::e_power(1);

Expression u(int h) { return Expression::u_power(h); }
Expression c(long n, long d = 1) { return Expression::constant(GaussianRational(Rational(n, d))); }

// Known closed forms of the hbar^2 and hbar^4 integrands (without sign).
Expression known_order2() { return c(1, 8) * E * d1 * d1 * u(-5); }
Expression known_order4_bracket() {
  return c(1, 128) * E *
         (c(49) * E * power(d1, 4) * u(-11) - c(140, 3) * power(d1, 4) * u(-9) - c(4) * d1 * d3 * u(-7));
}

constexpr int kMaxOrder = 8;

const HbarSeries& minus() {
  static const HbarSeries s = generate_series(kMaxOrder);
  return s;
}
const SplitSeries& split() {
  static const SplitSeries s = split_series(minus());
  return s;
}
const LSequence& lseq() {
  static const LSequence l = l_sequence(kMaxOrder - 1, minus());
  return l;
}

}  // namespace

TEST_CASE("decompose") {
  const auto [a1, b1] = decompose(1, split());
  CHECK(a1.is_zero());
  CHECK(b1 == c(1, 2) * d1 * u(-3));
  const Expression F = Expression::F();
  for (int n = 1; n <= kMaxOrder; ++n) {
    CAPTURE(n);
    const auto [a, b] = decompose(n, split());
    CHECK(split().p[n] == F * split().q[n] + a.shift_e(1));
    CHECK(split().q[n] == -F * split().p[n] + b.shift_e(1));
  }
  SplitSeries broken = split();
  broken.p[2] += c(1) * d1 * d1 * u(-5);
  CHECK_THROWS_AS(decompose(2, broken), StructuralViolation);
  CHECK_THROWS_AS(decompose(0, split()), std::invalid_argument);
}

TEST_CASE("reduce_even_order reproduces the known integrands") {
  const ReducedCorrection r2 = reduce_even_order(2, split(), lseq());
  CHECK(r2.sign_factor == Rational(-1));
  CHECK(r2.integrand == known_order2());
  CHECK(r2.e_degree == 1);

  const ReducedCorrection r4 = reduce_even_order(4, split(), lseq());
  CHECK(r4.sign_factor == Rational(1));
  // sign_factor * integrand carries the overall minus of the hbar^4 term.
  CHECK(equivalent_mod_derivative(r4.integrand, -known_order4_bracket()).has_value());
  CHECK_FALSE(equivalent_mod_derivative(r4.integrand, known_order4_bracket()).has_value());

  CHECK_THROWS_AS(reduce_even_order(3, split(), lseq()), std::invalid_argument);
  CHECK_THROWS_AS(reduce_even_order(0, split(), lseq()), std::invalid_argument);
}

TEST_CASE("certificates and E factor at every even order") {
  for (int k = 2; k <= kMaxOrder; k += 2) {
    CAPTURE(k);
    const ReducedCorrection r = reduce_even_order(k, split(), lseq());
    CHECK(split().p[k] - r.integrand == differentiate(r.certificate));
    CHECK(min_e_degree(r.integrand) >= 1);
    CHECK(r.e_degree == min_e_degree(r.integrand));
    CHECK(r.sign_factor == Rational((k / 2) % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("pbar route agrees with the FQ route") {
  const HbarSeries pbar = pbar_series(kMaxOrder);
  const ReducedCorrection zero = reduce_via_pbar(0, split(), pbar);
  CHECK(zero.integrand.is_zero());
  for (int k = 2; k <= kMaxOrder; k += 2) {
    CAPTURE(k);
    const ReducedCorrection via_pbar = reduce_via_pbar(k, split(), pbar);
    const ReducedCorrection via_fq = reduce_even_order(k, split(), lseq());
    CHECK(split().p[k] - via_pbar.integrand == differentiate(via_pbar.certificate));
    CHECK(equivalent_mod_derivative(via_pbar.integrand, via_fq.integrand).has_value());
  }
  // p_2 - pbar_2 is the hbar^2 integrand up to a derivative.
  CHECK(equivalent_mod_derivative(split().p[2] - pbar[2], known_order2()).has_value());
}

TEST_CASE("equivalent_mod_derivative") {
  const Expression x = known_order2();
  const auto same = equivalent_mod_derivative(x, x);
  REQUIRE(same.has_value());
  CHECK(same->is_zero());
  CHECK_FALSE(equivalent_mod_derivative(u(1), Expression()).has_value());
  const Expression y = x + differentiate(phi * d1 * u(-3));
  const auto cert = equivalent_mod_derivative(y, x);
  REQUIRE(cert.has_value());
  CHECK(differentiate(*cert) == y - x);
}

TEST_CASE("quantization integrands") {
  const QuantizationCondition q0 = quantization_integrands(0);
  CHECK(q0.corrections.size() == 1);
  CHECK(q0.corrections[0].integrand == u(1));
  CHECK(q0.pi_coefficient == 1);

  const QuantizationCondition q2 = quantization_integrands(2);
  REQUIRE(q2.corrections.size() == 2);
  CHECK(q2.corrections[1].integrand == known_order2());
  CHECK(q2.corrections[1].sign_factor == Rational(-1));

  const QuantizationCondition q4 = quantization_integrands(4);
  REQUIRE(q4.corrections.size() == 3);
  CHECK(equivalent_mod_derivative(q4.corrections[2].integrand, -known_order4_bracket()).has_value());
  CHECK(q4.reconstructs(generate_series(4)));

  const QuantizationCondition q8 = quantization_integrands(8);
  CHECK(q8.reconstructs(generate_series(8)));
  int pi_terms = 0;
  for (const auto& d : q8.dropped) pi_terms += d.pi_constant ? 1 : 0;
  CHECK(pi_terms == 1);

  const QuantizationCondition plus = quantization_integrands(4, Partner::plus);
  CHECK(plus.pi_coefficient == -1);
  CHECK(plus.reconstructs(generate_series(4, Partner::plus)));
  for (int k = 1; k <= 2; ++k)
    CHECK(equivalent_mod_derivative(plus.corrections[k].integrand, q4.corrections[k].integrand).has_value());

  CHECK_THROWS_AS(quantization_integrands(3), std::invalid_argument);
  // A corrupted kept integrand breaks the reconstruction.
  QuantizationCondition tampered = q4;
  tampered.corrections[1].integrand += c(1) * E * d1 * d1 * u(-5);
  CHECK_FALSE(tampered.reconstructs(generate_series(4)));
}
