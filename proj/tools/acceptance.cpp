// Acceptance run: one PASS/FAIL line per criterion, exit 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swkb/antiderivative.hpp"
#include "swkb/format.hpp"
#include "swkb/identities.hpp"
#include "swkb/oracle.hpp"
#include "swkb/reduction.hpp"
#include "swkb/spectrum.hpp"
#include "swkb/wkb.hpp"

using namespace swkb;

namespace {

constexpr double kOscillatorTol = 1e-8;
constexpr double kOracleGroundTol = 1e-6;
constexpr double kNoWorseSlack = 1e-8;
constexpr double kGapTol = 1e-7;
constexpr double kQuadratureTol = 1e-9;
constexpr double kImagTol = 1e-9;
constexpr int kIdentityOrder = 8;
constexpr int kGeneratingOrder = 6;

const GaussianRational kI = GaussianRational::i();
const Expression phi0 = Expression::phi(0);
const Expression d1 = Expression::phi(1);
const Expression d2 = Expression::phi(2);
const Expression d3 = Expression::phi(3);
const Expression E = Expression::e_power(1);

Expression u(int h) { return Expression::u_power(h); }
Expression c(long n, long d = 1) { return Expression::constant(GaussianRational(Rational(n, d))); }

const PolynomialSuperpotential oscillator{{0.0, 1.0}, 1.0, "x"};
const PolynomialSuperpotential cubic{{0.0, 0.0, 0.0, 1.0 / 3.0}, 1.0, "x^3/3"};

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::optional<double> limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome order2_coefficient() {
  const QuantizationCondition qc = quantization_integrands(2);
  const ReducedCorrection& r = qc.corrections.at(1);
  const Expression expected = c(1, 8) * E * d1 * d1 * u(-5);
  const bool exact = r.integrand == expected && r.sign_factor == Rational(-1);
  const bool equiv = equivalent_mod_derivative(r.integrand, expected).has_value();
  return {exact && equiv, "-hbar^2 * " + to_text(r.integrand)};
}

Outcome order4_bracket() {
  const QuantizationCondition qc = quantization_integrands(4);
  const ReducedCorrection& r = qc.corrections.at(2);
  const Expression bracket = c(1, 128) * E *
                             (c(49) * E * power(d1, 4) * u(-11) - c(140, 3) * power(d1, 4) * u(-9) -
                              c(4) * d1 * d3 * u(-7));
  const Expression signed_form = Expression::constant(GaussianRational(r.sign_factor)) * r.integrand;
  const bool exact = signed_form == -bracket;
  const bool equiv = equivalent_mod_derivative(signed_form, -bracket).has_value();
  return {exact && equiv, std::string("sign ") + r.sign_factor.str() + ", canonical form " +
                              (exact ? "equal" : "differs")};
}

Outcome q3_closed_form() {
  const HbarSeries s = generate_series(3);
  const SplitSeries split = split_series(s);
  const LSequence l = l_sequence(2, s);
  const Expression bracket = c(1, 16) * (c(5) * phi0 * d1 * d1 * u(-5) + c(2) * d2 * u(-3));
  const bool a = split.q[3] == differentiate(bracket);
  const bool b = kI * GaussianRational(Rational(1, 2)) * differentiate(l[2]) == split.q[3];
  return {a && b, std::string("q3 = d/dx bracket: ") + (a ? "yes" : "no") + ", (i/2)L2' = q3: " + (b ? "yes" : "no")};
}

Outcome total_derivatives() {
  const SplitSeries split = split_series(generate_series(9));
  std::string missing;
  for (int m = 3; m <= 9; m += 2) {
    const auto y = antiderivative(split.q[m]);
    if (!y || differentiate(*y) != split.q[m]) missing += " q" + std::to_string(m);
  }
  const HbarSeries pbar = pbar_series(kIdentityOrder);
  const auto log = antiderivative_with_log(pbar[1]);
  if (!log || differentiate(log->ring_part) + Expression::constant(log->log_u) * log_u_derivative() != pbar[1]) missing += " pbar1";
  for (int n = 2; n <= kIdentityOrder; ++n) {
    const auto y = antiderivative(pbar[n]);
    if (!y || differentiate(*y) != pbar[n]) missing += " pbar" + std::to_string(n);
  }
  if (!missing.empty()) return {false, "no certificate for" + missing};
  return {true, "q3 q5 q7 q9, pbar2..pbar8 in the ring; pbar1 = " + log->log_u.str() + " (ln u)'"};
}

Outcome partner_identity() {
  const HbarSeries minus = generate_series(kIdentityOrder, Partner::minus);
  const HbarSeries plus = generate_series(kIdentityOrder, Partner::plus);
  const HbarSeries via_log = partner_via_log_identity(minus, kIdentityOrder);
  for (int n = 0; n <= kIdentityOrder; ++n)
    if (via_log[n] != plus[n]) return {false, "mismatch at order " + std::to_string(n)};
  return {true, "orders 0.." + std::to_string(kIdentityOrder)};
}

Outcome e_factorization() {
  const SplitSeries split = split_series(generate_series(kIdentityOrder));
  const Expression F = Expression::F();
  for (int n = 1; n <= kIdentityOrder; ++n) {
    const Expression a = split.p[n] - F * split.q[n];
    const Expression b = split.q[n] + F * split.p[n];
    if ((!a.is_zero() && min_e_degree(a) < 1) || (!b.is_zero() && min_e_degree(b) < 1))
      return {false, "order " + std::to_string(n)};
  }
  const QuantizationCondition qc = quantization_integrands(kIdentityOrder);
  int lowest = 1 << 20;
  for (std::size_t k = 1; k < qc.corrections.size(); ++k) {
    const Expression& I = qc.corrections[k].integrand;
    if (I.is_zero()) continue;
    lowest = std::min(lowest, min_e_degree(I));
  }
  return {lowest >= 1, "reduced integrands to hbar^8 have min E degree " + std::to_string(lowest)};
}

Outcome generating_and_imag() {
  const CheckReport gs = generating_system_check(kGeneratingOrder);
  const CheckReport im = imag_relation_check(kGeneratingOrder);
  std::string detail = "orders 1.." + std::to_string(kGeneratingOrder);
  if (!gs.pass()) detail = "generating system fails at order " + std::to_string(gs.first_failure());
  if (!im.pass()) detail = "imaginary part fails at order " + std::to_string(im.first_failure());
  return {gs.pass() && im.pass(), detail};
}

Outcome wkb_substitution() {
  const WkbSubstitutionReport r = wkb_series_and_substitute(kWkbSubstitutionBound);
  bool conditions = r.condition_orders == std::vector<int>{2, 4};
  for (const auto& cert : r.condition_certificates) conditions = conditions && cert.has_value();
  const bool ok = r.series_match && r.log_terms_ok && conditions && r.pass();
  return {ok, std::to_string(r.log_term_certificates.size()) + " log-expansion terms certified, conditions at hbar^2 and hbar^4 " +
                  (conditions ? "agree" : "disagree")};
}

Outcome oscillator_levels() {
  double worst_level = 0.0, worst_shift = 0.0;
  for (int n = 0; n <= 5; ++n) {
    const double e0 = solve_level({oscillator, 0, n, Partner::minus}).E;
    worst_level = std::max(worst_level, std::abs(e0 - 2.0 * n));
    for (int order : {2, 4}) worst_shift = std::max(worst_shift, std::abs(solve_level({oscillator, order, n, Partner::minus}).E - e0));
  }
  return {worst_level < kOscillatorTol && worst_shift < kOscillatorTol,
          "max |E0 - 2n| " + fmt("%.2e", worst_level) + ", max correction shift " + fmt("%.2e", worst_shift)};
}

Outcome anharmonic_benchmark() {
  const OracleResult oracle = oracle_spectrum(cubic, Partner::minus, 4);
  const bool ground = std::abs(oracle.values[0]) < kOracleGroundTol;
  SpectrumReport r = degeneracy_report(cubic, {0, 2, 4}, 3);
  attach_oracle(r, oracle.values);
  bool no_worse = true;
  std::string errors;
  for (int n = 1; n <= 3; ++n) {
    const auto& lv = r.levels[n];
    if (!lv.abs_error[0] || !lv.abs_error[2]) {
      no_worse = false;
      continue;
    }
    no_worse = no_worse && *lv.abs_error[2] <= *lv.abs_error[0] + kNoWorseSlack;
    errors += " n=" + std::to_string(n) + ":" + fmt("%.1e", *lv.abs_error[0]) + "->" + fmt("%.1e", *lv.abs_error[2]);
  }
  bool gaps = true;
  double max_gap = 0.0;
  for (const auto& d : r.degeneracy) {
    if (!d.gap) {
      gaps = false;
      continue;
    }
    max_gap = std::max(max_gap, *d.gap);
    gaps = gaps && *d.gap < kGapTol;
  }
  return {ground && no_worse && gaps, "oracle E0 " + fmt("%.1e", oracle.values[0]) + ";" + errors +
                                          "; max gap " + fmt("%.1e", max_gap)};
}

Outcome quadrature_consistency() {
  const QuantizationCondition qc = quantization_integrands(4);
  const SplitSeries split = split_series(generate_series(4));
  std::vector<Expression> integrands{split.p[2]};
  for (const auto& r : qc.corrections) integrands.push_back(r.integrand);
  QuadratureOptions opts;
  opts.require_real = false;
  double worst_diff = 0.0, worst_imag = 0.0;
  for (double e : {0.5, 1.0, 2.0}) {
    const auto v = contour_integrate(integrands, cubic, e, opts);
    // hbar^2 coefficient: t^2 p_2 with t = -i hbar against the signed reduced term.
    const std::complex<double> unreduced = -v[0].value;
    const std::complex<double> reduced = qc.corrections[1].sign_factor.to_double() * v[2].value;
    worst_diff = std::max(worst_diff, std::abs(unreduced - reduced));
    for (const auto& x : v) worst_imag = std::max(worst_imag, std::abs(x.value.imag()));
  }
  return {worst_diff < kQuadratureTol && worst_imag < kImagTol,
          "max difference " + fmt("%.1e", worst_diff) + ", max |Im| " + fmt("%.1e", worst_imag)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "hbar^2 coefficient", 1.0, order2_coefficient},
      {2, "hbar^4 bracket", 30.0, order4_bracket},
      {3, "q3 closed form", std::nullopt, q3_closed_form},
      {4, "total-derivative certificates", std::nullopt, total_derivatives},
      {5, "partner identity n <= 8", std::nullopt, partner_identity},
      {6, "E factorization n <= 8", std::nullopt, e_factorization},
      {7, "generating system and imaginary part n <= 6", std::nullopt, generating_and_imag},
      {8, "WKB substitution to hbar^4", std::nullopt, wkb_substitution},
      {9, "oscillator spectrum", 10.0, oscillator_levels},
      {10, "x^3/3 benchmark", 120.0, anharmonic_benchmark},
      {11, "quadrature self-consistency", std::nullopt, quadrature_consistency},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass;
    std::string timing = fmt("%.2f s", secs);
    if (c.limit_s) {
      timing += " / limit " + fmt("%g s", *c.limit_s);
      if (secs >= *c.limit_s) {
        pass = false;
        o.detail += "; over time limit";
      }
    }
    if (!pass) ++failures;
    std::printf("%s %2d  %-46s %s [%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                timing.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
