#include "swkb/wkb.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "swkb/antiderivative.hpp"
#include "swkb/errors.hpp"

namespace swkb {

namespace {

const GaussianRational kI = GaussianRational::i();

using Series = std::vector<Expression>;

Series series_mul(const Series& a, const Series& b, int order) {
  Series out(order + 1);
  for (int i = 0; i < static_cast<int>(a.size()) && i <= order; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < static_cast<int>(b.size()) && i + j <= order; ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

// (-i)^n
GaussianRational minus_i_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return GaussianRational(1);
    case 1: return -kI;
    case 2: return GaussianRational(-1);
    default: return kI;
  }
}

}  // namespace

HbarSeries generate_wkb_series(int order) {
  if (order < 0) throw std::invalid_argument("series order must be non-negative");
  const Ring pr = Ring::potential;
  HbarSeries s;
  s.coeffs.push_back(Expression::u_power(1, pr));
  const Expression half_inv_root =
      Expression::constant(GaussianRational(Rational(1, 2)), pr) * Expression::u_power(-1, pr);
  for (int n = 1; n <= order; ++n) {
    Expression rhs = -differentiate(s.coeffs[n - 1]);
    for (int k = 1; k <= n - 1; ++k) rhs -= s.coeffs[k] * s.coeffs[n - k];
    s.coeffs.push_back(half_inv_root * rhs);
  }
  return s;
}

std::vector<Expression> substitute_potential(const Expression& a, int order) {
  if (a.ring() != Ring::potential) throw std::invalid_argument("substitution expects a potential-ring expression");
  Series total(order + 1);
  const Expression phi_sq = Expression::phi(0) * Expression::phi(0);
  for (const auto& [m, c] : a.terms()) {
    Series acc{Expression::constant(c).shift_e(m.e)};
    for (int k = 1; k < static_cast<int>(m.derivs.size()); ++k) {
      if (m.derivs[k] == 0) continue;
      Expression dk = phi_sq;
      for (int r = 0; r < k; ++r) dk = differentiate(dk);
      const Series factor{dk, -kI * Expression::phi(k + 1)};
      for (int r = 0; r < m.derivs[k]; ++r) acc = series_mul(acc, factor, order);
    }
    if (m.h != 0) {
      // w^{h/2} = u^{h/2} (1 + i t phi'/u)^{h/2}
      Series factor;
      const Rational half(m.h, 2);
      Expression dphi_power = Expression::constant(GaussianRational(1));
      GaussianRational ij(1);
      for (int j = 0; j <= order; ++j) {
        factor.push_back(GaussianRational(binomial(half, j)) * ij * dphi_power * Expression::u_power(m.h - 2 * j));
        dphi_power = dphi_power * Expression::phi(1);
        ij *= kI;
      }
      acc = series_mul(acc, factor, order);
    }
    for (int n = 0; n <= order && n < static_cast<int>(acc.size()); ++n) total[n] += acc[n];
  }
  return total;
}

bool WkbSubstitutionReport::pass() const {
  auto certified = [](const auto& v) {
    return std::all_of(v.begin(), v.end(), [](const auto& c) { return c.has_value(); });
  };
  return series_match && log_terms_ok && certified(odd_wkb_certificates) &&
         certified(condition_certificates);
}

WkbSubstitutionReport wkb_series_and_substitute(int order, int bound) {
  if (order < 0) throw std::invalid_argument("series order must be non-negative");
  if (order > bound)
    throw SubstitutionOverflow("WKB substitution order " + std::to_string(order) + " exceeds bound " +
                               std::to_string(bound));
  WkbSubstitutionReport r;
  r.order = order;
  r.wkb = generate_wkb_series(order);
  const HbarSeries swkb = generate_series(order);
  const SplitSeries split = split_series(swkb);

  std::vector<Series> images;
  for (int n = 0; n <= order; ++n) images.push_back(substitute_potential(r.wkb[n], order - n));

  r.substituted.assign(order + 1, Expression());
  for (int n = 0; n <= order; ++n)
    for (int j = 0; n + j <= order; ++j) r.substituted[n + j] += images[n][j];
  r.series_match = true;
  for (int m = 0; m <= order; ++m) r.series_match = r.series_match && r.substituted[m] == swkb[m];

  // V'/(E - V) = 2 phi phi'/u + sum_{n>=1} ((-hbar)^n/n) d/dx (phi'/u)^n
  const Ring pr = Ring::potential;
  const Series log_series =
      substitute_potential(Expression::derivative_symbol(1, pr) * Expression::u_power(-2, pr), order);
  r.log_terms_ok = log_series[0] == GaussianRational(2) * Expression::phi(0) * Expression::phi(1) *
                                        Expression::u_power(-2);
  for (int n = 1; n <= order; ++n) {
    const Expression hbar_coef = minus_i_power(n) * log_series[n];
    const Expression ratio_power = power(Expression::phi(1) * Expression::u_power(-2), n);
    const Expression expected =
        GaussianRational(Rational(n % 2 == 0 ? 1 : -1, n)) * differentiate(ratio_power);
    auto cert = antiderivative(hbar_coef);
    r.log_terms_ok = r.log_terms_ok && hbar_coef == expected && cert.has_value();
    r.log_term_certificates.push_back(std::move(cert));
  }

  for (int n = 3; n <= order; n += 2) r.odd_wkb_certificates.push_back(antiderivative(r.wkb[n]));

  for (int m = 2; m <= order; m += 2) {
    Expression integrand;
    for (int n = 0; n <= m; n += 2) integrand += images[n][m - n];
    r.condition_orders.push_back(m);
    r.condition_certificates.push_back(antiderivative(integrand - split.p[m]));
    r.condition_integrands.push_back(std::move(integrand));
  }
  return r;
}

}  // namespace swkb
