#include "swkb/series.hpp"

#include <stdexcept>

namespace swkb {

namespace {

const GaussianRational kI = GaussianRational::i();

Expression c(long n, long d = 1) { return Expression::constant(GaussianRational(Rational(n, d))); }

// (phi + i u^{1/2})^{-1}
Expression inverse_root() {
  return (Expression::phi(0) - kI * Expression::u_power(1)).shift_e(-1);
}

}  // namespace

const char* to_string(Partner p) { return p == Partner::minus ? "minus" : "plus"; }

HbarSeries generate_series(int order, Partner sign) {
  if (order < 0) throw std::invalid_argument("series order must be non-negative");
  HbarSeries s;
  s.sign = sign;
  s.coeffs.push_back(Expression::u_power(1));
  const Expression half_inv_root = c(1, 2) * Expression::u_power(-1);
  const GaussianRational phi_sign = sign == Partner::minus ? kI : -kI;
  for (int n = 1; n <= order; ++n) {
    Expression rhs = -differentiate(s.coeffs[n - 1]);
    for (int k = 1; k <= n - 1; ++k) rhs -= s.coeffs[k] * s.coeffs[n - k];
    if (n == 1) rhs += phi_sign * Expression::phi(1);
    s.coeffs.push_back(half_inv_root * rhs);
  }
  return s;
}

Expression riccati_residual(const HbarSeries& s, int n) {
  Expression r;
  for (int k = 0; k <= n; ++k) r += s[k] * s[n - k];
  if (n == 0) {
    r += Expression::phi(0) * Expression::phi(0) - Expression::e_power(1);
  } else {
    r += differentiate(s[n - 1]);
  }
  if (n == 1) r -= (s.sign == Partner::minus ? kI : -kI) * Expression::phi(1);
  return r;
}

SplitSeries split_series(const HbarSeries& s) {
  SplitSeries out;
  for (const auto& coeff : s.coeffs) {
    auto [re, im] = split_real_imag(coeff);
    out.p.push_back(std::move(re));
    out.q.push_back(std::move(im));
  }
  return out;
}

LSequence l_sequence(int order, const HbarSeries& minus) {
  if (order < 1) throw std::invalid_argument("L sequence needs order >= 1");
  if (minus.order() < order) throw std::invalid_argument("series shorter than requested L order");
  if (minus.sign != Partner::minus) throw std::invalid_argument("L sequence is built from the minus series");
  // ln D with D = a + i sum_{n>=1} t^n S_n', a = phi + i u^{1/2}:
  // n l_n a = n D_n - sum_{k=1}^{n-1} k l_k D_{n-k}.
  const Expression inv = kI * inverse_root();
  LSequence out;
  out.l.emplace_back();
  for (int n = 1; n <= order; ++n) {
    Expression inner;
    for (int k = 1; k <= n - 1; ++k) inner += GaussianRational(k) * out.l[k] * minus[n - k];
    Expression bracket = minus[n] - GaussianRational(Rational(1, n)) * inner;
    out.l.push_back(inv * bracket);
  }
  return out;
}

HbarSeries partner_via_log_identity(const HbarSeries& minus, int order) {
  if (order < 0) throw std::invalid_argument("series order must be non-negative");
  if (minus.order() < order) throw std::invalid_argument("series shorter than requested order");
  // D = phi + i S', N = D'; R = N / D by series division.
  std::vector<Expression> D;
  D.push_back(Expression::phi(0) + kI * minus[0]);
  for (int n = 1; n <= order; ++n) D.push_back(kI * minus[n]);
  const Expression inv = inverse_root();
  std::vector<Expression> R;
  for (int m = 0; m + 1 <= order; ++m) {
    Expression num = differentiate(D[m]);
    for (int k = 1; k <= m; ++k) num -= D[k] * R[m - k];
    R.push_back(inv * num);
  }
  HbarSeries out;
  out.sign = Partner::plus;
  out.coeffs.push_back(minus[0]);
  // -i hbar = t, so S^{(+)}_n' = S_n' + R_{n-1}.
  for (int n = 1; n <= order; ++n) out.coeffs.push_back(minus[n] + R[n - 1]);
  return out;
}

HbarSeries pbar_series(int order) {
  if (order < 0) throw std::invalid_argument("series order must be non-negative");
  // i hbar = -t: P = s - (t/2) P'/P.
  HbarSeries out;
  out.coeffs.push_back(Expression::u_power(1));
  const Expression inv_s = Expression::u_power(-1);
  std::vector<Expression> G;
  for (int n = 1; n <= order; ++n) {
    const int m = n - 1;
    Expression num = differentiate(out.coeffs[m]);
    for (int k = 1; k <= m; ++k) num -= out.coeffs[k] * G[m - k];
    G.push_back(inv_s * num);
    out.coeffs.push_back(c(-1, 2) * G[m]);
  }
  return out;
}

}  // namespace swkb
