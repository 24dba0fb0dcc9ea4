#include "swkb/identities.hpp"

#include <algorithm>
#include <stdexcept>

#include "swkb/format.hpp"

namespace swkb {

bool CheckReport::pass() const {
  return std::all_of(orders.begin(), orders.end(), [](const OrderCheck& o) { return o.pass; });
}

int CheckReport::first_failure() const {
  for (const auto& o : orders)
    if (!o.pass) return o.order;
  return -1;
}

namespace {

void require_order(const SplitSeries& split, int order) {
  if (order < 1) throw std::invalid_argument("identity checks need order >= 1");
  if (split.order() < order) throw std::invalid_argument("split series shorter than requested order");
}

}  // namespace

CheckReport generating_system_check(const SplitSeries& split, int order) {
  require_order(split, order);
  const auto& p = split.p;
  const auto& q = split.q;
  const Expression F = Expression::F();
  CheckReport report{"generating-system", {}};
  for (int n = 1; n <= order; ++n) {
    // t P' = -P^2 + Q^2 + p0^2 at order n >= 1: p_{n-1}' + sum p_k p_{n-k} - sum q_k q_{n-k} = 0
    Expression eq_p = differentiate(p[n - 1]);
    // -t Q' = 2PQ - t phi': -q_{n-1}' - 2 sum p_k q_{n-k} + phi' [n = 1] = 0
    Expression eq_q = -differentiate(q[n - 1]);
    for (int k = 0; k <= n; ++k) {
      eq_p += p[k] * p[n - k];
      eq_p -= q[k] * q[n - k];
      eq_q -= GaussianRational(2) * p[k] * q[n - k];
    }
    if (n == 1) eq_q += Expression::phi(1);
    const Expression link = p[n] - F * q[n];
    const bool link_ok = link.is_zero() || min_e_degree(link) >= 1;

    OrderCheck oc{n, eq_p.is_zero() && eq_q.is_zero() && link_ok, {}};
    if (!eq_p.is_zero()) oc.detail += "P equation residual " + to_text(eq_p) + "; ";
    if (!eq_q.is_zero()) oc.detail += "Q equation residual " + to_text(eq_q) + "; ";
    if (!link_ok) oc.detail += "p - F q lacks a factor of E; ";
    report.orders.push_back(std::move(oc));
  }
  return report;
}

CheckReport generating_system_check(int order) {
  return generating_system_check(split_series(generate_series(order)), order);
}

CheckReport imag_relation_check(const SplitSeries& split, int order) {
  require_order(split, order);
  // hbar^n coefficient of S' is (-i)^n (p_n + i q_n).
  std::vector<Expression> R;
  std::vector<Expression> I;
  for (int n = 0; n <= order; ++n) {
    const int s = ((n / 2) % 2 == 0) ? 1 : -1;
    if (n % 2 == 0) {
      R.push_back(GaussianRational(s) * split.p[n]);
      I.push_back(GaussianRational(s) * split.q[n]);
    } else {
      R.push_back(GaussianRational(s) * split.q[n]);
      I.push_back(GaussianRational(-s) * split.p[n]);
    }
  }
  // G = R'/R with R_0 = u^{1/2}.
  const Expression inv_r0 = Expression::u_power(-1);
  std::vector<Expression> G;
  CheckReport report{"imaginary-part", {}};
  for (int n = 1; n <= order; ++n) {
    const int m = n - 1;
    Expression num = differentiate(R[m]);
    for (int k = 1; k <= m; ++k) num -= R[k] * G[m - k];
    G.push_back(inv_r0 * num);
    const Expression residual = I[n] - GaussianRational(Rational(1, 2)) * G[m];
    OrderCheck oc{n, residual.is_zero(), {}};
    if (!oc.pass) oc.detail = "residual " + to_text(residual);
    report.orders.push_back(std::move(oc));
  }
  return report;
}

CheckReport imag_relation_check(int order) {
  return imag_relation_check(split_series(generate_series(order)), order);
}

}  // namespace swkb
