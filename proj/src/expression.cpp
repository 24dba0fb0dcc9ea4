#include "swkb/expression.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swkb/errors.hpp"

namespace swkb {

void Monomial::set_exponent(int k, int a) {
  if (k < 0) throw std::invalid_argument("negative derivative order");
  if (a < 0) throw std::invalid_argument("negative derivative exponent");
  if (k >= static_cast<int>(derivs.size())) {
    if (a == 0) return;
    derivs.resize(k + 1, 0);
  }
  derivs[k] = a;
  while (!derivs.empty() && derivs.back() == 0) derivs.pop_back();
}

int Monomial::weight() const {
  int w = 0;
  for (int k = 1; k < static_cast<int>(derivs.size()); ++k) w += k * derivs[k];
  return w;
}

int Monomial::max_order() const {
  return derivs.empty() ? -1 : static_cast<int>(derivs.size()) - 1;
}

int Monomial::derivative_factor_count() const {
  int n = 0;
  for (int k = 1; k < static_cast<int>(derivs.size()); ++k) n += derivs[k];
  return n;
}

// ---------------------------------------------------------------------------

Expression Expression::normalize(std::span<const Term> raw, Ring ring) {
  Expression out(ring);
  for (const auto& t : raw) out.accumulate(t.mono, t.coef);
  return out;
}

Expression Expression::constant(const GaussianRational& c, Ring ring) {
  Expression out(ring);
  out.accumulate(Monomial{}, c);
  return out;
}

Expression Expression::derivative_symbol(int k, Ring ring) {
  Monomial m;
  m.set_exponent(k, 1);
  Expression out(ring);
  out.accumulate(m, GaussianRational(1));
  return out;
}

Expression Expression::u_power(int h, Ring ring) {
  Monomial m;
  m.h = h;
  return monomial(m, GaussianRational(1), ring);
}

Expression Expression::e_power(int e, Ring ring) {
  Monomial m;
  m.e = e;
  return monomial(m, GaussianRational(1), ring);
}

Expression Expression::F() {
  Monomial m;
  m.h = -1;
  m.set_exponent(0, 1);
  return monomial(m);
}

Expression Expression::monomial(const Monomial& m, const GaussianRational& c, Ring ring) {
  Expression out(ring);
  out.accumulate(m, c);
  return out;
}

GaussianRational Expression::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

void Expression::accumulate_canonical(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Expression::accumulate(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  const int a0 = m.exponent(0);
  // phi^2 = E - u in the superpotential ring; V = E - w in the potential ring.
  const int keep = ring_ == Ring::superpotential ? a0 % 2 : 0;
  const int q = ring_ == Ring::superpotential ? a0 / 2 : a0;
  if (q == 0) {
    accumulate_canonical(m, c);
    return;
  }
  Monomial base = m;
  base.set_exponent(0, keep);
  Rational binom(1);
  for (int j = 0; j <= q; ++j) {
    Monomial t = base;
    t.e += q - j;
    t.h += 2 * j;
    GaussianRational cj = c * GaussianRational(j % 2 == 0 ? binom : -binom);
    accumulate_canonical(t, cj);
    binom = binom * Rational(q - j) / Rational(j + 1);
  }
}

void Expression::check_ring(const Expression& o) const {
  if (ring_ != o.ring_) throw std::invalid_argument("expressions from different rings");
}

Expression& Expression::operator+=(const Expression& o) {
  check_ring(o);
  for (const auto& [m, c] : o.terms_) accumulate_canonical(m, c);
  return *this;
}

Expression& Expression::operator-=(const Expression& o) {
  check_ring(o);
  for (const auto& [m, c] : o.terms_) accumulate_canonical(m, -c);
  return *this;
}

Expression& Expression::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

Expression Expression::operator-() const {
  Expression out = *this;
  for (auto& [m, coef] : out.terms_) coef = -coef;
  return out;
}

Expression operator*(const Expression& a, const Expression& b) {
  a.check_ring(b);
  Expression out(a.ring_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m;
      m.e = ma.e + mb.e;
      m.h = ma.h + mb.h;
      m.derivs.assign(std::max(ma.derivs.size(), mb.derivs.size()), 0);
      for (std::size_t k = 0; k < ma.derivs.size(); ++k) m.derivs[k] += ma.derivs[k];
      for (std::size_t k = 0; k < mb.derivs.size(); ++k) m.derivs[k] += mb.derivs[k];
      out.accumulate(m, ca * cb);
    }
  }
  return out;
}

Expression Expression::shift_e(int k) const {
  Expression out(ring_);
  for (const auto& [m, c] : terms_) {
    Monomial t = m;
    t.e += k;
    out.terms_.emplace(std::move(t), c);
  }
  return out;
}

Expression Expression::conj() const {
  Expression out = *this;
  for (auto& [m, c] : out.terms_) c = c.conj();
  return out;
}

Expression add(const Expression& a, const Expression& b) { return a + b; }
Expression mul(const Expression& a, const Expression& b) { return a * b; }
Expression scale(const GaussianRational& c, const Expression& a) { return c * a; }

Expression power(const Expression& a, int n) {
  if (n < 0) throw std::invalid_argument("negative power of an expression");
  Expression out = Expression::constant(GaussianRational(1), a.ring());
  for (int i = 0; i < n; ++i) out = out * a;
  return out;
}

// ---------------------------------------------------------------------------

Expression differentiate(const Expression& a) {
  Expression out(a.ring());
  for (const auto& [m, c] : a.terms()) {
    for (int k = 0; k < static_cast<int>(m.derivs.size()); ++k) {
      const int ak = m.derivs[k];
      if (ak == 0) continue;
      Monomial t = m;
      t.add_exponent(k, -1);
      t.add_exponent(k + 1, 1);
      out.accumulate(t, c * GaussianRational(ak));
    }
    if (m.h != 0) {
      Monomial t = m;
      t.h -= 2;
      if (a.ring() == Ring::superpotential) {
        // u' = -2 phi phi'
        t.add_exponent(0, 1);
        t.add_exponent(1, 1);
        out.accumulate(t, c * GaussianRational(-m.h));
      } else {
        // w' = -V'
        t.add_exponent(1, 1);
        out.accumulate(t, c * GaussianRational(Rational(-m.h, 2)));
      }
    }
  }
  return out;
}

std::pair<Expression, Expression> split_real_imag(const Expression& a) {
  Expression re(a.ring());
  Expression im(a.ring());
  for (const auto& [m, c] : a.terms()) {
    if (!c.re().is_zero()) re.accumulate(m, GaussianRational(c.re()));
    if (!c.im().is_zero()) im.accumulate(m, GaussianRational(c.im()));
  }
  return {std::move(re), std::move(im)};
}

namespace {

template <typename Key>
int extreme(const Expression& a, Key key, bool want_min) {
  if (a.is_zero()) throw std::domain_error("degree of the zero expression is undefined");
  int best = key(a.terms().begin()->first);
  for (const auto& [m, c] : a.terms()) {
    const int v = key(m);
    best = want_min ? std::min(best, v) : std::max(best, v);
  }
  return best;
}

}  // namespace

int min_e_degree(const Expression& a) {
  return extreme(a, [](const Monomial& m) { return m.e; }, true);
}
int max_e_degree(const Expression& a) {
  return extreme(a, [](const Monomial& m) { return m.e; }, false);
}
int min_h(const Expression& a) {
  return extreme(a, [](const Monomial& m) { return m.h; }, true);
}
int max_h(const Expression& a) {
  return extreme(a, [](const Monomial& m) { return m.h; }, false);
}
int max_derivative_order(const Expression& a) {
  int k = -1;
  for (const auto& [m, c] : a.terms()) k = std::max(k, m.max_order());
  return k;
}

UParity u_parity(const Expression& a) {
  if (a.is_zero()) throw std::domain_error("parity of the zero expression is undefined");
  bool odd = false;
  bool even = false;
  for (const auto& [m, c] : a.terms()) {
    if (m.h % 2 != 0) odd = true;
    else even = true;
  }
  if (odd && even) return UParity::mixed;
  return odd ? UParity::all_odd_half : UParity::all_even;
}

const char* to_string(UParity p) {
  switch (p) {
    case UParity::all_odd_half: return "all-odd-half";
    case UParity::all_even: return "all-even";
    case UParity::mixed: return "mixed";
  }
  return "?";
}

bool is_real(const Expression& a) {
  return std::all_of(a.terms().begin(), a.terms().end(),
                     [](const auto& kv) { return kv.second.is_real(); });
}

// ---------------------------------------------------------------------------

namespace {

template <typename T>
T ipow(T base, int n) {
  if (n < 0) return T(1) / ipow(base, -n);
  T out(1);
  while (n > 0) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

}  // namespace

NumericExpression::NumericExpression(const Expression& a) {
  terms_.reserve(a.size());
  for (const auto& [m, c] : a.terms()) {
    NumericTerm t{{c.re().to_double(), c.im().to_double()}, m.e, m.h, {}};
    for (int k = 0; k < static_cast<int>(m.derivs.size()); ++k)
      if (m.derivs[k] != 0) t.factors.emplace_back(k, m.derivs[k]);
    max_order_ = std::max(max_order_, m.max_order());
    terms_.push_back(std::move(t));
  }
}

std::complex<double> NumericExpression::operator()(const EvalPoint& p) const {
  if (static_cast<int>(p.derivs.size()) <= max_order_)
    throw std::invalid_argument("evaluation point lacks required derivative values");
  std::complex<double> sum = 0.0;
  for (const auto& t : terms_) {
    std::complex<double> v = t.coef;
    if (t.e != 0) v *= ipow(p.E, t.e);
    if (t.h != 0) v *= ipow(p.sqrt_u, t.h);
    for (const auto& [k, a] : t.factors) v *= ipow(p.derivs[k], a);
    sum += v;
  }
  return sum;
}

std::complex<double> evaluate(const Expression& a, const EvalPoint& p) {
  const double tol = 1e-8 * std::max(1.0, std::abs(p.u));
  if (std::abs(p.sqrt_u * p.sqrt_u - p.u) > tol)
    throw std::invalid_argument("sqrt_u is not a square root of u");
  for (const auto& [m, c] : a.terms()) {
    if (m.h < 0 && p.sqrt_u == 0.0) throw PoleError("negative power of u at u = 0");
    if (m.e < 0 && p.E == 0.0) throw PoleError("negative power of E at E = 0");
  }
  return NumericExpression(a)(p);
}

}  // namespace swkb
