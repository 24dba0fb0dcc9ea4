#include "swkb/antiderivative.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace swkb {

namespace {

int higher_factor_count(const Monomial& m) {
  int n = 0;
  for (int k = 2; k < static_cast<int>(m.derivs.size()); ++k) n += m.derivs[k];
  return n;
}

// Greater means eliminated first.
struct EliminationOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto ka = std::make_tuple(higher_factor_count(a), a.max_order(), a.exponent(0));
    const auto kb = std::make_tuple(higher_factor_count(b), b.max_order(), b.exponent(0));
    if (ka != kb) return ka < kb;
    return a < b;
  }
};

using Row = std::map<Monomial, Rational, EliminationOrder>;

struct Preimage {
  std::map<Monomial, Rational> ring;
  Rational log;
};

void axpy(Row& target, const Rational& c, const Row& src) {
  for (const auto& [m, v] : src) {
    auto [it, inserted] = target.try_emplace(m, -(c * v));
    if (!inserted) {
      it->second -= c * v;
      if (it->second.is_zero()) target.erase(it);
    }
  }
}

void axpy(Preimage& target, const Rational& c, const Preimage& src) {
  for (const auto& [m, v] : src.ring) {
    auto [it, inserted] = target.ring.try_emplace(m, -(c * v));
    if (!inserted) {
      it->second -= c * v;
      if (it->second.is_zero()) target.ring.erase(it);
    }
  }
  target.log -= c * src.log;
}

int degree(const Monomial& m, Ring ring) {
  const int per_factor = ring == Ring::superpotential ? 1 : 2;
  return m.exponent(0) + per_factor * m.derivative_factor_count() + m.h + 2 * m.e;
}

struct BlockKey {
  int weight;
  int degree;
  int parity;
  auto operator<=>(const BlockKey&) const = default;
};

BlockKey block_of(const Monomial& m, Ring ring) {
  return {m.weight(), degree(m, ring), ((m.h % 2) + 2) % 2};
}

Row real_row(const Expression& a, bool imaginary) {
  Row r;
  for (const auto& [m, c] : a.terms()) {
    const Rational& v = imaginary ? c.im() : c.re();
    if (!v.is_zero()) r.emplace(m, v);
  }
  return r;
}

void partitions(int remaining, int max_part, std::vector<int>& counts,
                std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(counts);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    ++counts[part];
    partitions(remaining - part, part, counts, out);
    --counts[part];
  }
}

struct Window {
  int h_lo, h_hi, e_lo, e_hi, max_order;
};

// All ansatz monomials for one block.
std::vector<Monomial> block_basis(const BlockKey& key, const Window& w, Ring ring) {
  std::vector<Monomial> basis;
  const int target_weight = key.weight - 1;
  if (target_weight < 0) return basis;
  const int max_part = std::max(1, w.max_order);
  std::vector<int> counts(max_part + 1, 0);
  std::vector<std::vector<int>> parts;
  partitions(target_weight, max_part, counts, parts);
  const int a0_max = ring == Ring::superpotential ? 1 : 0;
  for (const auto& p : parts) {
    for (int a0 = 0; a0 <= a0_max; ++a0) {
      Monomial base;
      for (int k = 1; k < static_cast<int>(p.size()); ++k) base.set_exponent(k, p[k]);
      base.set_exponent(0, a0);
      for (int h = w.h_lo; h <= w.h_hi; ++h) {
        if (((h % 2) + 2) % 2 != key.parity) continue;
        Monomial m = base;
        m.h = h;
        m.e = 0;
        const int rest = key.degree - degree(m, ring);
        if (rest % 2 != 0) continue;
        m.e = rest / 2;
        if (m.e < w.e_lo || m.e > w.e_hi) continue;
        basis.push_back(m);
      }
    }
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

// Row echelon form of the derivative images, keyed by leading monomial.
class Echelon {
 public:
  explicit Echelon(Ring ring) : ring_(ring) {}

  void add_column(Row image, Preimage pre) {
    while (!image.empty()) {
      auto lead = std::prev(image.end());
      auto piv = pivots_.find(lead->first);
      if (piv == pivots_.end()) break;
      const Rational c = lead->second;
      axpy(image, c, piv->second.first);
      axpy(pre, c, piv->second.second);
    }
    if (image.empty()) return;
    const Rational lead_coef = std::prev(image.end())->second;
    if (lead_coef != Rational(1)) {
      const Rational inv = Rational(1) / lead_coef;
      for (auto& [m, v] : image) v *= inv;
      for (auto& [m, v] : pre.ring) v *= inv;
      pre.log *= inv;
    }
    Monomial key = std::prev(image.end())->first;
    pivots_.emplace(std::move(key), std::make_pair(std::move(image), std::move(pre)));
  }

  void add_basis(const Monomial& b) {
    const Expression img = differentiate(Expression::monomial(b, GaussianRational(1), ring_));
    Preimage pre;
    pre.ring.emplace(b, Rational(1));
    add_column(real_row(img, false), std::move(pre));
  }

  // Fully reduces target; returns the preimage of the removed part.
  Preimage reduce(Row& target, Row& remainder) const {
    Preimage out;
    while (!target.empty()) {
      auto lead = std::prev(target.end());
      auto piv = pivots_.find(lead->first);
      if (piv == pivots_.end()) {
        remainder.insert(*lead);
        target.erase(lead);
        continue;
      }
      const Rational c = lead->second;
      axpy(target, c, piv->second.first);
      axpy(out, -c, piv->second.second);
    }
    return out;
  }

 private:
  Ring ring_;
  std::map<Monomial, std::pair<Row, Preimage>, EliminationOrder> pivots_;
};

struct BlockResult {
  Expression remainder;
  Expression certificate;
  GaussianRational log_u;
};

// Reduces a modulo derivatives block by block.
BlockResult sweep(const Expression& a, int window, std::optional<int> min_e, bool with_log) {
  const Ring ring = a.ring();
  std::map<BlockKey, Expression> blocks;
  for (const auto& [m, c] : a.terms()) {
    auto [it, inserted] = blocks.try_emplace(block_of(m, ring), ring);
    it->second.accumulate(m, c);
  }
  BlockResult out{Expression(ring), Expression(ring), GaussianRational()};
  const Expression dlog = log_u_derivative(ring);
  for (const auto& [key, part] : blocks) {
    Window w{min_h(part) - window, max_h(part) + window, min_e_degree(part) - window,
             max_e_degree(part) + window, std::max(1, max_derivative_order(part))};
    if (min_e) w.e_lo = std::max(w.e_lo, *min_e);
    Echelon ech(ring);
    if (with_log && key.weight == 1 && key.degree == 0 && key.parity == 0) {
      Preimage pre;
      pre.log = Rational(1);
      ech.add_column(real_row(dlog, false), std::move(pre));
    }
    for (const auto& b : block_basis(key, w, ring)) ech.add_basis(b);

    for (int imaginary = 0; imaginary < 2; ++imaginary) {
      Row target = real_row(part, imaginary != 0);
      if (target.empty()) continue;
      Row rem;
      Preimage pre = ech.reduce(target, rem);
      const GaussianRational unit = imaginary ? GaussianRational::i() : GaussianRational(1);
      for (const auto& [m, v] : rem) out.remainder.accumulate(m, unit * GaussianRational(v));
      for (const auto& [m, v] : pre.ring) out.certificate.accumulate(m, unit * GaussianRational(v));
      out.log_u += unit * GaussianRational(pre.log);
    }
  }
  return out;
}

}  // namespace

Expression log_u_derivative(Ring ring) {
  Monomial m;
  m.h = -2;
  m.set_exponent(1, 1);
  if (ring == Ring::superpotential) {
    m.set_exponent(0, 1);
    return Expression::monomial(m, GaussianRational(-2), ring);
  }
  return Expression::monomial(m, GaussianRational(-1), ring);
}

std::optional<Expression> antiderivative(const Expression& a, const AnsatzOptions& opts) {
  if (a.is_zero()) return Expression(a.ring());
  for (int w = opts.window; w <= std::max(opts.window, opts.max_window); ++w) {
    BlockResult r = sweep(a, w, std::nullopt, false);
    if (!r.remainder.is_zero()) continue;
    if (differentiate(r.certificate) != a)
      throw std::logic_error("antiderivative certificate failed verification");
    return std::move(r.certificate);
  }
  return std::nullopt;
}

std::optional<LogAntiderivative> antiderivative_with_log(const Expression& a,
                                                         const AnsatzOptions& opts) {
  if (a.is_zero()) return LogAntiderivative{Expression(a.ring()), GaussianRational()};
  const Expression dlog = log_u_derivative(a.ring());
  for (int w = opts.window; w <= std::max(opts.window, opts.max_window); ++w) {
    BlockResult r = sweep(a, w, std::nullopt, true);
    if (!r.remainder.is_zero()) continue;
    if (differentiate(r.certificate) + r.log_u * dlog != a)
      throw std::logic_error("logarithmic certificate failed verification");
    return LogAntiderivative{std::move(r.certificate), r.log_u};
  }
  return std::nullopt;
}

ModuloDerivative reduce_modulo_derivatives(const Expression& a, const SweepOptions& opts) {
  if (a.is_zero()) return {Expression(a.ring()), Expression(a.ring())};
  BlockResult r = sweep(a, opts.window, opts.min_e, false);
  if (r.remainder + differentiate(r.certificate) != a)
    throw std::logic_error("derivative sweep failed verification");
  return {std::move(r.remainder), std::move(r.certificate)};
}

}  // namespace swkb
