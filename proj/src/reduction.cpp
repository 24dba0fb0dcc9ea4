#include "swkb/reduction.hpp"

#include <stdexcept>
#include <string>

#include "swkb/antiderivative.hpp"
#include "swkb/errors.hpp"

namespace swkb {

namespace {

const GaussianRational kI = GaussianRational::i();

void require_even(int order) {
  if (order < 0 || order % 2 != 0) throw std::invalid_argument("reduction order must be even and non-negative");
}

Expression divide_by_e(const Expression& numerator, const char* what, int n) {
  if (numerator.is_zero()) return numerator;
  if (min_e_degree(numerator) < 1)
    throw StructuralViolation(std::string(what) + " numerator at order " + std::to_string(n) +
                              " is not divisible by E");
  return numerator.shift_e(-1);
}

// integrand = E * (rem of bracket), certificate gains E * (sweep certificate).
void sweep_bracket(const Expression& bracket, ReducedCorrection& out) {
  const ModuloDerivative md = reduce_modulo_derivatives(bracket, {1, 0});
  out.integrand = md.remainder.shift_e(1);
  out.certificate += md.certificate.shift_e(1);
}

void finish(ReducedCorrection& out, const Expression& p) {
  out.sign_factor = Rational((out.order / 2) % 2 == 0 ? 1 : -1);
  out.e_degree = out.integrand.is_zero() ? 0 : min_e_degree(out.integrand);
  if (p - out.integrand != differentiate(out.certificate))
    throw std::logic_error("reduction certificate failed verification at order " + std::to_string(out.order));
  if (out.order >= 2 && !out.integrand.is_zero() && out.e_degree < 1)
    throw StructuralViolation("reduced integrand at order " + std::to_string(out.order) + " lacks a factor of E");
}

}  // namespace

std::pair<Expression, Expression> decompose(int n, const SplitSeries& split) {
  if (n < 1) throw std::invalid_argument("decompose needs n >= 1");
  if (split.order() < n) throw std::invalid_argument("split series shorter than requested order");
  const Expression F = Expression::F();
  const Expression& p = split.p[n];
  const Expression& q = split.q[n];
  return {divide_by_e(p - F * q, "alpha", n), divide_by_e(q + F * p, "beta", n)};
}

ReducedCorrection reduce_even_order(int order, const SplitSeries& split, const LSequence& lseq) {
  require_even(order);
  if (order == 0) throw std::invalid_argument("reduce_even_order needs order >= 2");
  if (lseq.order() < order - 1) throw std::invalid_argument("L sequence shorter than order - 1");
  const auto [alpha, beta] = decompose(order, split);
  const Expression Q = kI * GaussianRational(Rational(1, 2)) * lseq[order - 1];
  ReducedCorrection out;
  out.order = order;
  out.certificate = Expression::F() * Q;
  sweep_bracket(alpha - Expression::phi(1) * Q * Expression::u_power(-3), out);
  finish(out, split.p[order]);
  return out;
}

ReducedCorrection reduce_via_pbar(int order, const SplitSeries& split, const HbarSeries& pbar) {
  require_even(order);
  if (split.order() < order || pbar.order() < order)
    throw std::invalid_argument("series shorter than requested order");
  ReducedCorrection out;
  out.order = order;
  if (order == 0) {
    if (split.p[0] != pbar[0]) throw StructuralViolation("leading coefficients of p and pbar differ");
    out.sign_factor = Rational(1);
    return out;
  }
  auto pbar_cert = antiderivative(pbar[order]);
  if (!pbar_cert) throw StructuralViolation("pbar coefficient at order " + std::to_string(order) + " is not a derivative");
  out.certificate = *pbar_cert;
  const Expression raw = split.p[order] - pbar[order];
  if (raw.is_zero() || min_e_degree(raw) >= 1) {
    sweep_bracket(raw.shift_e(-1), out);
  } else {
    const ModuloDerivative md = reduce_modulo_derivatives(raw);
    out.integrand = md.remainder;
    out.certificate += md.certificate;
  }

  // Cross-check against the FQ route built from the minus series.
  const HbarSeries minus = generate_series(order, Partner::minus);
  const ReducedCorrection fq =
      reduce_even_order(order, split_series(minus), l_sequence(order - 1, minus));
  if (!equivalent_mod_derivative(out.integrand, fq.integrand))
    throw StructuralViolation("pbar and FQ reductions disagree at order " + std::to_string(order));
  finish(out, split.p[order]);
  return out;
}

std::optional<Expression> equivalent_mod_derivative(const Expression& x, const Expression& y) {
  const Expression diff = x - y;
  if (diff.is_zero()) return Expression(x.ring());
  return antiderivative(diff);
}

bool QuantizationCondition::reconstructs(const HbarSeries& s) const {
  if (s.order() < max_order) return false;
  const Expression half_q1 = GaussianRational(Rational(pi_coefficient, 2)) * Expression::phi(1) * Expression::u_power(-1);
  for (const auto& d : dropped) {
    if (d.pi_constant) {
      if (d.order != 1 || d.value != kI * half_q1) return false;
    } else if (d.value != differentiate(d.certificate) + d.log_u * log_u_derivative()) {
      return false;
    }
  }
  for (int n = 0; n <= max_order; ++n) {
    Expression total = n % 2 == 0 ? corrections.at(n / 2).integrand : Expression();
    for (const auto& d : dropped)
      if (d.order == n) total += d.value;
    if (total != s[n]) return false;
  }
  return true;
}

QuantizationCondition quantization_integrands(int max_order, Partner sign) {
  require_even(max_order);
  const HbarSeries s = generate_series(max_order, sign);
  const SplitSeries split = split_series(s);

  QuantizationCondition qc;
  qc.sign = sign;
  qc.max_order = max_order;
  ReducedCorrection lead;
  lead.sign_factor = Rational(1);
  lead.integrand = split.p[0];
  qc.corrections.push_back(lead);

  if (max_order >= 2) {
    if (sign == Partner::minus) {
      const LSequence lseq = l_sequence(max_order - 1, s);
      for (int k = 2; k <= max_order; k += 2) qc.corrections.push_back(reduce_even_order(k, split, lseq));
    } else {
      const HbarSeries pbar = pbar_series(max_order);
      for (int k = 2; k <= max_order; k += 2) qc.corrections.push_back(reduce_via_pbar(k, split, pbar));
    }
  }

  // q_1 = +- phi'/(2 u^{1/2}) integrates to +- pi.
  const Expression q1 = split_series(generate_series(1, sign)).q[1];
  const Expression half_q1 = GaussianRational(Rational(1, 2)) * Expression::phi(1) * Expression::u_power(-1);
  if (q1 == half_q1) {
    qc.pi_coefficient = 1;
  } else if (q1 == -half_q1) {
    qc.pi_coefficient = -1;
  } else {
    throw StructuralViolation("unexpected q_1");
  }

  auto certify = [](int n, const Expression& value, bool imaginary) {
    DroppedTerm d;
    d.order = n;
    d.imaginary_part = imaginary;
    d.value = value;
    auto cert = antiderivative(value);
    if (!cert) throw StructuralViolation("order " + std::to_string(n) + " term expected to be a total derivative");
    d.certificate = std::move(*cert);
    return d;
  };

  for (int n = 1; n <= max_order; ++n) {
    const Expression iq = kI * split.q[n];
    if (n % 2 == 0) {
      const ReducedCorrection& rc = qc.corrections[n / 2];
      DroppedTerm d;
      d.order = n;
      d.value = split.p[n] - rc.integrand;
      d.certificate = rc.certificate;
      qc.dropped.push_back(std::move(d));
      qc.dropped.push_back(certify(n, iq, true));
    } else if (n == 1) {
      auto log = antiderivative_with_log(split.p[1]);
      if (!log) throw StructuralViolation("p_1 is not a logarithmic derivative");
      DroppedTerm dp;
      dp.order = 1;
      dp.value = split.p[1];
      dp.certificate = log->ring_part;
      dp.log_u = log->log_u;
      qc.dropped.push_back(std::move(dp));
      DroppedTerm dq;
      dq.order = 1;
      dq.imaginary_part = true;
      dq.value = iq;
      dq.pi_constant = true;
      qc.dropped.push_back(std::move(dq));
    } else {
      qc.dropped.push_back(certify(n, split.p[n], false));
      qc.dropped.push_back(certify(n, iq, true));
    }
  }
  if (!qc.reconstructs(s)) throw std::logic_error("quantization bookkeeping does not rebuild the series");
  return qc;
}

}  // namespace swkb
