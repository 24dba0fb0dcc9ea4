#pragma once

// Quantization-condition integrands with total derivatives stripped.

#include <optional>
#include <utility>
#include <vector>

#include "swkb/series.hpp"

namespace swkb {

struct ReducedCorrection {
  int order = 0;           // 2k
  Rational sign_factor;    // (-1)^k
  Expression integrand;    // min_e_degree >= 1 for order >= 2
  Expression certificate;  // p_{2k} - integrand == d/dx certificate
  int e_degree = 0;        // min_e_degree(integrand), 0 when it vanishes
};

/// alpha_n = (p_n - F q_n)/E and beta_n = (q_n + F p_n)/E.
/// Throws StructuralViolation when a numerator lacks the factor E.
std::pair<Expression, Expression> decompose(int n, const SplitSeries& split);

/// E (alpha_{2k} - phi' Q_{2k} u^{-3/2}) with Q_{2k} = i L_{2k-1}/2, then a
/// sweep of the bracket against derivatives with E exponent >= 0.
ReducedCorrection reduce_even_order(int order, const SplitSeries& split, const LSequence& lseq);

/// p_{2k} - pbar_{2k}, swept. Throws StructuralViolation unless the result
/// matches reduce_even_order modulo a certified derivative.
ReducedCorrection reduce_via_pbar(int order, const SplitSeries& split, const HbarSeries& pbar);

/// Y with d/dx Y == x - y, or nullopt.
std::optional<Expression> equivalent_mod_derivative(const Expression& x, const Expression& y);

/// A piece of the (-i hbar)^n coefficient that integrates to zero (or to
/// the pi constant, for q_1).
struct DroppedTerm {
  int order = 0;
  bool imaginary_part = false;  // true for i q_n, false for p_n
  Expression value;             // as it appears in S_n'
  Expression certificate;       // value == d/dx certificate + log_u d/dx ln u
  GaussianRational log_u;
  bool pi_constant = false;     // i q_1: no ring certificate
};

struct QuantizationCondition {
  Partner sign = Partner::minus;
  int max_order = 0;
  /// Closed-contour integral of hbar q_1 in units of pi hbar: moves the
  /// right-hand side 2(n + 1/2) pi hbar to 2 n pi hbar (minus) or
  /// 2 (n + 1) pi hbar (plus).
  int pi_coefficient = 0;
  /// Index 0 holds u^{1/2}; index k holds the hbar^{2k} correction.
  std::vector<ReducedCorrection> corrections;
  std::vector<DroppedTerm> dropped;

  /// Kept integrands plus dropped values rebuild every S_n' exactly, and each
  /// dropped value matches its certificate.
  bool reconstructs(const HbarSeries& s) const;
};

/// max_order must be even and non-negative. The minus partner uses the
/// FQ subtraction; the plus partner is built from its own series through
/// the pbar subtraction.
QuantizationCondition quantization_integrands(int max_order, Partner sign = Partner::minus);

}  // namespace swkb
