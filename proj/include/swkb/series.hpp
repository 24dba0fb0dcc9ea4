#pragma once

// Coefficients S_n' of the expansion S' = sum_n (-i hbar)^n S_n' of the
// Riccati equation S'^2 - i hbar S'' + phi^2 -+ hbar phi' = E, and the
// sequences derived from it.

#include <vector>

#include "swkb/expression.hpp"

namespace swkb {

/// Which partner potential V_-+ = phi^2 -+ hbar phi' the series solves.
enum class Partner { minus, plus };

const char* to_string(Partner p);

struct HbarSeries {
  Partner sign = Partner::minus;
  std::vector<Expression> coeffs;  // coeffs[n] = S_n'

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  const Expression& operator[](int n) const { return coeffs.at(n); }
};

/// p_n + i q_n = S_n'.
struct SplitSeries {
  std::vector<Expression> p;
  std::vector<Expression> q;

  int order() const { return static_cast<int>(p.size()) - 1; }
};

/// L_1 .. L_order with q_{n+1} = (i/2) L_n'. Slot 0 stays empty: L_0 is a
/// logarithm outside the ring and only ever contributes the constant
/// closed-contour integral of q_1.
struct LSequence {
  std::vector<Expression> l;

  int order() const { return static_cast<int>(l.size()) - 1; }
  const Expression& operator[](int n) const { return l.at(n); }
};

/// S_0' = u^{1/2}; S_n' = u^{-1/2}/2 (-sum_{k=1}^{n-1} S_k' S_{n-k}' - S_{n-1}''
/// +- i phi' [n = 1]), + for the minus partner.
HbarSeries generate_series(int order, Partner sign = Partner::minus);

/// Order-n coefficient of the Riccati equation with the given coefficients
/// substituted; zero for a correct series.
Expression riccati_residual(const HbarSeries& s, int n);

SplitSeries split_series(const HbarSeries& s);

/// Coefficients of ln(phi + i S') beyond the logarithm, with
/// (phi + i u^{1/2})^{-1} realized as (phi - i u^{1/2}) / E.
LSequence l_sequence(int order, const HbarSeries& minus);

/// S^{(+)}' = S' - i hbar d/dx ln(phi + i S') expanded order by order.
HbarSeries partner_via_log_identity(const HbarSeries& minus, int order);

/// Coefficients of the fixed point P = u^{1/2} + (i hbar/2) (ln P)'.
HbarSeries pbar_series(int order);

}  // namespace swkb
