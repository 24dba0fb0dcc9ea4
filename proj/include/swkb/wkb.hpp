#pragma once

// The ordinary WKB series over the potential ring and its re-expansion
// under V = phi^2 - hbar phi'.

#include <optional>
#include <vector>

#include "swkb/series.hpp"

namespace swkb {

/// Highest order the substitution route is validated for.
inline constexpr int kWkbSubstitutionBound = 4;

/// W_0' = w^{1/2}, W_n' = w^{-1/2}/2 (-sum W_k' W_{n-k}' - W_{n-1}'') in the
/// potential ring (w = E - V).
HbarSeries generate_wkb_series(int order);

/// Image of a potential-ring expression under V^{(k)} -> (phi^2 - hbar phi')^{(k)},
/// as coefficients of t^0 .. t^order with t = -i hbar.
std::vector<Expression> substitute_potential(const Expression& a, int order);

struct WkbSubstitutionReport {
  int order = 0;
  HbarSeries wkb;
  /// t-coefficients of sum_n t^n W_n' after substitution.
  std::vector<Expression> substituted;
  /// substituted[m] == S_m' for every m (the two series solve one equation).
  bool series_match = false;
  /// hbar^n terms (n >= 1) of V'/(E - V) after substitution, each certified as
  /// ((-1)^n/n) d/dx (phi'/u)^n.
  std::vector<std::optional<Expression>> log_term_certificates;
  bool log_terms_ok = false;
  /// Odd WKB orders >= 3 are total derivatives in the potential ring.
  std::vector<std::optional<Expression>> odd_wkb_certificates;
  /// For even m >= 2: condition integrand from W_0, W_2, W_4, ... after
  /// substitution, and a certificate that it differs from p_m by a derivative.
  std::vector<int> condition_orders;
  std::vector<Expression> condition_integrands;
  std::vector<std::optional<Expression>> condition_certificates;

  bool pass() const;
};

/// Throws SubstitutionOverflow when order exceeds bound.
WkbSubstitutionReport wkb_series_and_substitute(int order, int bound = kWkbSubstitutionBound);

}  // namespace swkb
