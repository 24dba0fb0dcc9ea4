#pragma once

#include <string>
#include <vector>

#include "swkb/series.hpp"

namespace swkb {

struct OrderCheck {
  int order = 0;
  bool pass = false;
  std::string detail;
};

struct CheckReport {
  std::string name;
  std::vector<OrderCheck> orders;

  bool pass() const;
  /// First failing order, or -1.
  int first_failure() const;
};

/// With P = sum t^n p_n, Q = sum t^n q_n and t = -i hbar, checks order by order
///   -i hbar P' = -P^2 + Q^2 + p_0^2,
///    i hbar Q' = 2PQ + i hbar phi',
/// and that P - p_0 - F Q carries an overall factor of E.
CheckReport generating_system_check(const SplitSeries& split, int order);
CheckReport generating_system_check(int order);

/// With S' = R + i I split by powers of real hbar, checks
/// I = (hbar/2) (ln R)' order by order.
CheckReport imag_relation_check(const SplitSeries& split, int order);
CheckReport imag_relation_check(int order);

}  // namespace swkb
