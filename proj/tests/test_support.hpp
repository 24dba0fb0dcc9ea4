#pragma once

#include <initializer_list>
#include <utility>

#include "swkb/expression.hpp"

namespace swkb::testing {

inline Monomial mono(int e, int h, std::initializer_list<std::pair<int, int>> derivs = {}) {
  Monomial m;
  m.e = e;
  m.h = h;
  for (const auto& [k, a] : derivs) m.set_exponent(k, a);
  return m;
}

inline Term term(long coef, Monomial m) { return {std::move(m), GaussianRational(coef)}; }

}  // namespace swkb::testing
