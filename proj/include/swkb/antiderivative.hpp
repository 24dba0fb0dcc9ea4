#pragma once

// Total-derivative certificates by exact linear algebra over a bounded ansatz.
//
// d/dx raises the weight sum_k k*a_k by one and preserves the degree
// a_0 + sum_{k>=1} a_k + h + 2e (phi, phi^{(k)} and u^{1/2} of degree one,
// E of degree two), so every search splits into independent
// (weight, degree, parity of h) blocks. Inside a block the ansatz is every
// canonical monomial of weight one less, derivative orders up to the
// target's maximum, and h / e within a window around the target's range.

#include <optional>

#include "swkb/expression.hpp"

namespace swkb {

struct AnsatzOptions {
  int window = 1;      // initial +- margin on the h and e ranges
  int max_window = 3;  // widened step by step before reporting "none found"
};

/// Y with differentiate(Y) == a, or nullopt when the ansatz has no solution.
/// A returned Y is always checked before it is handed out.
std::optional<Expression> antiderivative(const Expression& a, const AnsatzOptions& opts = {});

/// a == differentiate(ring_part) + log_u * d/dx(ln u).
struct LogAntiderivative {
  Expression ring_part;
  GaussianRational log_u;
};

/// d/dx ln u: -2 phi phi' / u (resp. -V'/w).
Expression log_u_derivative(Ring ring = Ring::superpotential);

/// As antiderivative(), with ln u admitted as one extra generator.
std::optional<LogAntiderivative> antiderivative_with_log(const Expression& a,
                                                         const AnsatzOptions& opts = {});

struct SweepOptions {
  int window = 1;
  /// Lower bound on the E exponent of ansatz monomials.
  std::optional<int> min_e;
};

/// a == remainder + differentiate(certificate).
struct ModuloDerivative {
  Expression remainder;
  Expression certificate;
};

/// Normal form of a modulo the derivatives of the ansatz. Eliminated first
/// are monomials with more factors of order >= 2, then higher maximal
/// order, then those containing phi, so the remainder prefers phi'-only
/// forms. Equal inputs (modulo derivatives in the window) give equal
/// remainders.
ModuloDerivative reduce_modulo_derivatives(const Expression& a, const SweepOptions& opts = {});

}  // namespace swkb
