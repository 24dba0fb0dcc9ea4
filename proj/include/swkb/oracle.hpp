#pragma once

// Finite-difference eigenvalues of -hbar^2 psi'' + V psi = E psi on [-X, X]
// with Dirichlet ends.

#include <functional>
#include <vector>

#include <json.hpp>

#include "swkb/quadrature.hpp"
#include "swkb/series.hpp"

namespace swkb {

struct GridSpec {
  double half_width = 8.0;
  int points = 4096;  // intervals; the Richardson partner grid uses twice as many
};

struct OracleResult {
  std::vector<double> values;  // Richardson-extrapolated
  std::vector<double> coarse;
  std::vector<double> fine;
  /// Largest |psi| within one grid step of either end, relative to max |psi|.
  std::vector<double> boundary_amplitude;
  GridSpec grid;
};

/// V_-+ = phi^2 -+ hbar phi'.
std::function<double(double)> partner_potential(const PolynomialSuperpotential& phi, Partner partner);

/// Lowest `count` eigenvalues (count <= points/4). Throws DomainTooSmall when an
/// eigenvector has not decayed at the ends.
OracleResult eigenvalues(const std::function<double(double)>& V, double hbar, const GridSpec& grid, int count);

/// Single-grid eigenvalues by Sturm bisection, no extrapolation.
std::vector<double> grid_eigenvalues(const std::function<double(double)>& V, double hbar, const GridSpec& grid,
                                     int count);

struct OracleOptions {
  int points = 4096;
  double margin = 20.0;  // V(+-X) >= E_max + margin hbar^2
  int max_growth = 12;
};

/// Grows X until V(+-X) >= E_max + margin hbar^2 and the decay check passes.
OracleResult oracle_spectrum(const PolynomialSuperpotential& phi, Partner partner, int count,
                             const OracleOptions& opts = {});

nlohmann::json to_json(const OracleResult& r);

}  // namespace swkb
