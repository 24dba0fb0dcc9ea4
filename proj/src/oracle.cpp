#include "swkb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swkb/errors.hpp"

namespace swkb {

namespace {

struct Tridiagonal {
  std::vector<double> diag;
  double off = 0.0;
  double h = 0.0;
};

Tridiagonal discretize(const std::function<double(double)>& V, double hbar, const GridSpec& grid) {
  if (grid.points < 64) throw std::invalid_argument("grid needs at least 64 intervals");
  if (!(grid.half_width > 0.0)) throw std::invalid_argument("grid half-width must be positive");
  Tridiagonal t;
  t.h = 2.0 * grid.half_width / grid.points;
  const double kinetic = hbar * hbar / (t.h * t.h);
  t.off = -kinetic;
  t.diag.resize(grid.points - 1);
  for (int i = 0; i < grid.points - 1; ++i) t.diag[i] = 2.0 * kinetic + V(-grid.half_width + (i + 1) * t.h);
  return t;
}

// Number of eigenvalues below lambda.
int sturm_count(const Tridiagonal& t, double lambda) {
  const double off2 = t.off * t.off;
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    q = t.diag[i] - lambda - (i == 0 ? 0.0 : off2 / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> bisect(const Tridiagonal& t, int count) {
  const auto [mn, mx] = std::minmax_element(t.diag.begin(), t.diag.end());
  const double lower = *mn - 2.0 * std::abs(t.off);
  const double upper = *mx + 2.0 * std::abs(t.off);
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    double lo = out.empty() ? lower : out.back();
    double hi = upper;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(t, mid) >= k + 1) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

// Eigenvector at lambda by inverse iteration with a Thomas solve.
std::vector<double> eigenvector(const Tridiagonal& t, double lambda) {
  const std::size_t n = t.diag.size();
  const double shift = lambda - 1e-10 * std::max(1.0, std::abs(lambda));
  std::vector<double> x(n, 1.0), c(n), d(n);
  for (int iter = 0; iter < 3; ++iter) {
    double denom = t.diag[0] - shift;
    c[0] = t.off / denom;
    d[0] = x[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
      denom = t.diag[i] - shift - t.off * c[i - 1];
      if (denom == 0.0) denom = 1e-300;
      c[i] = t.off / denom;
      d[i] = (x[i] - t.off * d[i - 1]) / denom;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    double norm = 0.0;
    for (double v : x) norm = std::max(norm, std::abs(v));
    for (double& v : x) v /= norm;
  }
  return x;
}

constexpr double kDecayTolerance = 1e-6;

}  // namespace

std::function<double(double)> partner_potential(const PolynomialSuperpotential& phi, Partner partner) {
  phi.validate();
  const double s = partner == Partner::minus ? -1.0 : 1.0;
  return [phi, s](double x) {
    const auto d = phi.derivatives(x, 1);
    return (d[0] * d[0]).real() + s * phi.hbar * d[1].real();
  };
}

std::vector<double> grid_eigenvalues(const std::function<double(double)>& V, double hbar, const GridSpec& grid,
                                     int count) {
  if (count < 1 || count > grid.points / 4) throw std::invalid_argument("count must be in 1..points/4");
  return bisect(discretize(V, hbar, grid), count);
}

OracleResult eigenvalues(const std::function<double(double)>& V, double hbar, const GridSpec& grid, int count) {
  OracleResult r;
  r.grid = grid;
  r.coarse = grid_eigenvalues(V, hbar, grid, count);
  const GridSpec fine_grid{grid.half_width, 2 * grid.points};
  const Tridiagonal fine = discretize(V, hbar, fine_grid);
  r.fine = bisect(fine, count);
  for (int k = 0; k < count; ++k) {
    r.values.push_back((4.0 * r.fine[k] - r.coarse[k]) / 3.0);
    const std::vector<double> psi = eigenvector(fine, r.fine[k]);
    r.boundary_amplitude.push_back(std::max(std::abs(psi.front()), std::abs(psi.back())));
    if (r.boundary_amplitude.back() > kDecayTolerance)
      throw DomainTooSmall("eigenvector " + std::to_string(k) + " has not decayed at the grid ends");
  }
  return r;
}

OracleResult oracle_spectrum(const PolynomialSuperpotential& phi, Partner partner, int count,
                             const OracleOptions& opts) {
  const auto V = partner_potential(phi, partner);
  double X = 2.0;
  for (int attempt = 0; attempt <= opts.max_growth; ++attempt, X *= 1.5) {
    OracleResult r;
    try {
      r = eigenvalues(V, phi.hbar, {X, opts.points}, count);
    } catch (const DomainTooSmall&) {
      continue;
    }
    const double need = *std::max_element(r.values.begin(), r.values.end()) + opts.margin * phi.hbar * phi.hbar;
    if (V(X) >= need && V(-X) >= need) return r;
  }
  throw DomainTooSmall("grid half-width could not be grown enough to contain the requested states");
}

nlohmann::json to_json(const OracleResult& r) {
  return {{"values", r.values},
          {"coarse", r.coarse},
          {"fine", r.fine},
          {"boundary_amplitude", r.boundary_amplitude},
          {"half_width", r.grid.half_width},
          {"points", r.grid.points}};
}

}  // namespace swkb
