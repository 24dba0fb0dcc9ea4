#include "swkb/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/Polynomials>

#include "swkb/errors.hpp"

namespace swkb {

using cd = std::complex<double>;

void PolynomialSuperpotential::validate() const {
  if (coefficients.size() < 2) throw std::invalid_argument("superpotential must have degree >= 1");
  if (coefficients.back() == 0.0) throw std::invalid_argument("leading coefficient must be nonzero");
  for (double c : coefficients)
    if (!std::isfinite(c)) throw std::invalid_argument("coefficients must be finite");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw std::invalid_argument("hbar must be positive");
}

std::vector<cd> PolynomialSuperpotential::derivatives(cd z, int max_order) const {
  std::vector<cd> out(max_order + 1, cd(0.0));
  std::vector<double> c = coefficients;
  for (int k = 0; k <= max_order && !c.empty(); ++k) {
    cd acc(0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    out[k] = acc;
    std::vector<double> dc;
    for (std::size_t j = 1; j < c.size(); ++j) dc.push_back(c[j] * static_cast<double>(j));
    c = std::move(dc);
  }
  return out;
}

double PolynomialSuperpotential::value(double x, int k) const { return derivatives(cd(x), k)[k].real(); }

PolynomialSuperpotential PolynomialSuperpotential::from_json(const nlohmann::json& j) {
  PolynomialSuperpotential p;
  p.coefficients = j.at("coefficients").get<std::vector<double>>();
  if (j.contains("hbar")) p.hbar = j.at("hbar").get<double>();
  if (j.contains("name")) p.name = j.at("name").get<std::string>();
  p.validate();
  return p;
}

nlohmann::json PolynomialSuperpotential::to_json() const {
  nlohmann::json j{{"coefficients", coefficients}, {"hbar", hbar}};
  if (!name.empty()) j["name"] = name;
  return j;
}

namespace {

std::vector<cd> roots_of_shifted(const PolynomialSuperpotential& phi, double shift) {
  std::vector<double> c = phi.coefficients;
  c[0] -= shift;
  std::vector<cd> roots;
  if (c.size() == 2) {
    roots.emplace_back(-c[0] / c[1]);
  } else {
    Eigen::VectorXd v(static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<Eigen::Index>(i)] = c[i];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(v);
    for (Eigen::Index i = 0; i < solver.roots().size(); ++i) roots.push_back(solver.roots()[i]);
  }
  for (cd& z : roots) {
    for (int it = 0; it < 50; ++it) {
      const auto d = phi.derivatives(z, 1);
      if (d[1] == cd(0.0)) break;
      const cd step = (d[0] - shift) / d[1];
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
  }
  return roots;
}

}  // namespace

TurningPoints turning_points(const PolynomialSuperpotential& phi, double E) {
  phi.validate();
  if (!(E > 0.0)) throw NoClassicalRegion("no classical region for E <= 0");
  const double root_e = std::sqrt(E);
  std::vector<cd> all = roots_of_shifted(phi, root_e);
  for (const cd& z : roots_of_shifted(phi, -root_e)) all.push_back(z);

  std::vector<double> real;
  for (cd& z : all) {
    if (std::abs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z))) {
      z = cd(z.real(), 0.0);
      real.push_back(z.real());
    }
  }
  std::sort(real.begin(), real.end());
  double scale = 1.0;
  for (const cd& z : all) scale = std::max(scale, std::abs(z));
  for (std::size_t i = 1; i < real.size(); ++i)
    if (real[i] - real[i - 1] < 1e-7 * scale) throw AmbiguousRegion("turning points nearly coincide");

  int found = 0;
  TurningPoints tp;
  for (std::size_t i = 1; i < real.size(); ++i) {
    const double mid = 0.5 * (real[i - 1] + real[i]);
    const double f = phi.value(mid);
    if (f * f < E) {
      ++found;
      tp.left = real[i - 1];
      tp.right = real[i];
    }
  }
  if (found == 0) throw NoClassicalRegion("no real turning-point pair encloses a classical region");
  if (found > 1) throw AmbiguousRegion("more than one classical region");
  for (const cd& z : all)
    if (!(z.imag() == 0.0 && (z.real() == tp.left || z.real() == tp.right))) tp.excluded.push_back(z);
  return tp;
}

cd Contour::point(double theta) const { return {center + a * std::cos(theta), b * std::sin(theta)}; }

cd Contour::tangent(double theta) const { return {-a * std::sin(theta), b * std::cos(theta)}; }

bool Contour::encloses(cd z) const {
  const double x = (z.real() - center) / a;
  const double y = z.imag() / b;
  return x * x + y * y < 1.0;
}

double Contour::distance(cd z) const {
  constexpr int kProbe = 2048;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kProbe; ++j)
    best = std::min(best, std::abs(point(2.0 * std::numbers::pi * j / kProbe) - z));
  return best;
}

namespace {

// Smallest distance to any root, or -1 when the contour is inadmissible.
double contour_score(const Contour& c, const TurningPoints& tp, double clearance) {
  double best = std::numeric_limits<double>::infinity();
  for (double x : {tp.left, tp.right}) {
    if (!c.encloses(cd(x))) return -1.0;
    best = std::min(best, c.distance(cd(x)));
  }
  for (const cd& z : tp.excluded) {
    if (c.encloses(z)) return -1.0;
    const double d = c.distance(z);
    if (d < clearance * c.a) return -1.0;
    best = std::min(best, d);
  }
  return best;
}

}  // namespace

Contour make_contour(const TurningPoints& tp, const QuadratureOptions& opts) {
  const double half = 0.5 * (tp.right - tp.left);
  for (double factor : {1.0, 0.7, 0.5, 0.3, 0.2}) {
    Contour best;
    double best_score = -1.0;
    for (int step = 0; step <= 40; ++step) {
      Contour c;
      c.center = 0.5 * (tp.left + tp.right);
      c.a = half * (1.05 + 0.05 * step);
      c.b = opts.aspect * factor * c.a;
      const double score = contour_score(c, tp, opts.clearance);
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    if (best_score > 0.0) return best;
  }
  throw AmbiguousRegion("no ellipse separates the turning points from the other roots");
}

void validate_contour(const Contour& c, const TurningPoints& tp, const QuadratureOptions& opts) {
  if (!(c.a > 0.0) || !(c.b > 0.0)) throw std::invalid_argument("contour semi-axes must be positive");
  if (contour_score(c, tp, opts.clearance) <= 0.0)
    throw AmbiguousRegion("contour does not isolate the turning-point pair");
}

cd BranchState::next(cd u) {
  const cd r = std::sqrt(u);
  if (!initialized) {
    initialized = true;
    previous = (r.imag() > 0.0 || (r.imag() == 0.0 && r.real() >= 0.0)) ? r : -r;
  } else {
    previous = std::abs(r - previous) <= std::abs(r + previous) ? r : -r;
  }
  return previous;
}

namespace {

struct Sample {
  cd z;
  cd dz;
  cd u;
};

constexpr double kRoundoffFactor = 100.0;

// Branch table on N points; empty when the tracking is under-resolved.
std::vector<cd> branch_table(const std::vector<Sample>& s) {
  BranchState state;
  std::vector<cd> out;
  out.reserve(s.size());
  for (const Sample& p : s) {
    const cd prev = state.previous;
    const cd r = state.next(p.u);
    if (!out.empty() && std::abs(r - prev) > 0.25 * std::max(std::abs(r), std::abs(prev))) return {};
    out.push_back(r);
  }
  const cd closing = state.next(s.front().u);
  if (std::abs(closing - out.front()) > 0.25 * std::abs(out.front())) return {};
  return out;
}

}  // namespace

std::vector<ContourIntegral> contour_integrate(const std::vector<Expression>& integrands,
                                               const PolynomialSuperpotential& phi, double E,
                                               const Contour& contour, const QuadratureOptions& opts) {
  const TurningPoints tp = turning_points(phi, E);
  validate_contour(contour, tp, opts);
  if (opts.min_samples < 4 || opts.max_samples < opts.min_samples)
    throw std::invalid_argument("bad sample bounds");

  std::vector<NumericExpression> compiled;
  int max_order = 0;
  for (const auto& e : integrands) {
    compiled.emplace_back(e);
    max_order = std::max(max_order, compiled.back().max_order());
  }

  const std::size_t m = integrands.size();
  std::vector<cd> sums(m, cd(0.0));
  std::vector<double> magnitudes(m, 0.0);
  std::vector<cd> previous_estimate;
  std::vector<cd> previous_table;
  for (int n = opts.min_samples; n <= opts.max_samples; n *= 2) {
    std::vector<Sample> samples(n);
    std::vector<std::vector<cd>> derivs(n);
    for (int j = 0; j < n; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / n;
      samples[j].z = contour.point(theta);
      samples[j].dz = contour.tangent(theta);
      derivs[j] = phi.derivatives(samples[j].z, std::max(max_order, 0));
      samples[j].u = E - derivs[j][0] * derivs[j][0];
    }
    std::vector<cd> table = branch_table(samples);
    if (table.empty()) {
      previous_table.clear();
      continue;
    }
    cd action(0.0);
    for (int j = 0; j < n; ++j) action += table[j] * samples[j].dz;
    if (action.real() < 0.0)
      for (cd& s : table) s = -s;

    // Nested rule: reuse the even samples when the coarser table agrees.
    bool nested = !previous_table.empty() && static_cast<int>(previous_table.size()) * 2 == n;
    for (int j = 0; nested && j < n / 2; ++j)
      nested = std::abs(table[2 * j] - previous_table[j]) <= 1e-12 * std::abs(table[2 * j]);
    if (!nested) {
      std::fill(sums.begin(), sums.end(), cd(0.0));
      std::fill(magnitudes.begin(), magnitudes.end(), 0.0);
      previous_estimate.clear();
    }
    for (int j = nested ? 1 : 0; j < n; j += nested ? 2 : 1) {
      EvalPoint p;
      p.derivs = derivs[j];
      p.u = samples[j].u;
      p.sqrt_u = table[j];
      p.E = E;
      for (std::size_t i = 0; i < m; ++i) {
        const cd term = compiled[i](p) * samples[j].dz;
        sums[i] += term;
        magnitudes[i] += std::abs(term);
      }
    }
    std::vector<cd> estimate(m);
    for (std::size_t i = 0; i < m; ++i) estimate[i] = sums[i] * (2.0 * std::numbers::pi / n);

    bool converged = !previous_estimate.empty();
    for (std::size_t i = 0; converged && i < m; ++i)
      converged = std::abs(estimate[i] - previous_estimate[i]) < opts.tol * std::max(1.0, std::abs(estimate[i]));
    if (converged) {
      std::vector<ContourIntegral> out;
      for (std::size_t i = 0; i < m; ++i) {
        if (opts.require_real && std::abs(estimate[i].imag()) >= 10.0 * opts.tol * std::max(1.0, std::abs(estimate[i])))
          throw BranchTrackingError("contour integral has a non-negligible imaginary part");
        out.push_back({estimate[i], n});
      }
      return out;
    }
    previous_estimate = std::move(estimate);
    previous_table = std::move(table);
  }
  throw NonConvergence("contour quadrature did not converge within the sample limit");
}

std::vector<ContourIntegral> contour_integrate(const std::vector<Expression>& integrands,
                                               const PolynomialSuperpotential& phi, double E,
                                               const QuadratureOptions& opts) {
  return contour_integrate(integrands, phi, E, make_contour(turning_points(phi, E), opts), opts);
}

ContourIntegral contour_integrate(const Expression& integrand, const PolynomialSuperpotential& phi, double E,
                                  const QuadratureOptions& opts) {
  return contour_integrate(std::vector<Expression>{integrand}, phi, E, opts).front();
}

}  // namespace swkb
