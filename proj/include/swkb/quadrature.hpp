#pragma once

// Closed-contour integrals of ring expressions for polynomial phi, on an
// ellipse around the real turning-point pair.

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "swkb/expression.hpp"

namespace swkb {

struct PolynomialSuperpotential {
  std::vector<double> coefficients;  // ascending degree
  double hbar = 1.0;
  std::string name;

  /// Throws std::invalid_argument unless degree >= 1, leading coefficient
  /// nonzero and hbar > 0.
  void validate() const;
  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  /// phi^{(k)}(z) for k = 0 .. max_order.
  std::vector<std::complex<double>> derivatives(std::complex<double> z, int max_order) const;
  double value(double x, int k = 0) const;

  static PolynomialSuperpotential from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct TurningPoints {
  double left = 0.0;
  double right = 0.0;
  /// Every other root of phi^2 = E.
  std::vector<std::complex<double>> excluded;
};

/// Throws NoClassicalRegion or AmbiguousRegion.
TurningPoints turning_points(const PolynomialSuperpotential& phi, double E);

struct Contour {
  double center = 0.0;
  double a = 1.0;  // real semi-axis
  double b = 0.5;  // imaginary semi-axis

  std::complex<double> point(double theta) const;
  std::complex<double> tangent(double theta) const;  // dz/dtheta
  bool encloses(std::complex<double> z) const;
  double distance(std::complex<double> z) const;
};

struct QuadratureOptions {
  double tol = 1e-10;  // on successive estimates, relative to max(1, |I|)
  int min_samples = 128;
  int max_samples = 1 << 20;
  double aspect = 0.5;     // preferred b/a
  double clearance = 0.2;  // minimum distance to excluded roots, in units of a
  bool require_real = true;
};

/// Ellipse centered between the turning points, scaled to maximize the
/// smallest distance to any root of phi^2 = E. Aspect `aspect` is used when
/// it admits the clearance, otherwise flatter ellipses are tried.
Contour make_contour(const TurningPoints& tp, const QuadratureOptions& opts = {});

/// Checks that the contour encloses exactly the turning pair with the
/// required clearance; throws AmbiguousRegion otherwise.
void validate_contour(const Contour& c, const TurningPoints& tp, const QuadratureOptions& opts = {});

/// u^{1/2} along the contour, continued sample to sample.
struct BranchState {
  std::complex<double> previous;
  bool initialized = false;
  /// Root of u nearest the previous value (positive imaginary part at start).
  std::complex<double> next(std::complex<double> u);
};

struct ContourIntegral {
  std::complex<double> value;
  int samples_used = 0;
};

/// Integrals of several expressions sharing one contour and branch table.
/// Throws NonConvergence, BranchTrackingError (including |Im| >= 10 tol
/// relative to max(1, |I|) when require_real is set), or the turning_points
/// errors.
std::vector<ContourIntegral> contour_integrate(const std::vector<Expression>& integrands,
                                               const PolynomialSuperpotential& phi, double E,
                                               const QuadratureOptions& opts = {});
std::vector<ContourIntegral> contour_integrate(const std::vector<Expression>& integrands,
                                               const PolynomialSuperpotential& phi, double E,
                                               const Contour& contour, const QuadratureOptions& opts = {});
ContourIntegral contour_integrate(const Expression& integrand, const PolynomialSuperpotential& phi, double E,
                                  const QuadratureOptions& opts = {});

}  // namespace swkb
