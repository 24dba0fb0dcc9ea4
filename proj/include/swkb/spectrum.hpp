#pragma once

// Energy levels from the truncated quantization condition.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "swkb/quadrature.hpp"
#include "swkb/reduction.hpp"

namespace swkb {

struct SpectrumOptions {
  double tol_E = 1e-9;  // absolute width of the final bracket
  QuadratureOptions quadrature;
};

/// Left-hand side of the condition for one superpotential, order and partner:
/// sum_k sign_factor_k hbar^{2k} Re ∮ I_{2k}.
class ActionFunction {
 public:
  ActionFunction(PolynomialSuperpotential phi, int order, Partner partner = Partner::minus,
                 SpectrumOptions opts = {});

  double operator()(double E) const;
  /// 2 n pi hbar (minus) or 2 (n + 1) pi hbar (plus).
  double target(int level) const;
  int order() const { return order_; }
  Partner partner() const { return partner_; }
  const PolynomialSuperpotential& phi() const { return phi_; }

 private:
  PolynomialSuperpotential phi_;
  int order_;
  Partner partner_;
  SpectrumOptions opts_;
  std::vector<Expression> integrands_;
  std::vector<double> weights_;
  int pi_coefficient_ = 0;
};

double action(const PolynomialSuperpotential& phi, int order, double E, Partner partner = Partner::minus,
              const SpectrumOptions& opts = {});

struct QuantizationProblem {
  PolynomialSuperpotential phi;
  int truncation_order = 0;
  int level = 0;
  Partner partner = Partner::minus;
};

struct LevelSolution {
  double E = 0.0;
  bool analytic_zero = false;  // minus ground state reported as E = 0
  int evaluations = 0;
};

/// Throws BracketNotFound, or the quadrature errors.
LevelSolution solve_level(const QuantizationProblem& problem, const SpectrumOptions& opts = {});
LevelSolution solve_level(const ActionFunction& f, int level, const SpectrumOptions& opts = {});

struct LevelRecord {
  int n = 0;
  std::vector<std::optional<double>> energies;  // per truncation order, minus partner
  std::vector<std::string> failures;            // empty string when solved
  std::optional<double> oracle;
  std::vector<std::optional<double>> abs_error;
};

struct DegeneracyRecord {
  int n = 0;
  int order = 0;
  std::optional<double> minus;       // E_n^(-)
  std::optional<double> plus_below;  // E_{n-1}^(+)
  std::optional<double> gap;
};

struct SpectrumReport {
  PolynomialSuperpotential phi;
  std::vector<int> orders;
  std::vector<LevelRecord> levels;  // n = 0 .. n_max
  std::vector<DegeneracyRecord> degeneracy;

  /// Largest gap over all solved pairs, or nullopt when none were solved.
  std::optional<double> max_gap() const;
};

/// Minus levels 0..n_max and plus levels 0..n_max-1 at each order.
SpectrumReport degeneracy_report(const PolynomialSuperpotential& phi, const std::vector<int>& orders, int n_max,
                                 const SpectrumOptions& opts = {});

/// Fills oracle values (minus partner, index n) and absolute errors.
void attach_oracle(SpectrumReport& report, const std::vector<double>& oracle_minus);

nlohmann::json to_json(const SpectrumReport& report);
std::string to_text(const SpectrumReport& report);

}  // namespace swkb
