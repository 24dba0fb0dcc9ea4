#include "swkb/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "swkb/errors.hpp"

namespace swkb {

ActionFunction::ActionFunction(PolynomialSuperpotential phi, int order, Partner partner, SpectrumOptions opts)
    : phi_(std::move(phi)), order_(order), partner_(partner), opts_(opts) {
  phi_.validate();
  const QuantizationCondition qc = quantization_integrands(order, partner);
  pi_coefficient_ = qc.pi_coefficient;
  for (const auto& c : qc.corrections) {
    integrands_.push_back(c.integrand);
    weights_.push_back(c.sign_factor.to_double() * std::pow(phi_.hbar, c.order));
  }
}

double ActionFunction::operator()(double E) const {
  const auto values = contour_integrate(integrands_, phi_, E, opts_.quadrature);
  double total = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) total += weights_[k] * values[k].value.real();
  return total;
}

double ActionFunction::target(int level) const {
  // 2 (n + 1/2) pi hbar with the q_1 constant moved across.
  return (2.0 * level + 1.0 - pi_coefficient_) * std::numbers::pi * phi_.hbar;
}

double action(const PolynomialSuperpotential& phi, int order, double E, Partner partner,
              const SpectrumOptions& opts) {
  return ActionFunction(phi, order, partner, opts)(E);
}

LevelSolution solve_level(const QuantizationProblem& problem, const SpectrumOptions& opts) {
  return solve_level(ActionFunction(problem.phi, problem.truncation_order, problem.partner, opts),
                     problem.level, opts);
}

LevelSolution solve_level(const ActionFunction& f, int level, const SpectrumOptions& opts) {
  if (level < 0) throw std::invalid_argument("level must be non-negative");
  const double hbar = f.phi().hbar;
  const double target = f.target(level);
  LevelSolution out;
  auto g = [&](double E) {
    ++out.evaluations;
    return f(E) - target;
  };

  if (target == 0.0) {
    double first = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    for (double scale : {1e-1, 1e-2, 1e-3}) {
      const double a = g(scale * hbar);
      if (!(a > 0.0) || !(a < previous))
        throw BracketNotFound("action does not decrease to zero as E -> 0; no ground-state root");
      if (first == 0.0) first = a;
      previous = a;
    }
    if (previous > 0.1 * first) throw BracketNotFound("action stays away from zero as E -> 0");
    out.E = 0.0;
    out.analytic_zero = true;
    return out;
  }

  constexpr int kMaxSteps = 60;
  double E = hbar;
  double ge = g(E);
  double lo = 0.0, hi = 0.0, glo = 0.0, ghi = 0.0;
  if (ge < 0.0) {
    lo = E;
    glo = ge;
    for (int i = 0;; ++i) {
      if (i == kMaxSteps) throw BracketNotFound("no upper bracket for the quantization condition");
      E *= 2.0;
      ge = g(E);
      if (ge >= 0.0) break;
      lo = E;
      glo = ge;
    }
    hi = E;
    ghi = ge;
  } else {
    hi = E;
    ghi = ge;
    bool monotone = true;
    for (int i = 0;; ++i) {
      if (i == kMaxSteps) throw BracketNotFound("no lower bracket for the quantization condition");
      const double next = E / 2.0;
      const double gn = g(next);
      if (gn > ge) {
        monotone = false;
        E = next;
        break;
      }
      E = next;
      ge = gn;
      if (ge < 0.0) break;
      hi = E;
      ghi = ge;
    }
    if (monotone) {
      lo = E;
      glo = ge;
    } else {
      // Fine geometric scan between the smallest energy tried and hi.
      constexpr int kScan = 64;
      const double ratio = std::pow(hi / E, 1.0 / kScan);
      double prev_e = E;
      double prev_g = g(E);
      bool found = false;
      for (int i = 1; i <= kScan && !found; ++i) {
        const double e = E * std::pow(ratio, i);
        const double ge_i = g(e);
        if (prev_g < 0.0 && ge_i >= 0.0) {
          lo = prev_e;
          glo = prev_g;
          hi = e;
          ghi = ge_i;
          found = true;
        }
        prev_e = e;
        prev_g = ge_i;
      }
      if (!found) throw BracketNotFound("action is not monotone and never crosses the target");
    }
  }

  if (ghi == 0.0) {
    out.E = hi;
    return out;
  }
  std::uintmax_t iterations = 200;
  const double tol = opts.tol_E;
  auto stop = [tol](double a, double b) { return std::abs(b - a) < tol; };
  const auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, stop, iterations);
  if (!stop(a, b)) throw NonConvergence("root polish did not reach the energy tolerance");
  out.E = 0.5 * (a + b);
  return out;
}

std::optional<double> SpectrumReport::max_gap() const {
  std::optional<double> best;
  for (const auto& d : degeneracy)
    if (d.gap && (!best || *d.gap > *best)) best = d.gap;
  return best;
}

SpectrumReport degeneracy_report(const PolynomialSuperpotential& phi, const std::vector<int>& orders, int n_max,
                                 const SpectrumOptions& opts) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  SpectrumReport report;
  report.phi = phi;
  report.orders = orders;
  report.levels.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) report.levels[n].n = n;

  for (int order : orders) {
    const ActionFunction minus(phi, order, Partner::minus, opts);
    const ActionFunction plus(phi, order, Partner::plus, opts);
    std::vector<std::optional<double>> plus_levels(n_max);
    for (int n = 0; n <= n_max; ++n) {
      LevelRecord& rec = report.levels[n];
      try {
        rec.energies.push_back(solve_level(minus, n, opts).E);
        rec.failures.emplace_back();
      } catch (const NumericalError& e) {
        rec.energies.push_back(std::nullopt);
        rec.failures.emplace_back(e.what());
      }
    }
    for (int n = 0; n < n_max; ++n) {
      try {
        plus_levels[n] = solve_level(plus, n, opts).E;
      } catch (const NumericalError&) {
        plus_levels[n] = std::nullopt;
      }
    }
    const std::size_t slot = report.levels[0].energies.size() - 1;
    for (int n = 1; n <= n_max; ++n) {
      DegeneracyRecord d;
      d.n = n;
      d.order = order;
      d.minus = report.levels[n].energies[slot];
      d.plus_below = plus_levels[n - 1];
      if (d.minus && d.plus_below) d.gap = std::abs(*d.minus - *d.plus_below);
      report.degeneracy.push_back(d);
    }
  }
  return report;
}

void attach_oracle(SpectrumReport& report, const std::vector<double>& oracle_minus) {
  for (auto& rec : report.levels) {
    if (rec.n >= static_cast<int>(oracle_minus.size())) continue;
    rec.oracle = oracle_minus[rec.n];
    rec.abs_error.clear();
    for (const auto& e : rec.energies)
      rec.abs_error.push_back(e ? std::optional<double>(std::abs(*e - *rec.oracle)) : std::nullopt);
  }
}

namespace {

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::string cell(const std::optional<double>& v, const char* fmt = "%16.10f") {
  if (!v) return std::string(16 - 2, ' ') + "--";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, *v);
  return buf;
}

}  // namespace

nlohmann::json to_json(const SpectrumReport& report) {
  nlohmann::json j;
  j["superpotential"] = report.phi.to_json();
  j["orders"] = report.orders;
  j["levels"] = nlohmann::json::array();
  for (const auto& rec : report.levels) {
    nlohmann::json l{{"n", rec.n}, {"oracle", opt(rec.oracle)}};
    l["energies"] = nlohmann::json::array();
    for (std::size_t i = 0; i < rec.energies.size(); ++i) {
      nlohmann::json e{{"order", report.orders[i]}, {"E", opt(rec.energies[i])}};
      if (i < rec.abs_error.size()) e["abs_error"] = opt(rec.abs_error[i]);
      if (!rec.failures[i].empty()) e["failure"] = rec.failures[i];
      l["energies"].push_back(e);
    }
    j["levels"].push_back(l);
  }
  j["degeneracy"] = nlohmann::json::array();
  for (const auto& d : report.degeneracy)
    j["degeneracy"].push_back(
        {{"n", d.n}, {"order", d.order}, {"E_minus", opt(d.minus)}, {"E_plus_below", opt(d.plus_below)}, {"gap", opt(d.gap)}});
  return j;
}

std::string to_text(const SpectrumReport& report) {
  std::ostringstream os;
  os << "levels of V- (E_n per truncation order)\n";
  char buf[64];
  os << "   n";
  for (int order : report.orders) {
    std::snprintf(buf, sizeof buf, "%16s", ("order " + std::to_string(order)).c_str());
    os << buf;
  }
  const bool has_oracle = !report.levels.empty() && report.levels[0].oracle.has_value();
  if (has_oracle) {
    std::snprintf(buf, sizeof buf, "%16s", "oracle");
    os << buf;
    for (int order : report.orders) {
      std::snprintf(buf, sizeof buf, "%12s", ("err " + std::to_string(order)).c_str());
      os << buf;
    }
  }
  os << '\n';
  for (const auto& rec : report.levels) {
    std::snprintf(buf, sizeof buf, "%4d", rec.n);
    os << buf;
    for (const auto& e : rec.energies) os << cell(e);
    if (has_oracle) {
      os << cell(rec.oracle);
      for (const auto& e : rec.abs_error) {
        if (e) {
          std::snprintf(buf, sizeof buf, "%12.3e", *e);
          os << buf;
        } else {
          os << "          --";
        }
      }
    }
    os << '\n';
  }
  os << "\ndegeneracy |E_n(-) - E_(n-1)(+)|\n";
  os << "   n order          E_n(-)      E_(n-1)(+)         gap\n";
  for (const auto& d : report.degeneracy) {
    std::snprintf(buf, sizeof buf, "%4d %5d", d.n, d.order);
    os << buf << cell(d.minus) << cell(d.plus_below);
    if (d.gap) {
      std::snprintf(buf, sizeof buf, "%12.3e", *d.gap);
      os << buf;
    } else {
      os << "          --";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace swkb
