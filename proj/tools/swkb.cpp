#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "swkb/antiderivative.hpp"
#include "swkb/errors.hpp"
#include "swkb/format.hpp"
#include "swkb/oracle.hpp"
#include "swkb/reduction.hpp"
#include "swkb/spectrum.hpp"
#include "swkb/verify.hpp"

using namespace swkb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kMaxSeriesOrder = 12;

enum class Format { text, json, latex };

struct Common {
  bool json = false;
  bool latex = false;
  Format format() const { return json ? Format::json : latex ? Format::latex : Format::text; }
};

struct PhiSource {
  std::string config;
  std::vector<double> coefficients;
  double hbar = 1.0;

  PolynomialSuperpotential load() const {
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw std::invalid_argument("cannot open config file " + config);
      return PolynomialSuperpotential::from_json(nlohmann::json::parse(in));
    }
    if (coefficients.empty()) throw std::invalid_argument("give --config or --coefficients");
    PolynomialSuperpotential p{coefficients, hbar, ""};
    p.validate();
    return p;
  }
};

Partner parse_partner(const std::string& s) { return s == "plus" ? Partner::plus : Partner::minus; }

void add_phi_options(CLI::App* cmd, PhiSource& src) {
  auto* cfg = cmd->add_option("--config", src.config, "superpotential JSON {coefficients:[...], hbar:...}");
  auto* co = cmd->add_option("--coefficients", src.coefficients, "phi coefficients, ascending degree")->delimiter(',');
  cfg->excludes(co);
  cmd->add_option("--hbar", src.hbar, "hbar when --coefficients is used")->check(CLI::PositiveNumber);
}

int cmd_series(int order, const std::string& sign, bool certificates, const Common& c) {
  const HbarSeries s = generate_series(order, parse_partner(sign));
  const SplitSeries split = split_series(s);
  if (c.format() == Format::json) {
    nlohmann::json arr = nlohmann::json::array();
    for (int n = 0; n <= order; ++n) {
      nlohmann::json j{{"order", n}, {"sign", to_string(s.sign)}, {"expr", to_json(s[n])},
                       {"p", to_json(split.p[n])}, {"q", to_json(split.q[n])}};
      if (certificates && n >= 3 && n % 2 == 1)
        if (auto y = antiderivative(split.q[n])) j["q_certificate"] = to_json(*y);
      arr.push_back(j);
    }
    std::cout << arr.dump(2) << '\n';
    return kExitOk;
  }
  const bool tex = c.format() == Format::latex;
  auto show = [tex](const Expression& e) { return tex ? to_latex(e) : to_text(e); };
  for (int n = 0; n <= order; ++n) {
    std::cout << "order " << n << " (" << to_string(s.sign) << ")\n";
    std::cout << "  S' = " << show(s[n]) << '\n';
    std::cout << "  p  = " << show(split.p[n]) << '\n';
    std::cout << "  q  = " << show(split.q[n]) << '\n';
    if (certificates && n >= 3 && n % 2 == 1) {
      const auto y = antiderivative(split.q[n]);
      std::cout << "  q  = d/dx [ " << (y ? show(*y) : std::string("none found")) << " ]\n";
    }
  }
  return kExitOk;
}

int cmd_reduce(int max_order, const std::string& sign, const Common& c) {
  const QuantizationCondition qc = quantization_integrands(max_order, parse_partner(sign));
  const std::string rhs = qc.pi_coefficient == 1 ? "2 n pi hbar" : "2 (n+1) pi hbar";
  switch (c.format()) {
    case Format::json: {
      nlohmann::json j{{"sign", to_string(qc.sign)}, {"pi_coefficient", qc.pi_coefficient}, {"rhs", rhs}};
      j["orders"] = nlohmann::json::array();
      for (const auto& r : qc.corrections)
        j["orders"].push_back({{"order", r.order},
                               {"sign_factor", r.sign_factor.str()},
                               {"integrand", to_json(r.integrand)},
                               {"certificate", to_json(r.certificate)},
                               {"e_degree", r.e_degree}});
      std::cout << j.dump(2) << '\n';
      break;
    }
    case Format::latex: {
      std::string s;
      for (const auto& r : qc.corrections) {
        if (r.order == 0) {
          s += "\\oint " + to_latex(r.integrand) + " \\, dx";
          continue;
        }
        s += std::string(r.sign_factor.sign() < 0 ? " - " : " + ") + "\\hbar^{" + std::to_string(r.order) +
             "} \\oint \\left( " + to_latex(r.integrand) + " \\right) dx";
      }
      s += " + \\ldots = " + std::string(qc.pi_coefficient == 1 ? "2n\\pi\\hbar" : "2(n+1)\\pi\\hbar");
      std::cout << s << '\n';
      break;
    }
    case Format::text: {
      std::cout << "quantization condition (" << to_string(qc.sign) << "), right-hand side " << rhs << '\n';
      for (const auto& r : qc.corrections) {
        std::cout << "order " << r.order << "  sign " << (r.sign_factor.sign() < 0 ? "-1" : "+1") << "  E-degree " << r.e_degree << '\n';
        std::cout << "  integrand   " << to_text(r.integrand) << '\n';
        if (r.order > 0) std::cout << "  certificate " << to_text(r.certificate) << '\n';
      }
      break;
    }
  }
  return kExitOk;
}

int cmd_verify(int order, bool mutate, const Common& c) {
  const auto checks = run_property_suite(order, mutate);
  bool ok = true;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& ch : checks) {
    ok = ok && ch.pass;
    if (c.format() == Format::json) {
      arr.push_back({{"check", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
    } else {
      std::cout << (ch.pass ? "PASS " : "FAIL ") << ch.name << " (" << ch.detail << ")\n";
    }
  }
  if (c.format() == Format::json) std::cout << nlohmann::json{{"order", order}, {"pass", ok}, {"checks", arr}}.dump(2) << '\n';
  return ok ? kExitOk : kExitViolation;
}

SpectrumReport build_report(const PhiSource& src, const std::vector<int>& orders, int levels) {
  return degeneracy_report(src.load(), orders, levels);
}

int print_report(const SpectrumReport& r, const Common& c) {
  if (c.format() == Format::json) {
    std::cout << to_json(r).dump(2) << '\n';
  } else {
    std::cout << to_text(r);
    for (const auto& lv : r.levels)
      for (std::size_t k = 0; k < r.orders.size(); ++k)
        if (!lv.failures[k].empty())
          std::cerr << "n=" << lv.n << " order " << r.orders[k] << ": " << lv.failures[k] << '\n';
  }
  return kExitOk;
}

int cmd_oracle(const PhiSource& src, const std::string& partner, int count, int points, const Common& c) {
  OracleOptions opts;
  opts.points = points;
  const OracleResult r = oracle_spectrum(src.load(), parse_partner(partner), count, opts);
  if (c.format() == Format::json) {
    std::cout << to_json(r).dump(2) << '\n';
    return kExitOk;
  }
  std::printf("grid half-width %.6g, %d intervals (Richardson with %d)\n", r.grid.half_width, r.grid.points,
              2 * r.grid.points);
  std::printf("   k          eigenvalue      coarse - value    boundary |psi|\n");
  for (std::size_t k = 0; k < r.values.size(); ++k)
    std::printf("%4zu %19.12f %17.3e %17.3e\n", k, r.values[k], r.coarse[k] - r.values[k], r.boundary_amplitude[k]);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SWKB series, reduction and spectra"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.json, "machine-readable output");
  app.add_flag("--latex", common.latex, "LaTeX output where available");

  int series_order = 3;
  std::string sign = "minus";
  bool show_certificates = false;
  auto* series = app.add_subcommand("series", "print S_n', p_n, q_n");
  series->add_option("--order", series_order, "highest order")->check(CLI::Range(0, kMaxSeriesOrder));
  series->add_option("--sign", sign, "partner")->check(CLI::IsMember({"minus", "plus"}));
  series->add_flag("--show-certificates", show_certificates, "antiderivatives of odd q_n, n >= 3");

  int reduce_order = 4;
  auto* reduce = app.add_subcommand("reduce", "reduced quantization integrands");
  reduce->add_option("--max-order", reduce_order, "even truncation order")->check(CLI::Range(0, kMaxSeriesOrder));
  reduce->add_option("--sign", sign, "partner")->check(CLI::IsMember({"minus", "plus"}));

  int verify_order = 8;
  bool mutate = false;
  auto* verify = app.add_subcommand("verify", "exact property suite");
  verify->add_option("--order", verify_order, "highest order")->check(CLI::Range(1, kMaxSeriesOrder));
  verify->add_flag("--inject-mutation", mutate, "perturb q_2 (negative control)");

  PhiSource src;
  std::vector<int> orders{0, 2, 4};
  int levels = 4;
  auto* quantize = app.add_subcommand("quantize", "SWKB levels and partner degeneracy");
  add_phi_options(quantize, src);
  quantize->add_option("--orders", orders, "truncation orders")->delimiter(',');
  quantize->add_option("--levels", levels, "highest level n")->check(CLI::Range(1, 50));

  auto* compare = app.add_subcommand("compare", "SWKB levels against the finite-difference oracle");
  add_phi_options(compare, src);
  compare->add_option("--orders", orders, "truncation orders")->delimiter(',');
  compare->add_option("--levels", levels, "highest level n")->check(CLI::Range(1, 50));

  std::string partner = "minus";
  int count = 5;
  int points = 4096;
  auto* oracle = app.add_subcommand("oracle", "finite-difference eigenvalues of V- or V+");
  add_phi_options(oracle, src);
  oracle->add_option("--partner", partner, "partner")->check(CLI::IsMember({"minus", "plus"}));
  oracle->add_option("--count", count, "number of eigenvalues")->check(CLI::Range(1, 200));
  oracle->add_option("--points", points, "grid intervals")->check(CLI::Range(64, 1 << 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (int o : orders)
      if (o < 0 || o % 2 != 0 || o > kMaxSeriesOrder) throw std::invalid_argument("orders must be even, 0.." + std::to_string(kMaxSeriesOrder));
    if (reduce->parsed() && reduce_order % 2 != 0) throw std::invalid_argument("--max-order must be even");
    if (series->parsed()) return cmd_series(series_order, sign, show_certificates, common);
    if (reduce->parsed()) return cmd_reduce(reduce_order, sign, common);
    if (verify->parsed()) return cmd_verify(verify_order, mutate, common);
    if (quantize->parsed()) return print_report(build_report(src, orders, levels), common);
    if (compare->parsed()) {
      SpectrumReport r = build_report(src, orders, levels);
      attach_oracle(r, oracle_spectrum(src.load(), Partner::minus, levels + 1).values);
      return print_report(r, common);
    }
    if (oracle->parsed()) return cmd_oracle(src, partner, count, points, common);
  } catch (const StructuralViolation& e) {
    std::cerr << "property violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "bad config: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
