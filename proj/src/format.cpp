#include "swkb/format.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace swkb {

namespace {

std::string half_power(int h) {
  if (h % 2 == 0) return std::to_string(h / 2);
  return std::to_string(h) + "/2";
}

std::string text_term(const Monomial& m, const GaussianRational& c, Ring ring) {
  std::string s = c.str();
  const char* half = ring == Ring::superpotential ? "u" : "w";
  const char* sym = ring == Ring::superpotential ? "d" : "V";
  if (m.e != 0) s += "*E^" + std::to_string(m.e);
  if (m.h != 0) s += std::string("*") + half + "^" + half_power(m.h);
  for (int k = 0; k < static_cast<int>(m.derivs.size()); ++k)
    if (m.derivs[k] != 0) s += "*" + std::string(sym) + std::to_string(k) + "^" + std::to_string(m.derivs[k]);
  return s;
}

std::string latex_symbol(int k, Ring ring) {
  const std::string base = ring == Ring::superpotential ? "\\phi" : "V";
  if (k == 0) return base;
  if (k <= 3) return "{" + base + std::string(k, '\'') + "}";
  return base + "^{(" + std::to_string(k) + ")}";
}

std::string latex_power(const std::string& base, const std::string& exp) {
  if (exp == "1") return base;
  return base + "^{" + exp + "}";
}

std::string latex_term(const Monomial& m, const GaussianRational& c, Ring ring, bool first) {
  const std::string u = ring == Ring::superpotential ? "(E-\\phi^2)" : "(E-V)";
  std::vector<std::string> num;
  std::vector<std::string> den;
  if (m.e > 0) num.push_back(latex_power("E", std::to_string(m.e)));
  if (m.e < 0) den.push_back(latex_power("E", std::to_string(-m.e)));
  for (int k = 0; k < static_cast<int>(m.derivs.size()); ++k)
    if (m.derivs[k] != 0) num.push_back(latex_power(latex_symbol(k, ring), std::to_string(m.derivs[k])));
  if (m.h > 0) num.push_back(latex_power(u, half_power(m.h)));
  if (m.h < 0) den.push_back(latex_power(u, half_power(-m.h)));

  std::string sign;
  std::string cnum;
  std::string cden;
  if (c.is_real()) {
    const Rational& r = c.re();
    sign = r.sign() < 0 ? "-" : (first ? "" : "+");
    const Rational a = r.sign() < 0 ? -r : r;
    cnum = a.numerator_str();
    cden = a.denominator_str();
  } else if (c.re().is_zero()) {
    const Rational& r = c.im();
    sign = r.sign() < 0 ? "-" : (first ? "" : "+");
    const Rational a = r.sign() < 0 ? -r : r;
    cnum = (a.numerator_str() == "1" ? std::string() : a.numerator_str() + " ") + "i";
    cden = a.denominator_str();
  } else {
    sign = first ? "" : "+";
    cnum = "\\left(" + c.re().str() + (c.im().sign() < 0 ? "-" : "+") +
           (c.im().sign() < 0 ? (-c.im()).str() : c.im().str()) + "i\\right)";
    cden = "1";
  }

  auto join = [](const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : " ") + p;
    return s;
  };
  std::string top = join(num);
  if (cnum != "1" || top.empty()) top = top.empty() ? cnum : cnum + " " + top;
  std::string bottom = join(den);
  if (cden != "1") bottom = bottom.empty() ? cden : cden + " " + bottom;
  if (bottom.empty()) return sign + " " + top;
  return sign + " \\frac{" + top + "}{" + bottom + "}";
}

nlohmann::json rational_json(const Rational& r) {
  auto part = [](const std::string& digits) -> nlohmann::json {
    mpz_class z(digits, 10);
    if (z.fits_slong_p()) return z.get_si();
    return digits;
  };
  return nlohmann::json::array({part(r.numerator_str()), part(r.denominator_str())});
}

Rational rational_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("coefficient must be [num, den]");
  auto part = [](const nlohmann::json& v) {
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    throw std::invalid_argument("coefficient entries must be integers");
  };
  return Rational::from_strings(part(j[0]), part(j[1]));
}

}  // namespace

std::string to_text(const Expression& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : a.terms()) {
    if (!s.empty()) s += " + ";
    s += text_term(m, c, a.ring());
  }
  return s;
}

std::string to_latex(const Expression& a) {
  if (a.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    std::string t = latex_term(m, c, a.ring(), first);
    if (first && !t.empty() && t.front() == ' ') t.erase(0, 1);
    s += (first ? "" : " ") + t;
    first = false;
  }
  return s;
}

nlohmann::json to_json(const Expression& a) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : a.terms()) {
    nlohmann::json derivs = nlohmann::json::object();
    for (int k = 0; k < static_cast<int>(m.derivs.size()); ++k)
      if (m.derivs[k] != 0) derivs[std::to_string(k)] = m.derivs[k];
    terms.push_back({{"coef_re", rational_json(c.re())},
                     {"coef_im", rational_json(c.im())},
                     {"e", m.e},
                     {"h", m.h},
                     {"derivs", derivs}});
  }
  nlohmann::json out = {{"terms", terms}};
  if (a.ring() == Ring::potential) out["ring"] = "potential";
  return out;
}

Expression expression_from_json(const nlohmann::json& j) {
  Ring ring = Ring::superpotential;
  if (j.contains("ring")) {
    const auto r = j.at("ring").get<std::string>();
    if (r == "potential") ring = Ring::potential;
    else if (r != "superpotential") throw std::invalid_argument("unknown ring: " + r);
  }
  std::vector<Term> raw;
  for (const auto& t : j.at("terms")) {
    Monomial m;
    m.e = t.value("e", 0);
    m.h = t.value("h", 0);
    if (t.contains("derivs")) {
      for (const auto& [k, a] : t.at("derivs").items()) m.set_exponent(std::stoi(k), a.get<int>());
    }
    Rational re = t.contains("coef_re") ? rational_from_json(t.at("coef_re")) : Rational(0);
    Rational im = t.contains("coef_im") ? rational_from_json(t.at("coef_im")) : Rational(0);
    raw.push_back({std::move(m), GaussianRational(std::move(re), std::move(im))});
  }
  return Expression::normalize(raw, ring);
}

}  // namespace swkb
