#pragma once

#include <string>

#include <json.hpp>

#include "swkb/expression.hpp"

namespace swkb {

/// Deterministic text form, terms in canonical order joined by " + ":
/// `3/8*E^1*u^-5/2*d1^2` where `dk` is the k-th derivative of phi
/// (`Vk` and `w` in the potential ring).
std::string to_text(const Expression& a);

/// Display form with negative powers moved into a denominator.
std::string to_latex(const Expression& a);

/// `{"terms":[{"coef_re":[n,d],"coef_im":[n,d],"e":..,"h":..,"derivs":{"k":a}}]}`;
/// potential-ring expressions also carry `"ring":"potential"`.
nlohmann::json to_json(const Expression& a);
Expression expression_from_json(const nlohmann::json& j);

}  // namespace swkb
