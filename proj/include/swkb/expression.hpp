#pragma once

// Exact arithmetic in the differential ring generated by phi, phi', phi'', ...,
// u^{+-1/2} with u = E - phi^2, and E^{+-1}, over the Gaussian rationals.
//
// A second ring (Ring::potential) shares the representation for the ordinary
// WKB series: derivative slot k >= 1 holds V^{(k)}, the half-power symbol is
// w = E - V, and V itself never appears in canonical form.

#include <compare>
#include <complex>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "swkb/rational.hpp"

namespace swkb {

enum class Ring { superpotential, potential };

/// E^e * u^{h/2} * prod_k (d^k phi)^{derivs[k]}.
///
/// Members are declared in print order so the defaulted comparison sorts
/// terms lexicographically on (e, h, derivative exponent vector).
struct Monomial {
  int e = 0;
  int h = 0;
  std::vector<int> derivs;  // trailing zeros trimmed

  int exponent(int k) const { return k < static_cast<int>(derivs.size()) ? derivs[k] : 0; }
  void set_exponent(int k, int a);
  void add_exponent(int k, int delta) { set_exponent(k, exponent(k) + delta); }

  /// Sum of k * a_k; d/dx raises it by exactly one.
  int weight() const;
  /// Highest derivative order present, -1 when there is none.
  int max_order() const;
  /// Number of factors of order >= 1, counted with multiplicity.
  int derivative_factor_count() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct Term {
  Monomial mono;
  GaussianRational coef;
};

enum class UParity { all_odd_half, all_even, mixed };

class Expression {
 public:
  using TermMap = std::map<Monomial, GaussianRational>;

  explicit Expression(Ring ring = Ring::superpotential) : ring_(ring) {}

  /// Canonical form of an arbitrary term list: phi^2 (resp. V) eliminated,
  /// like terms merged, zero coefficients dropped.
  static Expression normalize(std::span<const Term> raw, Ring ring = Ring::superpotential);

  static Expression constant(const GaussianRational& c, Ring ring = Ring::superpotential);
  /// phi^{(k)}; in the potential ring, V^{(k)} (k = 0 gives E - w).
  static Expression derivative_symbol(int k, Ring ring = Ring::superpotential);
  static Expression phi(int k = 0) { return derivative_symbol(k, Ring::superpotential); }
  /// u^{h/2} (w^{h/2} in the potential ring).
  static Expression u_power(int h, Ring ring = Ring::superpotential);
  static Expression e_power(int e, Ring ring = Ring::superpotential);
  /// F = phi * u^{-1/2}.
  static Expression F();
  static Expression monomial(const Monomial& m, const GaussianRational& c = GaussianRational(1),
                             Ring ring = Ring::superpotential);

  Ring ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  GaussianRational coefficient(const Monomial& m) const;

  Expression& operator+=(const Expression& o);
  Expression& operator-=(const Expression& o);
  Expression& operator*=(const GaussianRational& c);
  Expression operator-() const;

  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator*(const GaussianRational& c, Expression a) { return a *= c; }
  friend Expression operator*(Expression a, const GaussianRational& c) { return a *= c; }
  friend bool operator==(const Expression& a, const Expression& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

  /// Exact multiplication by E^k (a pure exponent shift).
  Expression shift_e(int k) const;
  /// Complex conjugate of the coefficients (all symbols are real).
  Expression conj() const;

  /// Adds c * m, reducing m to canonical form first.
  void accumulate(const Monomial& m, const GaussianRational& c);

 private:
  void accumulate_canonical(const Monomial& m, const GaussianRational& c);
  void check_ring(const Expression& o) const;

  Ring ring_;
  TermMap terms_;
};

Expression add(const Expression& a, const Expression& b);
Expression mul(const Expression& a, const Expression& b);
Expression scale(const GaussianRational& c, const Expression& a);
Expression power(const Expression& a, int n);

/// d/dx with E constant; d(u^{h/2}) = -h phi phi' u^{(h-2)/2}.
Expression differentiate(const Expression& a);

/// (re, im) with phi^{(k)}, E and u^{1/2} treated as real symbols.
std::pair<Expression, Expression> split_real_imag(const Expression& a);

/// Minimum E exponent; throws std::domain_error for the zero expression.
int min_e_degree(const Expression& a);
int max_e_degree(const Expression& a);
int min_h(const Expression& a);
int max_h(const Expression& a);
int max_derivative_order(const Expression& a);

/// Throws std::domain_error for the zero expression.
UParity u_parity(const Expression& a);
const char* to_string(UParity p);

/// True when every coefficient is a real rational.
bool is_real(const Expression& a);

// ---------------------------------------------------------------------------
// Numerical evaluation

struct EvalPoint {
  std::vector<std::complex<double>> derivs;  // derivs[k] = value of d^k phi
  std::complex<double> u;
  std::complex<double> sqrt_u;  // caller's branch choice
  double E = 0.0;
};

/// Floating-point image of an Expression, reusable across many points.
class NumericExpression {
 public:
  explicit NumericExpression(const Expression& a);
  std::complex<double> operator()(const EvalPoint& p) const;
  int max_order() const { return max_order_; }

 private:
  struct NumericTerm {
    std::complex<double> coef;
    int e;
    int h;
    std::vector<std::pair<int, int>> factors;  // (order, exponent)
  };
  std::vector<NumericTerm> terms_;
  int max_order_ = -1;
};

/// Throws PoleError on u = 0 with a negative half power or E = 0 with a
/// negative E power.
std::complex<double> evaluate(const Expression& a, const EvalPoint& p);

}  // namespace swkb
