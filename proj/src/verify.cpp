#include "swkb/verify.hpp"

#include <algorithm>
#include <stdexcept>

#include "swkb/antiderivative.hpp"
#include "swkb/errors.hpp"
#include "swkb/identities.hpp"
#include "swkb/reduction.hpp"
#include "swkb/wkb.hpp"

namespace swkb {

namespace {

const GaussianRational kI = GaussianRational::i();

class Recorder {
 public:
  explicit Recorder(std::string name) : check_{std::move(name), true, {}} {}
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (check_.pass) check_.detail = what;
    check_.pass = false;
  }
  SuiteCheck done() {
    if (check_.pass && check_.detail.empty()) check_.detail = "ok";
    return check_;
  }

 private:
  SuiteCheck check_;
};

std::string at(int n) { return "order " + std::to_string(n); }

}  // namespace

std::vector<SuiteCheck> run_property_suite(int order, bool inject_mutation) {
  if (order < 1) throw std::invalid_argument("verify order must be >= 1");
  const HbarSeries minus = generate_series(order, Partner::minus);
  const HbarSeries plus = generate_series(order, Partner::plus);
  SplitSeries split = split_series(minus);
  if (inject_mutation && order >= 2) split.q[2] = GaussianRational(Rational(3, 2)) * split.q[2];
  if (inject_mutation && order < 2) split.q[1] = GaussianRational(Rational(3, 2)) * split.q[1];
  std::vector<SuiteCheck> out;

  {
    Recorder r("riccati residual");
    for (int n = 0; n <= order; ++n) {
      r.require(riccati_residual(minus, n).is_zero(), "minus " + at(n));
      r.require(riccati_residual(plus, n).is_zero(), "plus " + at(n));
    }
    out.push_back(r.done());
  }
  {
    Recorder r("real split with alternating parity");
    for (int n = 1; n <= order; ++n) {
      r.require(is_real(split.p[n]) && is_real(split.q[n]), "complex coefficient at " + at(n));
      const UParity half = n % 2 == 0 ? UParity::all_odd_half : UParity::all_even;
      const UParity whole = n % 2 == 0 ? UParity::all_even : UParity::all_odd_half;
      r.require(u_parity(split.p[n]) == half && u_parity(split.q[n]) == whole, "parity at " + at(n));
    }
    out.push_back(r.done());
  }
  {
    Recorder r("q_{n+1} = (i/2) L_n'");
    if (order >= 2) {
      const LSequence l = l_sequence(order - 1, minus);
      for (int n = 1; n <= order - 1; ++n) {
        r.require(kI * GaussianRational(Rational(1, 2)) * differentiate(l[n]) == split.q[n + 1], at(n + 1));
        r.require(split.q[n + 1].is_zero() || min_e_degree(split.q[n + 1]) >= 0, "negative E power at " + at(n + 1));
      }
    } else {
      r.require(split.q[1] == GaussianRational(Rational(1, 2)) * Expression::phi(1) * Expression::u_power(-1),
                "q_1");
    }
    out.push_back(r.done());
  }
  {
    Recorder r("partner identity");
    const HbarSeries via_log = partner_via_log_identity(minus, order);
    for (int n = 0; n <= order; ++n) {
      r.require(via_log[n] == plus[n], "log expansion vs recursion at " + at(n));
      r.require(plus[n] == minus[n] - GaussianRational(2) * kI * split.q[n], "S+ = S - 2iq at " + at(n));
    }
    out.push_back(r.done());
  }
  {
    Recorder r("odd q are total derivatives");
    for (int m = 3; m <= order; m += 2) r.require(antiderivative(split.q[m]).has_value(), at(m));
    out.push_back(r.done());
  }
  {
    Recorder r("pbar coefficients are total derivatives");
    const HbarSeries pbar = pbar_series(order);
    const auto log = antiderivative_with_log(pbar[1]);
    r.require(log.has_value(), "pbar_1 log certificate");
    for (int n = 2; n <= order; ++n) r.require(antiderivative(pbar[n]).has_value(), at(n));
    out.push_back(r.done());
  }
  {
    Recorder r("E factorization");
    for (int n = 1; n <= order; ++n) {
      try {
        decompose(n, split);
      } catch (const StructuralViolation& e) {
        r.require(false, e.what());
      }
    }
    out.push_back(r.done());
  }
  {
    const CheckReport gs = generating_system_check(split, order);
    out.push_back({"generating system", gs.pass(), gs.pass() ? "ok" : "fails at " + at(gs.first_failure())});
    const CheckReport im = imag_relation_check(split, order);
    out.push_back({"imaginary part", im.pass(), im.pass() ? "ok" : "fails at " + at(im.first_failure())});
  }
  {
    Recorder r("even-order reduction");
    const int even = order - order % 2;
    if (even >= 2) {
      try {
        const QuantizationCondition qc = quantization_integrands(even);
        r.require(qc.reconstructs(minus), "bookkeeping");
        for (std::size_t k = 1; k < qc.corrections.size(); ++k)
          r.require(min_e_degree(qc.corrections[k].integrand) >= 1, "E factor at " + at(2 * static_cast<int>(k)));
        const QuantizationCondition qp = quantization_integrands(even, Partner::plus);
        r.require(qp.reconstructs(plus), "plus bookkeeping");
      } catch (const StructuralViolation& e) {
        r.require(false, e.what());
      }
    }
    out.push_back(r.done());
  }
  {
    const WkbSubstitutionReport w = wkb_series_and_substitute(std::min(order, kWkbSubstitutionBound));
    std::string detail = "ok";
    if (!w.series_match) detail = "series mismatch";
    else if (!w.log_terms_ok) detail = "log-derivative terms";
    else if (!w.pass()) detail = "missing certificate";
    out.push_back({"WKB substitution", w.pass(), detail});
  }
  return out;
}

}  // namespace swkb
