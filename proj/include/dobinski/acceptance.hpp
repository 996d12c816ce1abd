#pragma once

// End-to-end acceptance criteria. Each criterion runs at its pinned
// tolerance, is timed against its runtime limit, and reports one line.
// Shared by the acceptance test binary and `dobinski verify`.

#include <gmpxx.h>

#include <array>
#include <chrono>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dobinski/dobinski_series.hpp"
#include "dobinski/error.hpp"
#include "dobinski/exact_core.hpp"
#include "dobinski/fock_oracle.hpp"
#include "dobinski/genfun.hpp"
#include "dobinski/moment_comb.hpp"
#include "dobinski/oracles.hpp"
#include "dobinski/polynomial.hpp"
#include "dobinski/real.hpp"

namespace dobinski::acceptance {

enum class Grid { small, full };

/// Runs a CLI invocation in-process: (args, stdout, stderr) -> exit code.
using CliRunner = std::function<int(const std::vector<std::string>&, std::ostream&, std::ostream&)>;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

namespace detail {

/// Collects failures for one criterion; the first few are kept for the report.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    if (ok()) return std::to_string(checks_) + " checks";
    return std::to_string(failures_) + "/" + std::to_string(checks_) + " failed: " + notes_;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string notes_;
};

inline std::string str(const Real& r, int digits = 6) { return r.to_string(digits); }

inline Real diff(const Real& a, const mpq_class& exact) { return abs(a - Real(exact, a.bits() + 64)); }

inline const std::array<mpq_class, 3>& x_grid() {
  static const std::array<mpq_class, 3> xs{mpq_class(1, 2), mpq_class(1), mpq_class(3)};
  return xs;
}

/// Random Hamiltonian of degree <= 3 with coefficients p/q, |p|, q <= 9.
inline HamiltonianSpec random_hamiltonian(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> degree(0, 3), num(-9, 9), den(1, 9);
  while (true) {
    const int d = degree(rng);
    std::vector<mpq_class> c(static_cast<std::size_t>(d) + 1);
    for (auto& ci : c) {
      ci = mpq_class(num(rng), den(rng));
      ci.canonicalize();
    }
    if (c.back() == 0) c.back() = mpq_class(1, den(rng));
    PolynomialQ p(std::move(c));
    if (!p.is_zero()) return HamiltonianSpec(std::move(p));
  }
}

}  // namespace detail

inline CriterionResult bell_sequence() {
  detail::Checker check;
  const std::array<long, 8> listed{1, 1, 2, 5, 15, 52, 203, 877};
  for (std::size_t n = 0; n < listed.size(); ++n)
    check.expect(bell_number(n) == listed[n], "B(" + std::to_string(n) + ") = " + bell_number(n).get_str());
  for (std::size_t n = 0; n <= 10; ++n) {
    const auto counts = oracle::enumerate_partitions(n);
    check.expect(bell_number(n) == counts.total, "brute force disagrees at n=" + std::to_string(n));
  }
  return {1, "Bell sequence 1,1,2,5,15,52,203,877; brute force n<=10", check.ok(), check.summary(), 0, 1.0};
}

inline CriterionResult dobinski_agreement() {
  detail::Checker check;
  for (const auto& x : detail::x_grid()) {
    const auto spec = SeriesSpec::automatic(PolynomialQ::identity(), x);
    for (std::size_t n = 0; n <= 20; ++n) {
      const mpq_class exact = bell_polynomial(n)(x);
      const auto r = eval_bell_type(spec, n, 1e-12);
      const Real err = detail::diff(r.value, exact);
      const Real rel = err / Real(exact, r.value.bits());
      const std::string where = "n=" + std::to_string(n) + " x=" + x.get_str();
      check.expect(rel <= Real(1e-12, 64), where + " rel err " + detail::str(rel));
      check.expect(err <= r.trunc_bound, where + " err " + detail::str(err) + " > bound " + detail::str(r.trunc_bound));
    }
  }
  return {2, "Dobinski series vs exact Bell polynomials, n<=20, x in {1/2,1,3}", check.ok(), check.summary(), 0, 5.0};
}

inline CriterionResult restricted_bell_routes() {
  detail::Checker check;
  const std::array<long, 8> listed{1, 0, 1, 1, 4, 11, 41, 162};
  const auto spec = SeriesSpec::automatic(PolynomialQ({-1, 1}), 1);
  for (std::size_t n = 0; n < listed.size(); ++n) {
    const std::string where = "n=" + std::to_string(n);
    check.expect(restricted_bell(n) == listed[n], where + " exact route " + restricted_bell(n).get_str());
    const auto r = eval_bell_type(spec, n, 1e-12);
    const Real err = detail::diff(r.value, listed[n]);
    check.expect(err <= r.trunc_bound + rounding_allowance(r.value, r.precision_bits),
                 where + " series " + detail::str(r.value, 20));
    mpfr_t rounded;
    mpfr_init2(rounded, r.value.bits());
    mpfr_round(rounded, r.value.get());
    check.expect(mpfr_cmp_si(rounded, listed[n]) == 0, where + " series does not round to the listed value");
    mpfr_clear(rounded);
  }
  return {3, "Restricted Bell 1,0,1,1,4,11,41,162 by series and exact routes", check.ok(), check.summary(), 0, 1.0};
}

inline CriterionResult stirling_type_cross_route(Grid grid) {
  detail::Checker check;
  std::mt19937_64 rng(20050301);
  const std::size_t specs = grid == Grid::full ? 120 : 50;
  for (std::size_t i = 0; i < specs; ++i) {
    const HamiltonianSpec h = detail::random_hamiltonian(rng);
    for (std::size_t n = 0; n <= 4; ++n) {
      const std::string where = "H=" + std::to_string(i) + " n=" + std::to_string(n);
      const auto report = verify_normal_form(h, n, 40);
      check.expect(report.passed, where + " normal form fails at m=" +
                                      std::to_string(report.first_failure.value_or(0)));
      for (const auto& x : detail::x_grid()) {
        const auto cc = cross_check(h, n, x, 1e-12);
        check.expect(cc.passed, where + " x=" + x.get_str() + " discrepancy " + detail::str(cc.discrepancy));
      }
    }
  }
  const HamiltonianSpec square(PolynomialQ({0, 0, 1}));
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto nf = stirling_type(square, n);
    const auto& row = StirlingTriangle::shared().row(2 * n);
    bool same = nf.coeffs.size() == row.size();
    for (std::size_t k = 0; same && k < row.size(); ++k) same = nf.coeffs[k] == row[k];
    check.expect(same, "stirling_type(m^2, " + std::to_string(n) + ") != row " + std::to_string(2 * n));
  }
  return {4, "Stirling-type normal forms: " + std::to_string(specs) + " random H, exact oracle and cross-check",
          check.ok(), check.summary(), 0, 30.0};
}

inline CriterionResult moment_problem() {
  detail::Checker check;
  const auto comb = build_comb(SeriesSpec::automatic(PolynomialQ::identity(), 1), 1e-12);
  const auto dist = check_distribution(comb, 1e-12);
  check.expect(dist.passed, "Bell comb mass " + detail::str(dist.total_mass, 20));
  for (std::size_t n = 0; n <= 15; ++n) {
    const auto m = moment(comb, n);
    const Real err = detail::diff(m.value, bell_number(n));
    check.expect(err <= m.trunc_bound + rounding_allowance(m.value, m.precision_bits),
                 "moment " + std::to_string(n) + " err " + detail::str(err) + " bound " + detail::str(m.trunc_bound));
  }
  check.expect(classify(PolynomialQ::identity()) == MomentProblem::stieltjes, "P=k not Stieltjes");
  check.expect(classify(PolynomialQ({-1, 1})) == MomentProblem::hamburger, "P=k-1 not Hamburger");
  for (const auto& c : {mpq_class(5), mpq_class(0), mpq_class(-3, 2)})
    check.expect(classify(PolynomialQ::constant(c)) == MomentProblem::hausdorff, "constant " + c.get_str());
  return {5, "Dirac comb: normalization, moments n<=15, classification", check.ok(), check.summary(), 0, 5.0};
}

inline CriterionResult generating_functions() {
  detail::Checker check;
  const std::array<mpq_class, 4> lambdas{mpq_class(-1), mpq_class(0), mpq_class(1, 2), mpq_class(1)};
  const Real tol(1e-10, 64);
  for (const bool restricted : {false, true}) {
    const PolynomialQ p = restricted ? PolynomialQ({-1, 1}) : PolynomialQ::identity();
    for (const auto& x : detail::x_grid()) {
      const auto spec = SeriesSpec::automatic(p, x);
      for (const auto& lambda : lambdas) {
        const auto r = egf_eval(spec, lambda, 1e-16);
        // The shifted series sum_k e^{lambda(k-1)} x^k/k! picks up a factor e^{-lambda}.
        const Real closed = restricted ? exp_of(-lambda, 256) * egf_closed_form_bell(lambda, x) : egf_closed_form_bell(lambda, x);
        check.expect(abs(r.value - closed) <= tol, std::string(restricted ? "restricted" : "bell") +
                                                       " x=" + x.get_str() + " lambda=" + lambda.get_str());
        if (restricted && x == 1)
          check.expect(abs(r.value - egf_closed_form_bell(lambda, x, true)) <= tol,
                       "singleton-free closed form, lambda=" + lambda.get_str());
      }
    }
  }
  const mpq_class tenth(1, 10);
  std::vector<mpq_class> bell, restricted;
  for (std::size_t n = 0; n <= 24; ++n) {
    bell.emplace_back(bell_number(n));
    restricted.emplace_back(restricted_bell(n));
  }
  check.expect(abs(egf_partial_from_numbers(bell, tenth, 24) - egf_closed_form_bell(tenth, 1)) <= tol,
               "25-term Bell EGF at 0.1");
  check.expect(abs(egf_partial_from_numbers(restricted, tenth, 24) - egf_closed_form_bell(tenth, 1, true)) <= tol,
               "25-term restricted EGF at 0.1");

  const mpq_class h = to_rational(1e-6);
  for (const auto& x : detail::x_grid()) {
    const auto spec = SeriesSpec::automatic(PolynomialQ::identity(), x);
    const Real slope = (egf_eval(spec, h, 1e-16).value - egf_eval(spec, -h, 1e-16).value) / Real(2 * h, 256);
    const mpq_class exact = bell_type_eval(HamiltonianSpec(PolynomialQ::identity()), 1, x);
    const Real rel = abs(slope - Real(exact, 256)) / Real(exact, 256);
    check.expect(rel <= Real(1e-5, 64), "EGF slope at 0, x=" + x.get_str() + " rel " + detail::str(rel));
  }
  return {6, "Exponential generating functions vs closed forms", check.ok(), check.summary(), 0, 5.0};
}

inline CriterionResult ordinary_generating_function() {
  detail::Checker check;
  const auto spec = SeriesSpec::automatic(PolynomialQ::identity(), 1);
  const auto r = ogf_eval(spec, mpq_class(-1, 2), 1e-14);
  const Real direct = oracle::direct_poisson_sum(
      [](std::size_t k) { return Real(1L, 256) / (Real(1L, 256) + Real(static_cast<long>(k), 256) / Real(2L, 256)); },
      Real(1L, 256), 10000);
  check.expect(abs(r.value - direct) <= Real(1e-12, 64), "OGF(-1/2) " + detail::str(r.value, 20) + " vs direct " +
                                                            detail::str(direct, 20));
  for (long j = 1; j <= 3; ++j) {
    bool fired = false;
    try {
      ogf_eval(spec, mpq_class(1, j), 1e-14);
    } catch (const Error& e) {
      fired = e.kind() == ErrorKind::pole && e.index() == static_cast<std::size_t>(j);
    }
    check.expect(fired, "no pole reported at k=" + std::to_string(j) + " for lambda=1/" + std::to_string(j));
  }
  for (const auto& lambda : {mpq_class(2, 5), mpq_class(-1, 2), mpq_class(0)}) {
    bool fired = false;
    try {
      ogf_eval(spec, lambda, 1e-14);
    } catch (const Error&) {
      fired = true;
    }
    check.expect(!fired, "spurious pole at lambda=" + lambda.get_str());
  }
  return {7, "Ordinary generating function and pole rejection", check.ok(), check.summary(), 0, 5.0};
}

inline CriterionResult coherent_state_checks() {
  detail::Checker check;
  const std::array<mpq_class, 3> zs{mpq_class(1, 2), mpq_class(1), mpq_class(4)};
  const Real tol(1e-10, 64);
  const FockTruncation trunc(120);
  for (const auto& z : zs) {
    for (std::size_t n = 0; n <= 8; ++n) {
      const auto r = expect_number_power(n, z, trunc);
      check.expect(detail::diff(r.value, bell_polynomial(n)(z)) <= tol,
                   "<z|(a+a)^" + std::to_string(n) + "|z> at |z|^2=" + z.get_str());
    }
  }
  const std::array<PolynomialQ, 6> hamiltonians{PolynomialQ::identity(), PolynomialQ({-1, 1}),
                                                PolynomialQ({mpq_class(1, 2), 2}), PolynomialQ({0, 0, 1}),
                                                PolynomialQ({0, 1, 1}), PolynomialQ({0, -1, 0, mpq_class(1, 3)})};
  for (const auto& p : hamiltonians) {
    const HamiltonianSpec h(p);
    std::vector<mpq_class> lambdas{mpq_class(-1), mpq_class(-1, 2), mpq_class(0)};
    if (p.degree() <= 1) {
      lambdas.emplace_back(1, 2);
      lambdas.emplace_back(1);
    }
    for (const auto& z : zs) {
      for (const auto& lambda : lambdas) {
        const auto fock = coherent_expect_exp(h, lambda, z, trunc);
        const auto series = egf_eval(SeriesSpec::automatic(p, z), lambda, 1e-40);
        check.expect(abs(fock.value - series.value) <= tol,
                     "H=" + std::to_string(&p - hamiltonians.data()) + " |z|^2=" + z.get_str() + " lambda=" +
                         lambda.get_str() + " diff " + detail::str(abs(fock.value - series.value)));
      }
    }
  }
  return {8, "Coherent-state expectations vs Bell polynomials and EGF", check.ok(), check.summary(), 0, 10.0};
}

inline CriterionResult figure_comb(const CliRunner& run) {
  detail::Checker check;
  std::ostringstream out, err;
  const int code = run({"comb", "--poly", "1:1", "--x", "1", "--ymin", "0", "--ymax", "5"}, out, err);
  check.expect(code == 0, "exit code " + std::to_string(code) + ": " + err.str());
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  check.expect(line == "location,weight", "header '" + line + "'");
  std::vector<std::pair<Real, Real>> rows;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      check.expect(false, "malformed row '" + line + "'");
      continue;
    }
    rows.emplace_back(Real::parse(line.substr(0, comma), 256), Real::parse(line.substr(comma + 1), 256));
  }
  check.expect(rows.size() == 6, std::to_string(rows.size()) + " atoms instead of 6");
  Real factorial(1L, 256);
  const Real inv_e = exp(Real(-1L, 256));
  const Real tight(1e-70, 256);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k > 0) factorial *= Real(static_cast<long>(k), 256);
    const auto& [loc, w] = rows[k];
    check.expect(loc == Real(static_cast<long>(k), 256), "atom " + std::to_string(k) + " at " + loc.to_string(10));
    check.expect(abs(w - inv_e / factorial) <= tight * (inv_e / factorial), "weight of atom " + std::to_string(k));
    if (k > 0) {
      const Real ratio = w / rows[k - 1].second;
      check.expect(abs(ratio * Real(static_cast<long>(k), 256) - Real(1L, 256)) <= tight,
                   "weight ratio at " + std::to_string(k));
    }
  }
  return {9, "Bell comb atoms on [0,5] via `comb --poly 1:1 --x 1 --ymin 0 --ymax 5`", check.ok(), check.summary(),
          0, 1.0};
}

/// Runs every criterion in order. Runtime limits are part of each verdict.
inline std::vector<CriterionResult> run_all(Grid grid, const CliRunner& run) {
  std::vector<std::function<CriterionResult()>> criteria{
      bell_sequence,
      dobinski_agreement,
      restricted_bell_routes,
      [grid] { return stirling_type_cross_route(grid); },
      moment_problem,
      generating_functions,
      ordinary_generating_function,
      coherent_state_checks,
      [&run] { return figure_comb(run); },
  };
  std::vector<CriterionResult> results;
  for (auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = criterion();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
      r.id = static_cast<int>(results.size()) + 1;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.limit_seconds > 0 && r.seconds > r.limit_seconds) {
      r.passed = false;
      r.detail += "; exceeded runtime limit";
    }
    results.push_back(std::move(r));
  }
  return results;
}

/// One line per criterion; returns true iff all passed.
inline bool print_report(std::ostream& os, const std::vector<CriterionResult>& results) {
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    os << (r.passed ? "PASS" : "FAIL") << "  C" << r.id << "  " << r.title << "  [" << std::fixed
       << std::setprecision(3) << r.seconds << " s / " << std::setprecision(0) << r.limit_seconds << " s]  "
       << r.detail << '\n';
    os.unsetf(std::ios::floatfield);
  }
  os << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
  return all;
}

}  // namespace dobinski::acceptance
