#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "dobinski/error.hpp"
#include "dobinski/exact_core.hpp"
#include "dobinski/polynomial.hpp"
#include "dobinski/real.hpp"
#include "dobinski/tail_bound.hpp"

namespace dobinski {

/// A Dobinski sum  sum_k P(k)^n / D(k)  with D(k) = s k! x^{-k}.
/// With no explicit scale, s = e^x and the weights 1/D(k) form a Poisson
/// distribution of mean x.
struct SeriesSpec {
  PolynomialQ p;
  mpq_class x = 1;
  std::optional<Real> explicit_scale;

  static SeriesSpec automatic(PolynomialQ p, mpq_class x) {
    SeriesSpec s{std::move(p), std::move(x), std::nullopt};
    s.validate();
    return s;
  }
  static SeriesSpec with_scale(PolynomialQ p, mpq_class x, Real scale) {
    SeriesSpec s{std::move(p), std::move(x), std::move(scale)};
    s.validate();
    return s;
  }

  bool is_auto() const { return !explicit_scale.has_value(); }

  void validate() const {
    if (x <= 0) fail(ErrorKind::invalid_argument, "comb intensity x must be positive");
    if (explicit_scale && explicit_scale->sign() <= 0)
      fail(ErrorKind::invalid_argument, "explicit scale s must be positive");
  }

  /// 1/s: e^{-x} under automatic scaling.
  Real inverse_scale(long bits) const {
    if (explicit_scale) return Real(1L, bits) / *explicit_scale;
    return exp_of(-x, bits);
  }
};

struct EvalResult {
  Real value;
  Real trunc_bound;
  std::size_t terms_used = 0;
  long precision_bits = kDefaultBits;
};

struct EvalOptions {
  long bits = kDefaultBits;
  std::size_t max_terms = 100000;
};

namespace detail {

inline void check_rel_tol(double rel_tol) {
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0)) fail(ErrorKind::invalid_argument, "rel_tol must lie in (0, 1)");
}

/// The absolute floor of the stopping rule, 2^{-bits/2}. Stops sums whose
/// exact value is zero (e.g. restricted Bell at n = 1).
inline mpq_class absolute_floor(long bits) {
  mpq_class f = 1;
  mpz_mul_2exp(f.get_den_mpz_t(), f.get_den_mpz_t(), static_cast<mp_bitcnt_t>(bits / 2));
  return f;
}

[[noreturn]] inline void cap_exceeded(std::size_t cap) {
  fail(ErrorKind::cap_exceeded, "tail bound not met within " + std::to_string(cap) + " terms");
}

}  // namespace detail

/// sum_{k=0..K} P(k)^n x^k / (s k!) with K chosen so the rigorous tail
/// bound is at most rel_tol * max(|partial sum|, 2^{-bits/2}). The partial
/// sum is exact; the only rounding is the final multiplication by 1/s.
inline EvalResult eval_bell_type(const SeriesSpec& spec, std::size_t n, double rel_tol, const EvalOptions& opt = {}) {
  detail::check_rel_tol(rel_tol);
  spec.validate();
  const PowerTailMajorant majorant(spec.p, n, spec.x);
  const mpq_class tol = to_rational(rel_tol);
  const mpq_class floor = detail::absolute_floor(opt.bits);

  mpq_class sum = 0;
  mpq_class w = 1;  // x^k / k!
  std::size_t k = 0;
  for (;; ++k) {
    if (k >= opt.max_terms) detail::cap_exceeded(opt.max_terms);
    const mpq_class pk = spec.p(mpq_class(static_cast<unsigned long>(k)));
    if (pk != 0 || n == 0) sum += pow(pk, n) * w;
    const std::size_t next = k + 1;
    w = w * spec.x / static_cast<unsigned long>(next);
    if (majorant.vanishes()) break;
    if (!majorant.geometric_from(next)) continue;
    const mpq_class bound = majorant.geometric_bound(next, w);
    const mpq_class scale = abs(sum) > floor ? abs(sum) : floor;
    if (bound <= tol * scale) {
      const Real inv = spec.inverse_scale(opt.bits);
      EvalResult r{Real(sum, opt.bits) * inv, inflate(Real::upper(bound, opt.bits) * inv), k + 1, opt.bits};
      return r;
    }
  }
  // The zero polynomial with n >= 1: every term vanishes.
  return EvalResult{Real(sum, opt.bits) * spec.inverse_scale(opt.bits), Real(opt.bits), k + 1, opt.bits};
}

/// Bell-type polynomial of a Hamiltonian evaluated through its Dobinski form.
inline EvalResult eval_bell_type_poly(const HamiltonianSpec& h, std::size_t n, const mpq_class& x, double rel_tol,
                                      const EvalOptions& opt = {}) {
  return eval_bell_type(SeriesSpec::automatic(h.poly(), x), n, rel_tol, opt);
}

struct CrossCheckReport {
  mpq_class exact;
  EvalResult series;
  Real discrepancy;
  Real allowance;
  bool passed = false;
};

/// Compares the series route against the exact normal-ordering route.
/// Passes iff |series - exact| <= trunc_bound + rounding allowance.
inline CrossCheckReport cross_check(const HamiltonianSpec& h, std::size_t n, const mpq_class& x, double rel_tol,
                                    const EvalOptions& opt = {}) {
  CrossCheckReport report{bell_type_eval(h, n, x), eval_bell_type_poly(h, n, x, rel_tol, opt), Real(opt.bits),
                          Real(opt.bits), false};
  const long wide = opt.bits + 64;
  const Real exact(report.exact, wide);
  report.discrepancy = abs(report.series.value - exact);
  report.allowance = report.series.trunc_bound + rounding_allowance(exact, opt.bits) +
                     rounding_allowance(report.series.value, opt.bits);
  report.passed = report.discrepancy <= report.allowance;
  return report;
}

}  // namespace dobinski
