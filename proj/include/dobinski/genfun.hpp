#pragma once

// Exponential and ordinary generating functions of Bell-type sequences,
// evaluated in the interchanged-summation form
//
//   EGF(lambda) = sum_k e^{lambda P(k)} / D(k)
//   OGF(lambda) = sum_k 1 / (D(k) (1 - lambda P(k)))

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>

#include "dobinski/dobinski_series.hpp"
#include "dobinski/error.hpp"
#include "dobinski/polynomial.hpp"
#include "dobinski/real.hpp"
#include "dobinski/tail_bound.hpp"

namespace dobinski {

enum class GenFunKind { egf, ogf };

struct GenFunSpec {
  SeriesSpec spec;
  GenFunKind kind = GenFunKind::egf;
};

/// Consecutive growing terms, past the point where growth is impossible,
/// that abort an EGF summation as divergent.
inline constexpr std::size_t kGrowthStreakLimit = 50;

inline EvalResult egf_eval(const SeriesSpec& spec, const mpq_class& lambda, double rel_tol, const EvalOptions& opt = {}) {
  detail::check_rel_tol(rel_tol);
  spec.validate();
  const long work = opt.bits + 32;
  const ExpTailMajorant majorant(spec.p, lambda, spec.x, work);
  const Real tol(rel_tol, work);
  const Real floor(detail::absolute_floor(opt.bits), work);
  const std::size_t watch_from = majorant.growth_ends();

  Real sum(work);
  Real previous(work);
  std::size_t streak = 0;
  mpq_class w = 1;
  for (std::size_t k = 0;; ++k) {
    if (k >= opt.max_terms) detail::cap_exceeded(opt.max_terms);
    Real term = majorant.term(k, w);
    if (k > watch_from && term > previous) {
      if (++streak >= kGrowthStreakLimit)
        fail(ErrorKind::divergence, "EGF terms grew for " + std::to_string(streak) + " consecutive k", k);
    } else {
      streak = 0;
    }
    sum += term;
    previous = std::move(term);
    w = w * spec.x / static_cast<unsigned long>(k + 1);
    if (!majorant.geometric_from(k + 1)) continue;
    const Real bound = majorant.geometric_bound(k + 1, w);
    const Real mag = abs(sum);
    if (bound <= tol * (mag > floor ? mag : floor)) {
      const Real inv = spec.inverse_scale(work);
      return EvalResult{round_to(sum * inv, opt.bits), round_to(inflate(bound * inv), opt.bits, MPFR_RNDU), k + 1,
                        opt.bits};
    }
  }
}

struct OgfOptions {
  EvalOptions eval;
  double pole_tol = 1e-9;
};

inline EvalResult ogf_eval(const SeriesSpec& spec, const mpq_class& lambda, double rel_tol, const OgfOptions& opt = {}) {
  detail::check_rel_tol(rel_tol);
  spec.validate();
  const long bits = opt.eval.bits;
  const PolynomialQ g = spec.p * lambda;
  const mpq_class pole_tol = to_rational(opt.pole_tol);
  const PowerTailMajorant mass(PolynomialQ::constant(1), 0, spec.x);
  const mpq_class tol = to_rational(rel_tol);
  const mpq_class floor = detail::absolute_floor(bits);

  // Past factor_from, |1 - lambda P(k)|^{-1} <= factor_cap.
  std::size_t factor_from = 0;
  mpq_class factor_cap = 1;
  if (g.is_constant()) {
    const mpq_class denom = 1 - g[0];
    if (abs(denom) < pole_tol) fail(ErrorKind::pole, "pole at k=0: 1 - lambda P(k) vanishes", 0);
    factor_cap = 1 / abs(denom);
  } else {
    const PolynomialQ rising = g.leading() > 0 ? g : -g;
    std::size_t k = monotone_from(rising);
    while (rising(mpq_class(static_cast<unsigned long>(k))) < 2) ++k;
    factor_from = k;
  }

  mpq_class sum = 0;
  mpq_class w = 1;
  for (std::size_t k = 0;; ++k) {
    if (k >= opt.eval.max_terms) detail::cap_exceeded(opt.eval.max_terms);
    const mpq_class denom = 1 - g(mpq_class(static_cast<unsigned long>(k)));
    if (abs(denom) < pole_tol)
      fail(ErrorKind::pole, "pole at k=" + std::to_string(k) + ": |1 - lambda P(k)| below pole_tol", k);
    sum += w / denom;
    const std::size_t next = k + 1;
    w = w * spec.x / static_cast<unsigned long>(next);
    if (next < factor_from || !mass.geometric_from(next)) continue;
    const mpq_class bound = factor_cap * mass.geometric_bound(next, w);
    if (bound <= tol * (abs(sum) > floor ? abs(sum) : floor)) {
      const Real inv = spec.inverse_scale(bits);
      return EvalResult{Real(sum, bits) * inv, inflate(Real::upper(bound, bits) * inv), next, bits};
    }
  }
}

inline EvalResult evaluate(const GenFunSpec& gf, const mpq_class& lambda, double rel_tol, const EvalOptions& opt = {}) {
  if (gf.kind == GenFunKind::egf) return egf_eval(gf.spec, lambda, rel_tol, opt);
  return ogf_eval(gf.spec, lambda, rel_tol, OgfOptions{opt});
}

/// e^{x (e^lambda - 1)}, or e^{x (e^lambda - 1 - lambda)} for the
/// singleton-free variant.
inline Real egf_closed_form_bell(const mpq_class& lambda, const mpq_class& x, bool restricted = false,
                                 long bits = kDefaultBits) {
  const long work = bits + 32;
  Real inner = exp_of(lambda, work) - Real(1L, work);
  if (restricted) inner -= Real(lambda, work);
  return round_to(exp(Real(x, work) * inner), bits);
}

/// Truncated left-hand side sum_{n<=m_max} values[n] lambda^n / n!.
inline Real egf_partial_from_numbers(std::span<const mpq_class> values, const mpq_class& lambda, std::size_t m_max,
                                     long bits = kDefaultBits) {
  if (values.size() < m_max + 1) fail(ErrorKind::invalid_argument, "need at least m_max + 1 values");
  mpq_class sum = 0;
  mpq_class factor = 1;  // lambda^n / n!
  for (std::size_t n = 0; n <= m_max; ++n) {
    if (n > 0) factor = factor * lambda / static_cast<unsigned long>(n);
    sum += values[n] * factor;
  }
  return Real(sum, bits);
}

}  // namespace dobinski
