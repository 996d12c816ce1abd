#pragma once

// Rigorous bounds on the tails of Poisson-weighted sums
//
//   sum_{k >= k0} f(k) x^k / k!
//
// for f(k) = |P(k)|^n (exact rational majorant) and f(k) = e^{lambda P(k)}
// (high-precision majorant). Both use geometric domination: once the ratio
// of consecutive majorant terms is at most 1/2, the tail is at most twice
// its first term.

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <optional>

#include "dobinski/error.hpp"
#include "dobinski/polynomial.hpp"
#include "dobinski/real.hpp"

namespace dobinski {

inline mpz_class ceil_of(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// For a polynomial with positive leading coefficient and degree >= 1,
/// an integer k_stop such that P(k+1) > P(k) for every real k >= k_stop.
/// Uses a Cauchy root bound on the forward difference.
inline std::size_t monotone_from(const PolynomialQ& p) {
  const PolynomialQ delta = p.forward_difference();
  if (delta.degree() == 0) return 0;
  const mpq_class top = abs(delta.leading());
  mpq_class rest = 0;
  for (std::size_t i = 0; i + 1 < delta.coeffs().size(); ++i) rest += abs(delta.coeffs()[i]);
  mpz_class bound = ceil_of(rest / top);
  if (bound < 1) bound = 1;
  return static_cast<std::size_t>(bound.get_ui()) + 1;
}

/// Poisson weight x^k / k!.
inline mpq_class poisson_weight(const mpq_class& x, std::size_t k) {
  mpq_class w = 1;
  for (std::size_t i = 1; i <= k; ++i) w = w * x / static_cast<unsigned long>(i);
  return w;
}

/// Majorant for |P(k)|^n x^k / k!:  A k^d x^k / k! with A = (sum |c_i|)^n
/// and d = n deg(P), valid for k >= 1.
class PowerTailMajorant {
 public:
  PowerTailMajorant(const PolynomialQ& p, std::size_t n, const mpq_class& x)
      : p_(p), n_(n), x_(x), amplitude_(pow(p.abs_sum(), n)), exponent_(n * p.degree()) {}

  /// True when the majorant ratio is <= 1/2 from index k onward (k >= 1).
  /// The ratio (1 + 1/k)^d x / (k+1) decreases in k, so checking k suffices.
  bool geometric_from(std::size_t k) const {
    if (k == 0) return false;
    const mpz_class kk(static_cast<unsigned long>(k));
    const mpz_class k1 = kk + 1;
    mpz_class lhs_pow, rhs_pow;
    mpz_pow_ui(lhs_pow.get_mpz_t(), k1.get_mpz_t(), exponent_);
    mpz_pow_ui(rhs_pow.get_mpz_t(), kk.get_mpz_t(), exponent_);
    return 2 * x_ * mpq_class(lhs_pow) <= mpq_class(rhs_pow * k1);
  }

  /// 2 A k^d w_k: bounds the tail from k when geometric_from(k).
  mpq_class geometric_bound(std::size_t k, const mpq_class& weight_k) const {
    mpz_class kd;
    mpz_pow_ui(kd.get_mpz_t(), mpz_class(static_cast<unsigned long>(k)).get_mpz_t(), exponent_);
    return 2 * amplitude_ * mpq_class(kd) * weight_k;
  }

  mpq_class term(std::size_t k, const mpq_class& weight_k) const {
    return pow(abs(p_(mpq_class(static_cast<unsigned long>(k)))), n_) * weight_k;
  }

  /// Bound on sum_{k >= k_start} |P(k)|^n x^k / k!. Terms before the
  /// geometric regime are summed exactly.
  mpq_class tail_from(std::size_t k_start) const {
    if (amplitude_ == 0) return 0;
    mpq_class w = poisson_weight(x_, k_start);
    mpq_class explicit_part = 0;
    std::size_t k = k_start;
    while (!geometric_from(k)) {
      explicit_part += term(k, w);
      ++k;
      w = w * x_ / static_cast<unsigned long>(k);
    }
    return explicit_part + geometric_bound(k, w);
  }

  bool vanishes() const { return amplitude_ == 0; }

 private:
  PolynomialQ p_;
  std::size_t n_;
  mpq_class x_;
  mpq_class amplitude_;
  unsigned long exponent_;
};

/// Majorant for e^{g(k)} x^k / k! where g = lambda P.
///
/// deg g <= 1, g = a k + b: terms are e^b (x e^a)^k / k!, geometric once
/// 2 x e^a <= k + 1.
/// deg g >= 2 with negative leading coefficient: e^{g} is nonincreasing
/// past monotone_from(-g), so the tail is at most e^{g(k0)} * 2 w_{k0}
/// once 2x <= k0 + 1.
/// deg g >= 2 with positive leading coefficient diverges.
class ExpTailMajorant {
 public:
  ExpTailMajorant(const PolynomialQ& p, const mpq_class& lambda, const mpq_class& x, long bits)
      : g_(p * lambda), x_(x), bits_(bits) {
    if (g_.degree() >= 2) {
      if (g_.leading() > 0)
        fail(ErrorKind::divergence, "terms e^{lambda P(k)} x^k/k! grow without bound (deg P >= 2, lambda * lead(P) > 0)");
      decreasing_from_ = monotone_from(-g_);
      growth_ = Real(2L, bits_) * Real(x_, bits_);
    } else {
      growth_ = inflate(Real(2L, bits_) * Real(x_, bits_) * exp_of(g_[1], bits_));
    }
  }

  const PolynomialQ& exponent() const { return g_; }

  /// Index past which consecutive terms can no longer grow.
  std::size_t growth_ends() const {
    return decreasing_from_ + static_cast<std::size_t>(std::ceil(growth_.to_double()));
  }

  bool geometric_from(std::size_t k) const {
    if (k < decreasing_from_) return false;
    return Real(static_cast<long>(k + 1), bits_) >= growth_;
  }

  Real term(std::size_t k, const mpq_class& weight_k) const {
    return exp_of(g_(mpq_class(static_cast<unsigned long>(k))), bits_) * Real(weight_k, bits_);
  }

  Real geometric_bound(std::size_t k, const mpq_class& weight_k) const {
    return inflate(Real(2L, bits_) * term(k, weight_k));
  }

  Real tail_from(std::size_t k_start) const {
    mpq_class w = poisson_weight(x_, k_start);
    Real explicit_part(bits_);
    std::size_t k = k_start;
    while (!geometric_from(k)) {
      explicit_part += term(k, w);
      ++k;
      w = w * x_ / static_cast<unsigned long>(k);
    }
    return inflate(explicit_part + geometric_bound(k, w));
  }

 private:
  PolynomialQ g_;
  mpq_class x_;
  long bits_;
  std::size_t decreasing_from_ = 0;
  Real growth_;
};

}  // namespace dobinski
