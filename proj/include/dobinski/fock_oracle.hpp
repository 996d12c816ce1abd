#pragma once

// Verification against a truncated Fock space. Every operator in scope is a
// function of the number operator, so only diagonal elements are needed:
//   <m| (a^dagger)^k a^k |m> = m!/(m-k)!
//   |<m|z>|^2 = e^{-|z|^2} |z|^{2m} / m!

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "dobinski/dobinski_series.hpp"
#include "dobinski/error.hpp"
#include "dobinski/exact_core.hpp"
#include "dobinski/real.hpp"
#include "dobinski/tail_bound.hpp"

namespace dobinski {

/// Number states |0> .. |dim-1>.
class FockTruncation {
 public:
  explicit FockTruncation(std::size_t dim) : dim_(dim) {
    if (dim_ < 1) fail(ErrorKind::invalid_argument, "Fock truncation needs dim >= 1");
  }

  /// Smallest dimension whose omitted coherent-state tail, weighted by m^d
  /// for the given polynomial growth degree d, is below 1e-16.
  static FockTruncation for_coherent(const mpq_class& z_sq, std::size_t growth_degree = 0) {
    const PowerTailMajorant tail(PolynomialQ::identity(), growth_degree, z_sq);
    const mpq_class limit = to_rational(1e-16);
    const Real decay = exp_of(-z_sq, 64);
    std::size_t m = 1;
    while (Real::upper(tail.tail_from(m), 64) * decay >= Real(limit, 64)) ++m;
    return FockTruncation(m);
  }

  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
};

/// Photon-number distribution of the coherent state |z>, truncated.
class CoherentVector {
 public:
  CoherentVector(const mpq_class& z_sq, FockTruncation trunc, long bits = kDefaultBits)
      : z_sq_(z_sq), bits_(bits) {
    if (z_sq_ <= 0) fail(ErrorKind::invalid_argument, "|z|^2 must be positive");
    raw_.reserve(trunc.dim());
    mpq_class w = 1;
    for (std::size_t m = 0; m < trunc.dim(); ++m) {
      raw_.push_back(w);
      w = w * z_sq_ / static_cast<unsigned long>(m + 1);
    }
    raw_defect_ = PowerTailMajorant(PolynomialQ::constant(1), 0, z_sq_).tail_from(trunc.dim());
  }

  const mpq_class& z_sq() const { return z_sq_; }
  std::size_t dim() const { return raw_.size(); }
  long bits() const { return bits_; }
  /// Exact |z|^{2m}/m!, without the e^{-|z|^2} normalization.
  const std::vector<mpq_class>& raw_weights() const { return raw_; }

  Real normalization() const { return exp_of(-z_sq_, bits_); }
  Real component(std::size_t m) const { return Real(raw_[m], bits_) * normalization(); }
  Real mass() const {
    mpq_class s = 0;
    for (const auto& w : raw_) s += w;
    return Real(s, bits_) * normalization();
  }
  Real mass_defect() const { return inflate(Real::upper(raw_defect_, bits_) * normalization()); }

 private:
  mpq_class z_sq_;
  long bits_;
  std::vector<mpq_class> raw_;
  mpq_class raw_defect_;
};

struct NormalFormReport {
  bool passed = false;
  std::size_t checked = 0;
  std::optional<std::size_t> first_failure;  // smallest m where the identity breaks
};

/// Checks H(m)^n == sum_k S_a(n,k) m!/(m-k)! exactly for 0 <= m <= m_max.
inline NormalFormReport verify_normal_form(const NormalForm& nf, const HamiltonianSpec& h, std::size_t m_max) {
  NormalFormReport report;
  for (std::size_t m = 0; m <= m_max; ++m) {
    ++report.checked;
    const mpq_class lhs = pow(h.poly()(mpq_class(static_cast<unsigned long>(m))), nf.power);
    if (lhs != nf.diagonal(m)) {
      report.first_failure = m;
      return report;
    }
  }
  report.passed = true;
  return report;
}

inline NormalFormReport verify_normal_form(const HamiltonianSpec& h, std::size_t n, std::size_t m_max) {
  if (m_max < n * h.n_deg()) fail(ErrorKind::invalid_argument, "m_max must be at least n * deg(H)");
  return verify_normal_form(stirling_type(h, n), h, m_max);
}

/// <z|(a^dagger a)^n|z> on the truncated space, with the omitted tail bounded.
inline EvalResult expect_number_power(std::size_t n, const mpq_class& z_sq, FockTruncation trunc,
                                      long bits = kDefaultBits) {
  const CoherentVector psi(z_sq, trunc, bits);
  mpq_class raw = 0;
  for (std::size_t m = 0; m < psi.dim(); ++m) {
    if (m == 0 && n > 0) continue;
    raw += psi.raw_weights()[m] * pow(mpq_class(static_cast<unsigned long>(m)), n);
  }
  const mpq_class tail = PowerTailMajorant(PolynomialQ::identity(), n, z_sq).tail_from(psi.dim());
  const Real norm = psi.normalization();
  return EvalResult{Real(raw, bits) * norm, inflate(Real::upper(tail, bits) * norm), psi.dim(), bits};
}

/// <z|e^{lambda H(a^dagger a)}|z> on the truncated space.
inline EvalResult coherent_expect_exp(const HamiltonianSpec& h, const mpq_class& lambda, const mpq_class& z_sq,
                                      FockTruncation trunc, long bits = kDefaultBits) {
  const long work = bits + 32;
  const CoherentVector psi(z_sq, trunc, work);
  const ExpTailMajorant majorant(h.poly(), lambda, z_sq, work);
  Real sum(work);
  for (std::size_t m = 0; m < psi.dim(); ++m) sum += majorant.term(m, psi.raw_weights()[m]);
  const Real norm = psi.normalization();
  return EvalResult{round_to(sum * norm, bits), round_to(inflate(majorant.tail_from(psi.dim()) * norm), bits, MPFR_RNDU),
                    psi.dim(), bits};
}

}  // namespace dobinski
