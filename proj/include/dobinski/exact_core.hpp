#pragma once

// Exact Stirling, Bell and Stirling-type numbers. Everything in this header
// is arbitrary precision: integers are mpz_class, rationals mpq_class.

#include <gmpxx.h>

#include <cstddef>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "dobinski/error.hpp"
#include "dobinski/polynomial.hpp"

namespace dobinski {

/// Lazily grown triangle of Stirling numbers of the second kind.
/// Rows are immutable once published; concurrent readers never observe a
/// partially built row.
class StirlingTriangle {
 public:
  StirlingTriangle() { rows_.push_back({mpz_class(1)}); }

  StirlingTriangle(const StirlingTriangle&) = delete;
  StirlingTriangle& operator=(const StirlingTriangle&) = delete;

  /// Process-wide instance shared by the free functions below.
  static StirlingTriangle& shared() {
    static StirlingTriangle instance;
    return instance;
  }

  /// Row n, i.e. S(n,0), ..., S(n,n). The reference stays valid for the
  /// lifetime of the triangle.
  const std::vector<mpz_class>& row(std::size_t n) {
    {
      std::shared_lock lock(mutex_);
      if (n < rows_.size()) return rows_[n];
    }
    std::unique_lock lock(mutex_);
    while (rows_.size() <= n) {
      const auto& prev = rows_.back();
      const std::size_t m = prev.size();  // new row index
      std::vector<mpz_class> next(m + 1);
      for (std::size_t k = 1; k <= m; ++k) {
        if (k < m) next[k] = mpz_class(static_cast<unsigned long>(k)) * prev[k];
        next[k] += prev[k - 1];
      }
      rows_.push_back(std::move(next));
    }
    return rows_[n];
  }

  mpz_class operator()(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    return row(n)[k];
  }

  std::size_t rows_built() const {
    std::shared_lock lock(mutex_);
    return rows_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::deque<std::vector<mpz_class>> rows_;
};

inline mpz_class stirling2(std::size_t n, std::size_t k) { return StirlingTriangle::shared()(n, k); }

inline mpz_class bell_number(std::size_t n) {
  mpz_class sum = 0;
  for (const auto& s : StirlingTriangle::shared().row(n)) sum += s;
  return sum;
}

inline PolynomialQ bell_polynomial(std::size_t n) {
  const auto& row = StirlingTriangle::shared().row(n);
  std::vector<mpq_class> coeffs(row.begin(), row.end());
  return PolynomialQ(std::move(coeffs));
}

inline mpz_class binomial(std::size_t n, std::size_t k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Set partitions with no singleton block, via the alternating sum
/// sum_j (-1)^j C(n,j) B(n-j).
inline mpz_class restricted_bell(std::size_t n) {
  mpz_class sum = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    mpz_class term = binomial(n, j) * bell_number(n - j);
    if (j % 2 == 0) sum += term;
    else sum -= term;
  }
  return sum;
}

/// Polynomial analogue of restricted_bell: sum_j (-1)^j C(n,j) B(n-j, x),
/// the expansion of e^{-x} sum_k (k-1)^n x^k / k!.
inline PolynomialQ restricted_bell_polynomial(std::size_t n) {
  PolynomialQ sum;
  for (std::size_t j = 0; j <= n; ++j) {
    mpq_class c(binomial(n, j));
    if (j % 2 == 1) c = -c;
    sum += bell_polynomial(n - j) * c;
  }
  return sum;
}

/// m(m-1)...(m-k+1); zero when k > m.
inline mpz_class falling_factorial(std::size_t m, std::size_t k) {
  if (k > m) return 0;
  mpz_class r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= static_cast<unsigned long>(m - i);
  return r;
}

/// Coefficients of m^j in the falling-factorial basis: m^j = sum_k S(j,k) m^(k).
inline std::vector<mpz_class> monomial_to_falling(std::size_t j) { return StirlingTriangle::shared().row(j); }

/// A polynomial H(m) in the number operator m = a^dagger a.
class HamiltonianSpec {
 public:
  explicit HamiltonianSpec(PolynomialQ poly) : poly_(std::move(poly)) {
    if (poly_.is_zero()) fail(ErrorKind::invalid_argument, "Hamiltonian polynomial must be nonzero");
  }

  const PolynomialQ& poly() const { return poly_; }
  std::size_t n0() const { return poly_.lowest_degree(); }
  std::size_t n_deg() const { return poly_.degree(); }

  friend bool operator==(const HamiltonianSpec&, const HamiltonianSpec&) = default;

 private:
  PolynomialQ poly_;
};

/// Normally ordered form of H(a^dagger a)^n: coefficient k multiplies
/// (a^dagger)^k a^k. Stored densely for k = 0 .. n * deg(H).
struct NormalForm {
  std::size_t power = 0;
  std::vector<mpq_class> coeffs;

  mpq_class at(std::size_t k) const { return k < coeffs.size() ? coeffs[k] : mpq_class(0); }

  /// Diagonal number-state element <m| ... |m> = sum_k S_a(n,k) m!/(m-k)!.
  mpq_class diagonal(std::size_t m) const {
    mpq_class sum = 0;
    for (std::size_t k = 0; k < coeffs.size() && k <= m; ++k)
      if (coeffs[k] != 0) sum += coeffs[k] * mpq_class(falling_factorial(m, k));
    return sum;
  }

  /// The Bell-type polynomial sum_k S_a(n,k) x^k.
  PolynomialQ bell_type_polynomial() const { return PolynomialQ(coeffs); }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Stirling-type numbers of H: expand Q = H^n in monomials, then change
/// each m^j to the falling-factorial basis.
inline NormalForm stirling_type(const HamiltonianSpec& h, std::size_t n) {
  const PolynomialQ q = pow(h.poly(), n);
  NormalForm nf;
  nf.power = n;
  nf.coeffs.assign(n * h.n_deg() + 1, mpq_class(0));
  auto& triangle = StirlingTriangle::shared();
  for (std::size_t j = 0; j < q.coeffs().size(); ++j) {
    const mpq_class& qj = q.coeffs()[j];
    if (qj == 0) continue;
    const auto& row = triangle.row(j);
    for (std::size_t k = 0; k <= j; ++k)
      if (row[k] != 0) nf.coeffs[k] += qj * mpq_class(row[k]);
  }
  for (auto& c : nf.coeffs) c.canonicalize();
  return nf;
}

inline mpq_class bell_type_eval(const HamiltonianSpec& h, std::size_t n, const mpq_class& x) {
  return stirling_type(h, n).bell_type_polynomial()(x);
}

}  // namespace dobinski
