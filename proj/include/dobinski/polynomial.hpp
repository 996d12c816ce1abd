#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dobinski {

/// Polynomial with exact rational coefficients; coeffs[i] multiplies k^i.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class PolynomialQ {
 public:
  PolynomialQ() = default;
  explicit PolynomialQ(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  PolynomialQ(std::initializer_list<mpq_class> coeffs) : coeffs_(coeffs) { trim(); }

  static PolynomialQ constant(const mpq_class& c) { return PolynomialQ({c}); }
  static PolynomialQ identity() { return PolynomialQ({0, 1}); }
  static PolynomialQ monomial(std::size_t degree, const mpq_class& c = 1) {
    std::vector<mpq_class> v(degree + 1);
    v[degree] = c;
    return PolynomialQ(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// Degree of the polynomial; 0 for the zero polynomial.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

  mpq_class operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpq_class(0); }
  mpq_class leading() const { return coeffs_.empty() ? mpq_class(0) : coeffs_.back(); }

  /// Index of the lowest nonzero coefficient; 0 for the zero polynomial.
  std::size_t lowest_degree() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return i;
    return 0;
  }

  mpq_class operator()(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Sum of absolute values of the coefficients: |P(k)| <= abs_sum() * k^deg for k >= 1.
  mpq_class abs_sum() const {
    mpq_class s = 0;
    for (const auto& c : coeffs_) s += abs(c);
    return s;
  }

  PolynomialQ& operator+=(const PolynomialQ& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  PolynomialQ& operator-=(const PolynomialQ& o) { return *this += -o; }

  friend PolynomialQ operator+(PolynomialQ a, const PolynomialQ& b) { return a += b; }
  friend PolynomialQ operator-(PolynomialQ a, const PolynomialQ& b) { return a -= b; }
  friend PolynomialQ operator-(PolynomialQ a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend PolynomialQ operator*(const PolynomialQ& a, const PolynomialQ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpq_class> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return PolynomialQ(std::move(out));
  }
  friend PolynomialQ operator*(PolynomialQ a, const mpq_class& c) {
    for (auto& x : a.coeffs_) x *= c;
    a.trim();
    return a;
  }

  friend bool operator==(const PolynomialQ&, const PolynomialQ&) = default;

  /// The forward difference P(k+1) - P(k).
  PolynomialQ forward_difference() const {
    PolynomialQ shifted;
    // P(k+1) = sum_i c_i (k+1)^i, built by Horner on the shifted variable.
    const PolynomialQ k_plus_one({1, 1});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) shifted = shifted * k_plus_one + constant(*it);
    return shifted - *this;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    for (auto& c : coeffs_) c.canonicalize();
  }

  std::vector<mpq_class> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const PolynomialQ& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    if (p.coeffs()[i] == 0) continue;
    os << (first ? "" : " + ") << p.coeffs()[i];
    if (i > 0) os << "*k^" << i;
    first = false;
  }
  return os;
}

/// p^n by repeated squaring; p^0 is the constant 1 (also for p = 0).
inline PolynomialQ pow(PolynomialQ base, unsigned long n) {
  PolynomialQ result = PolynomialQ::constant(1);
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

inline mpq_class pow(const mpq_class& base, unsigned long n) {
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), n);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), n);
  r.canonicalize();
  return r;
}

}  // namespace dobinski
