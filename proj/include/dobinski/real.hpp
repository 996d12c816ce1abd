#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace dobinski {

inline constexpr long kDefaultBits = 256;

/// Owning handle for an MPFR value. Binary operations produce a result at
/// the larger of the two operand precisions, rounded to nearest.
class Real {
 public:
  explicit Real(long bits = kDefaultBits) {
    mpfr_init2(v_, clamp_bits(bits));
    mpfr_set_zero(v_, 1);
  }
  Real(const mpq_class& q, long bits) : Real(bits) { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
  Real(const mpz_class& z, long bits) : Real(bits) { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
  Real(long value, long bits) : Real(bits) { mpfr_set_si(v_, value, MPFR_RNDN); }
  Real(int value, long bits) : Real(static_cast<long>(value), bits) {}
  Real(double value, long bits) : Real(bits) { mpfr_set_d(v_, value, MPFR_RNDN); }

  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  /// Rounds `q` toward +infinity; used wherever a value acts as an upper bound.
  static Real upper(const mpq_class& q, long bits) {
    Real r(bits);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static Real parse(const std::string& text, long bits) {
    Real r(bits);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
      throw std::invalid_argument("not a decimal number: " + text);
    }
    return r;
  }

  long bits() const { return static_cast<long>(mpfr_get_prec(v_)); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  Real& operator+=(const Real& o) { return apply(o, mpfr_add); }
  Real& operator-=(const Real& o) { return apply(o, mpfr_sub); }
  Real& operator*=(const Real& o) { return apply(o, mpfr_mul); }
  Real& operator/=(const Real& o) { return apply(o, mpfr_div); }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator-(Real a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
  }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }

  friend Real abs(Real a) {
    mpfr_abs(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend Real exp(Real a) {
    mpfr_exp(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend Real pow(Real a, unsigned long e) {
    mpfr_pow_ui(a.v_, a.v_, e, MPFR_RNDN);
    return a;
  }

  /// Significant decimal digits that round-trip a value of `bits` precision.
  static int decimal_digits(long bits) {
    return 1 + static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398120));
  }

  /// Shortest-form decimal ("%g" style) with `digits` significant digits,
  /// rounded to nearest. Defaults to the precision-matched digit count.
  std::string to_string(int digits = 0) const {
    if (digits <= 0) digits = decimal_digits(bits());
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*RNg", digits, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Real& r) { return os << r.to_string(); }

 private:
  static mpfr_prec_t clamp_bits(long bits) {
    return static_cast<mpfr_prec_t>(std::clamp<long>(bits, MPFR_PREC_MIN, 1L << 20));
  }

  template <typename Op>
  Real& apply(const Real& o, Op op) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
    op(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

/// Copy of `r` rounded to `bits` precision (nearest, or upward for bounds).
inline Real round_to(const Real& r, long bits, mpfr_rnd_t mode = MPFR_RNDN) {
  Real out(bits);
  mpfr_set(out.get(), r.get(), mode);
  return out;
}

/// e^{q} for exact rational q.
inline Real exp_of(const mpq_class& q, long bits) { return exp(Real(q, bits)); }

/// Inflates a nonnegative bound by a few ulps so that it dominates the
/// value it was rounded from.
inline Real inflate(Real r) {
  Real factor(1L, r.bits());
  mpfr_t eps;
  mpfr_init2(eps, 64);
  mpfr_set_ui_2exp(eps, 1, -(r.bits() - 8), MPFR_RNDU);
  mpfr_add(factor.get(), factor.get(), eps, MPFR_RNDU);
  mpfr_clear(eps);
  mpfr_mul(r.get(), r.get(), factor.get(), MPFR_RNDU);
  return r;
}

/// Relative rounding allowance at `bits` precision, scaled by `magnitude`:
/// magnitude * 2^{-(bits - slack)}.
inline Real rounding_allowance(const Real& magnitude, long bits, long slack = 16) {
  Real r = abs(magnitude);
  mpfr_mul_2si(r.get(), r.get(), -(bits - slack), MPFR_RNDU);
  return r;
}

/// Exact rational value of a double (every finite double is a dyadic rational).
inline mpq_class to_rational(double value) { return mpq_class(value); }

}  // namespace dobinski
