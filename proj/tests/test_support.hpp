#pragma once

#include <gmpxx.h>

#include <random>
#include <vector>

#include "dobinski/polynomial.hpp"
#include "dobinski/real.hpp"

namespace dobinski::test_support {

/// |value - exact| computed with guard bits.
inline Real error_of(const Real& value, const mpq_class& exact) { return abs(value - Real(exact, value.bits() + 64)); }

inline bool within(const Real& value, const mpq_class& exact, const Real& tol) { return error_of(value, exact) <= tol; }

/// Random rational polynomial, degree in [min_deg, max_deg], coefficients
/// p/q with |p|, q <= 9 and a nonzero leading coefficient.
inline PolynomialQ random_poly(std::mt19937_64& rng, int min_deg, int max_deg) {
  std::uniform_int_distribution<int> degree(min_deg, max_deg), num(-9, 9), den(1, 9), nonzero(1, 9);
  const int d = degree(rng);
  std::vector<mpq_class> c(static_cast<std::size_t>(d) + 1);
  for (auto& ci : c) {
    ci = mpq_class(num(rng), den(rng));
    ci.canonicalize();
  }
  if (c.back() == 0) c.back() = mpq_class(nonzero(rng) * (num(rng) < 0 ? -1 : 1), den(rng));
  c.back().canonicalize();
  return PolynomialQ(std::move(c));
}

}  // namespace dobinski::test_support
