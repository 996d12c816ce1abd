#pragma once

// Text forms used on the command line:
//   rationals  "p/q", integers, or plain decimals ("0.25", "-1e-3"), all exact
//   polynomials "degree:coefficient" pairs, e.g. "2:1,1:1" for k^2 + k

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dobinski/polynomial.hpp"

namespace dobinski {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline mpz_class parse_integer(std::string_view s) {
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  return mpz_class(std::string(s.front() == '+' ? s.substr(1) : s));
}

inline mpq_class parse_decimal(std::string_view s) {
  std::string_view mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mant = s.substr(0, e);
    exp10 = parse_integer(s.substr(e + 1)).get_si();
  }
  bool negative = false;
  if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
    negative = mant.front() == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  const auto dot = mant.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(mant);
  } else {
    digits = std::string(mant.substr(0, dot)) + std::string(mant.substr(dot + 1));
    exp10 -= static_cast<long>(mant.size() - dot - 1);
  }
  if (!all_digits(digits)) throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  mpq_class q{mpz_class(digits)};
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0) q /= mpq_class(ten_pow);
  else q *= mpq_class(ten_pow);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace detail

inline mpq_class parse_rational(std::string_view text) {
  const std::string_view s = detail::trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const mpz_class num = detail::parse_integer(detail::trim(s.substr(0, slash)));
    const mpz_class den = detail::parse_integer(detail::trim(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  return detail::parse_decimal(s);
}

/// "p/q", or "p" when the denominator is 1.
inline std::string format_rational(const mpq_class& q) { return q.get_str(); }

inline PolynomialQ parse_poly(std::string_view text) {
  std::vector<mpq_class> coeffs;
  std::set<unsigned long> seen;
  std::size_t start = 0;
  const std::string_view s = detail::trim(text);
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    const std::string_view pair = detail::trim(s.substr(start, comma - start));
    const auto colon = pair.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("expected degree:coefficient, got '" + std::string(pair) + "'");
    const std::string_view deg_text = detail::trim(pair.substr(0, colon));
    if (!detail::all_digits(deg_text)) throw std::invalid_argument("bad degree '" + std::string(deg_text) + "'");
    const unsigned long degree = mpz_class(std::string(deg_text)).get_ui();
    if (degree > 4096) throw std::invalid_argument("degree too large: " + std::string(deg_text));
    if (!seen.insert(degree).second) throw std::invalid_argument("repeated degree " + std::string(deg_text));
    const std::string_view coef_text = detail::trim(pair.substr(colon + 1));
    if (coef_text.find('.') != std::string_view::npos || coef_text.find_first_of("eE") != std::string_view::npos)
      throw std::invalid_argument("coefficients must be integers or p/q, got '" + std::string(coef_text) + "'");
    if (coeffs.size() <= degree) coeffs.resize(degree + 1);
    coeffs[degree] = parse_rational(coef_text);
    start = comma + 1;
  }
  PolynomialQ p(std::move(coeffs));
  if (p.is_zero()) throw std::invalid_argument("polynomial needs at least one nonzero coefficient");
  return p;
}

/// Inverse of parse_poly: nonzero terms in descending degree.
inline std::string format_poly(const PolynomialQ& p) {
  std::string out;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    if (p.coeffs()[i] == 0) continue;
    if (!out.empty()) out += ',';
    out += std::to_string(i) + ':' + format_rational(p.coeffs()[i]);
  }
  return out;
}

}  // namespace dobinski
