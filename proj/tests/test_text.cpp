#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "dobinski/text.hpp"
#include "test_support.hpp"

using namespace dobinski;

TEST(ParseRational, AcceptsFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), mpq_class(1, 2));
  EXPECT_EQ(parse_rational("-7"), mpq_class(-7));
  EXPECT_EQ(parse_rational("+2/3"), mpq_class(2, 3));
  EXPECT_EQ(parse_rational("0.1"), mpq_class(1, 10));
  EXPECT_EQ(parse_rational("-2.5e-3"), mpq_class(-1, 400));
  EXPECT_EQ(parse_rational("1e2"), mpq_class(100));
}

TEST(ParseRational, RejectsGarbage) {
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/2/3"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.2.3"), std::invalid_argument);
}

TEST(ParsePoly, ReadsDegreeCoefficientPairs) {
  EXPECT_EQ(parse_poly("1:1"), PolynomialQ::identity());
  EXPECT_EQ(parse_poly("2:1,1:1"), PolynomialQ({0, 1, 1}));
  EXPECT_EQ(parse_poly("1:1, 0:-1"), PolynomialQ({-1, 1}));
  EXPECT_EQ(parse_poly("3:1/3,1:-1"), PolynomialQ({0, -1, 0, mpq_class(1, 3)}));
}

TEST(ParsePoly, RejectsInvalidSpecs) {
  EXPECT_THROW(parse_poly(""), std::invalid_argument);
  EXPECT_THROW(parse_poly("1:1,1:2"), std::invalid_argument);  // repeated degree
  EXPECT_THROW(parse_poly("0:0"), std::invalid_argument);      // no nonzero coefficient
  EXPECT_THROW(parse_poly("-1:1"), std::invalid_argument);
  EXPECT_THROW(parse_poly("1:0.5"), std::invalid_argument);
  EXPECT_THROW(parse_poly("1:1,"), std::invalid_argument);
  EXPECT_THROW(parse_poly("x^2"), std::invalid_argument);
}

TEST(FormatPoly, RoundTripsRandomPolynomials) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const PolynomialQ p = test_support::random_poly(rng, 0, 6);
    if (p.is_zero()) continue;
    const std::string text = format_poly(p);
    EXPECT_EQ(parse_poly(text), p) << text;
    EXPECT_EQ(format_poly(parse_poly(text)), text);
  }
}

TEST(FormatPoly, DescendingDegrees) { EXPECT_EQ(format_poly(PolynomialQ({-1, 0, mpq_class(2, 3)})), "2:2/3,0:-1"); }
