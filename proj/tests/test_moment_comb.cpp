#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dobinski/error.hpp"
#include "dobinski/exact_core.hpp"
#include "dobinski/moment_comb.hpp"
#include "test_support.hpp"

using namespace dobinski;
using test_support::error_of;

namespace {

DiracComb bell_comb(const mpq_class& x = 1) { return build_comb(SeriesSpec::automatic(PolynomialQ::identity(), x), 1e-12); }

mpq_class factorial(std::size_t k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return mpq_class(f);
}

// Brute-force support test: scans P(k) for k in [0, limit].
bool negative_somewhere(const PolynomialQ& p, std::size_t limit) {
  for (std::size_t k = 0; k <= limit; ++k)
    if (p(mpq_class(static_cast<unsigned long>(k))) < 0) return true;
  return false;
}

}  // namespace

TEST(BuildComb, BellAtomsArePoissonWeights) {
  const DiracComb comb = bell_comb();
  ASSERT_GE(comb.atoms().size(), 6u);
  const Real e_inv = exp_of(-1, 256);
  for (std::size_t i = 0; i < comb.atoms().size(); ++i) {
    EXPECT_EQ(comb.atoms()[i].location, static_cast<unsigned long>(i));
    EXPECT_EQ(comb.atoms()[i].raw_weight, 1 / factorial(i));
    EXPECT_EQ(comb.atoms()[i].indices, std::vector<std::size_t>{i});
    const Real expected = e_inv / Real(factorial(i), 256);
    EXPECT_LE(abs(comb.weight(i) - expected), rounding_allowance(expected, 256));
  }
  EXPECT_LE(comb.mass_defect(), Real(1e-12, 64));
}

TEST(BuildComb, RestrictedLeftmostAtom) {
  const DiracComb comb = build_comb(SeriesSpec::automatic(PolynomialQ({-1, 1}), 1), 1e-12);
  EXPECT_EQ(comb.atoms().front().location, -1);
  EXPECT_LE(abs(comb.weight(0) - exp_of(-1, 256)), Real(1e-70, 64));
}

TEST(BuildComb, ConstantCollapsesToOneAtom) {
  const DiracComb comb = build_comb(SeriesSpec::automatic(PolynomialQ{}, 1), 1e-12);
  ASSERT_EQ(comb.atoms().size(), 1u);
  EXPECT_EQ(comb.atoms()[0].location, 0);
  EXPECT_EQ(comb.atoms()[0].indices.size(), comb.truncation() + 1);
  EXPECT_LE(abs(comb.total_mass() - Real(1L, 256)), comb.mass_defect() + Real(1e-70, 64));
}

TEST(BuildComb, TruncationIsMinimal) {
  const auto spec = SeriesSpec::automatic(PolynomialQ::identity(), 3);
  const DiracComb loose = build_comb(spec, 1e-6);
  const DiracComb tight = build_comb(spec, 1e-30);
  EXPECT_LT(loose.truncation(), tight.truncation());
  EXPECT_LE(loose.mass_defect(), Real(1e-6, 64));
  EXPECT_LE(tight.mass_defect(), Real(1e-30, 64));
  // The omitted mass is genuinely bounded by the defect.
  EXPECT_LE(Real(1L, 256) - tight.total_mass(), tight.mass_defect());
}

TEST(BuildComb, RejectsBadInput) {
  EXPECT_THROW(build_comb(SeriesSpec::automatic(PolynomialQ::identity(), 1), 0.0), Error);
  EXPECT_THROW(build_comb(SeriesSpec::automatic(PolynomialQ::identity(), 1), 1e-12, CombOptions{256, true, 3}), Error);
}

TEST(Moment, Examples) {
  const DiracComb comb = bell_comb();
  const auto third = moment(comb, 3);
  EXPECT_LE(error_of(third.value, 5), third.trunc_bound + rounding_allowance(third.value, 256));

  const auto zeroth = moment(comb, 0);
  EXPECT_LE(error_of(zeroth.value, 1), zeroth.trunc_bound + rounding_allowance(zeroth.value, 256));

  const DiracComb restricted = build_comb(SeriesSpec::automatic(PolynomialQ({-1, 1}), 1), 1e-12);
  const auto second = moment(restricted, 2);
  EXPECT_LE(error_of(second.value, 1), second.trunc_bound + rounding_allowance(second.value, 256));
}

TEST(Moment, BellNumbersUpToFifteen) {
  const DiracComb comb = bell_comb();
  for (std::size_t n = 0; n <= 15; ++n) {
    const auto m = moment(comb, n);
    const mpq_class exact(bell_number(n));
    EXPECT_LE(error_of(m.value, exact), m.trunc_bound + rounding_allowance(m.value, 256)) << n;
  }
}

TEST(Moment, AgreesWithSeriesOnRandomGrid) {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 15; ++trial) {
    const PolynomialQ p = test_support::random_poly(rng, 0, 3);
    for (const mpq_class& x : {mpq_class(1, 2), mpq_class(1), mpq_class(3)}) {
      const auto spec = SeriesSpec::automatic(p, x);
      const DiracComb comb = build_comb(spec, 1e-12);
      for (std::size_t n = 0; n <= 6; ++n) {
        const auto m = moment(comb, n);
        const auto s = eval_bell_type(spec, n, 1e-12);
        const Real slack = rounding_allowance(m.value, 256) + rounding_allowance(s.value, 256);
        ASSERT_LE(abs(m.value - s.value), m.trunc_bound + s.trunc_bound + slack)
            << "trial " << trial << " n=" << n << " x=" << x.get_str();
      }
    }
  }
}

TEST(Moment, MergingLeavesMomentsUnchanged) {
  const auto spec = SeriesSpec::automatic(PolynomialQ({4, -4, 1}), 2);  // (k-2)^2
  const DiracComb raw = build_comb(spec, 1e-12, CombOptions{256, false});
  const DiracComb merged = raw.merged();
  EXPECT_LT(merged.atoms().size(), raw.atoms().size());
  EXPECT_EQ(merged.atoms()[1].location, 1);
  EXPECT_EQ(merged.atoms()[1].indices, (std::vector<std::size_t>{1, 3}));
  for (std::size_t n = 0; n <= 8; ++n) {
    const auto a = moment(raw, n);
    const auto b = moment(merged, n);
    EXPECT_EQ(a.value, b.value) << n;
    EXPECT_EQ(a.trunc_bound, b.trunc_bound) << n;
  }
}

TEST(CheckDistribution, Examples) {
  const auto bell = check_distribution(bell_comb());
  EXPECT_TRUE(bell.passed);
  EXPECT_TRUE(bell.all_positive);
  EXPECT_LE(abs(bell.total_mass - Real(1L, 256)), Real(1e-12, 64));

  EXPECT_TRUE(check_distribution(bell_comb(3)).passed);

  const mpq_class x = 1;
  const Real s = Real(2L, 256) * exp_of(x, 256);
  const DiracComb half = build_comb(SeriesSpec::with_scale(PolynomialQ::identity(), x, s), 1e-12);
  const auto report = check_distribution(half);
  EXPECT_FALSE(report.passed);
  EXPECT_TRUE(report.all_positive);
  EXPECT_LE(abs(report.total_mass - Real(0.5, 64)), Real(1e-12, 64));
}

TEST(CheckDistribution, AutomaticCombsAreNormalized) {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 20; ++trial) {
    const PolynomialQ p = test_support::random_poly(rng, 0, 3);
    for (const mpq_class& x : {mpq_class(1, 3), mpq_class(2), mpq_class(7)}) {
      const auto report = check_distribution(build_comb(SeriesSpec::automatic(p, x), 1e-12));
      EXPECT_TRUE(report.passed) << trial << " x=" << x.get_str();
    }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(PolynomialQ::identity()), MomentProblem::stieltjes);
  EXPECT_EQ(classify(PolynomialQ({-1, 1})), MomentProblem::hamburger);
  EXPECT_EQ(classify(PolynomialQ::constant(5)), MomentProblem::hausdorff);
  EXPECT_EQ(to_string(MomentProblem::stieltjes), "Stieltjes");
  EXPECT_EQ(to_string(MomentProblem::hamburger), "Hamburger");
  EXPECT_EQ(to_string(MomentProblem::hausdorff), "Hausdorff");
}

TEST(Classify, LateNegativeValues) {
  // (k-30)^2 - 1/4 first dips below zero at k = 30.
  EXPECT_EQ(classify(PolynomialQ({mpq_class(3599, 4), -60, 1})), MomentProblem::hamburger);
  // (k-30)^2 stays nonnegative on the integers.
  EXPECT_EQ(classify(PolynomialQ({900, -60, 1})), MomentProblem::stieltjes);
  // Negative leading coefficient: eventually negative.
  EXPECT_EQ(classify(PolynomialQ({1000, 0, -1})), MomentProblem::hamburger);
}

TEST(Classify, MatchesBruteForceScan) {
  std::mt19937_64 rng(707);
  for (int trial = 0; trial < 300; ++trial) {
    const PolynomialQ p = test_support::random_poly(rng, 1, 4);
    const MomentProblem expected = negative_somewhere(p, 2000) ? MomentProblem::hamburger : MomentProblem::stieltjes;
    EXPECT_EQ(classify(p), expected) << p;
  }
}

TEST(ExportComb, FigureRange) {
  const auto rows = export_comb(bell_comb(), 0, 5);
  ASSERT_EQ(rows.size(), 6u);
  const Real e_inv = exp_of(-1, 256);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k].location, Real(static_cast<long>(k), 256));
    EXPECT_LE(abs(rows[k].weight - e_inv / Real(factorial(k), 256)), Real(1e-70, 64));
    if (k > 0) EXPECT_LE(abs(rows[k].weight * Real(static_cast<long>(k), 256) - rows[k - 1].weight), Real(1e-70, 64));
  }
}

TEST(ExportComb, RangeErrorsAndRestrictedWindow) {
  EXPECT_THROW(export_comb(bell_comb(), 10, 9), Error);
  EXPECT_THROW(export_comb(bell_comb(), 3, 3), Error);
  const DiracComb restricted = build_comb(SeriesSpec::automatic(PolynomialQ({-1, 1}), 1), 1e-12);
  const auto rows = export_comb(restricted, -2, 1);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].location, Real(-1L, 256));
  EXPECT_EQ(rows[1].location, Real(0L, 256));
  EXPECT_EQ(rows[2].location, Real(1L, 256));
}

TEST(ExportComb, SortedByLocation) {
  const DiracComb comb = build_comb(SeriesSpec::automatic(PolynomialQ({5, -3}), 2), 1e-12);
  const auto rows = export_comb(comb);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i - 1].location, rows[i].location);
}

TEST(WriteCombCsv, Format) {
  std::ostringstream os;
  write_comb_csv(os, export_comb(bell_comb(), 0, 1));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "location,weight");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 2), "0,");
  EXPECT_EQ(line.substr(2, 12), "0.3678794411");
  const std::string digits = line.substr(2);
  EXPECT_GE(digits.size(), 70u);
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 2), "1,");
  EXPECT_FALSE(std::getline(in, line));
}
