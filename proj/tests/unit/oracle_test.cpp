#include "lshsel/oracle.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "lshsel/analytic.hpp"

namespace lshsel::oracle {
namespace {

TEST(BoxDomain, ValidatesBounds) {
  EXPECT_THROW(BoxDomain({}), std::invalid_argument);
  EXPECT_THROW(BoxDomain({{0.5, 0.5, VariableRole::kFull}}), std::invalid_argument);
  const std::vector<VariableRole> roles{VariableRole::kNonnegativeHalf, VariableRole::kFull};
  EXPECT_DOUBLE_EQ(BoxDomain::from_roles(roles).volume(), 0.5);
}

TEST(Integrand, CatalogLookup) {
  EXPECT_EQ(Integrand::from_name("max_shift", 3, 0).arity(), 3U);
  EXPECT_EQ(Integrand::from_name("combined", 2, 3).arity(), 8U);
  EXPECT_THROW(Integrand::from_name("sin", 1, 0), std::invalid_argument);
  EXPECT_THROW(Integrand::max_shift(0), std::invalid_argument);
}

TEST(Integrand, PiecewiseOverlapMatchesCaseAnalysis) {
  const Integrand f = Integrand::overlap_piecewise(2);
  // x < 0 xor y < 0: 1 - |x - y|
  EXPECT_DOUBLE_EQ(f(std::vector<double>{0.2, -0.1}), 1.0 - 0.3);
  // same signs: 1 - max(|x|, |y|)
  EXPECT_DOUBLE_EQ(f(std::vector<double>{0.2, 0.4}), 0.6);
  EXPECT_DOUBLE_EQ(f(std::vector<double>{-0.2, -0.4}), 0.6);
  const Integrand g = Integrand::overlap_piecewise(3);
  // x, y >= 0, z < 0: 1 - max(x, y) + z
  EXPECT_DOUBLE_EQ(g(std::vector<double>{0.1, 0.3, -0.2}), 1.0 - 0.3 - 0.2);
}

TEST(IntegrateTensor, ShiftIntegralBracketsThreeEighths) {
  const Integrand f = Integrand::shift_product(1);
  const OracleResult r = integrate_tensor(f, f.natural_domain(), 1000);
  EXPECT_EQ(r.method, OracleMethod::kTensorMidpoint);
  EXPECT_DOUBLE_EQ(r.tolerance, 0.002);
  EXPECT_TRUE(r.brackets(0.375));
  EXPECT_EQ(r.evaluations, 1000);
}

TEST(IntegrateTensor, MaxShiftBracketsFiveTwentyFourths) {
  const Integrand f = Integrand::max_shift(2);
  const OracleResult r = integrate_tensor(f, f.natural_domain(), 500);
  EXPECT_NEAR(r.value, 5.0 / 24.0, 1e-5);
  EXPECT_TRUE(r.brackets(5.0 / 24.0));
}

TEST(IntegrateTensor, ConstantGivesDomainVolume) {
  const std::vector<VariableRole> roles{VariableRole::kFull, VariableRole::kNegativeHalf,
                                        VariableRole::kNonnegativeHalf};
  const OracleResult r = integrate_tensor(Integrand::constant(3), BoxDomain::from_roles(roles), 7);
  EXPECT_NEAR(r.value, 0.25, 1e-15);
}

TEST(IntegrateTensor, Rejections) {
  const Integrand f = Integrand::shift_product(2);
  EXPECT_THROW(integrate_tensor(f, Integrand::shift_product(3).natural_domain(), 10), std::invalid_argument);
  EXPECT_THROW(integrate_tensor(Integrand::shift_product(5), Integrand::shift_product(5).natural_domain(), 2),
               std::invalid_argument);
  EXPECT_THROW(integrate_tensor(Integrand::shift_product(4), Integrand::shift_product(4).natural_domain(), 101),
               std::invalid_argument);
  EXPECT_THROW(integrate_tensor(f, f.natural_domain(), 0), std::invalid_argument);
}

TEST(IntegrateTensor, DoublingPointsNeverLoosensTolerance) {
  const Integrand f = Integrand::overlap_piecewise(2);
  double previous = integrate_tensor(f, f.natural_domain(), 10).tolerance;
  for (int ppa = 20; ppa <= 1280; ppa *= 2) {
    const double t = integrate_tensor(f, f.natural_domain(), ppa).tolerance;
    EXPECT_LE(t, previous);
    previous = t;
  }
}

TEST(MaxPointsPerAxis, StaysWithinBudget) {
  EXPECT_EQ(max_points_per_axis(4), 100);
  EXPECT_EQ(max_points_per_axis(2, 1'000'000), 1000);
  EXPECT_EQ(max_points_per_axis(3, 1'000'000), 100);
  EXPECT_EQ(max_points_per_axis(3, 999'999), 99);
}

TEST(IntegrateMc, CombinedIntegralBracketsThreeSixtyFourths) {
  const Integrand f = Integrand::combined(1, 1);
  const OracleResult r = integrate_mc(f, f.natural_domain(), 1'000'000, 17);
  EXPECT_EQ(r.method, OracleMethod::kMonteCarlo);
  EXPECT_TRUE(r.brackets(3.0 / 64.0)) << r.value << " +- " << r.tolerance;
}

TEST(IntegrateMc, PiecewiseOverlapBracketsSevenTwelfths) {
  const Integrand f = Integrand::overlap_piecewise(2);
  const OracleResult r = integrate_mc(f, f.natural_domain(), 1'000'000, 5);
  EXPECT_TRUE(r.brackets(7.0 / 12.0)) << r.value << " +- " << r.tolerance;
}

TEST(IntegrateMc, DeterministicPerSeed) {
  const Integrand f = Integrand::max_shift(5);
  const OracleResult a = integrate_mc(f, f.natural_domain(), 100'000, 99);
  const OracleResult b = integrate_mc(f, f.natural_domain(), 100'000, 99);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.tolerance, b.tolerance);
  const OracleResult c = integrate_mc(f, f.natural_domain(), 100'000, 100);
  EXPECT_NE(a.value, c.value);
}

TEST(IntegrateMc, RejectsTooFewSamples) {
  const Integrand f = Integrand::max_shift(2);
  EXPECT_THROW(integrate_mc(f, f.natural_domain(), 9999, 1), std::invalid_argument);
}

TEST(OracleProperty, TensorAndMonteCarloAgreeOnSharedEntries) {
  const std::vector<Integrand> shared{
      Integrand::shift_product(2), Integrand::max_shift(3),        Integrand::min_shift(2),
      Integrand::pair_difference(1), Integrand::combined(1, 1),    Integrand::overlap_piecewise(3)};
  std::uint64_t seed = 1;
  for (const Integrand& f : shared) {
    const int ppa = max_points_per_axis(f.arity(), 10'000'000);
    const OracleResult t = integrate_tensor(f, f.natural_domain(), std::min(ppa, 2000));
    const OracleResult m = integrate_mc(f, f.natural_domain(), 200'000, seed++);
    EXPECT_LE(std::abs(t.value - m.value), t.tolerance + m.tolerance) << f.name();
  }
}

TEST(OracleProperty, PiecewiseOverlapMatchesQuadrantSum) {
  for (int ell = 1; ell <= 4; ++ell) {
    const Integrand f = Integrand::overlap_piecewise(ell);
    const int ppa = std::min(2000, max_points_per_axis(f.arity(), 10'000'000));
    const OracleResult r = integrate_tensor(f, f.natural_domain(), ppa);
    EXPECT_TRUE(r.brackets(analytic::p_one_of_one_overlap(ell).to_double())) << "ell=" << ell;
  }
}

}  // namespace
}  // namespace lshsel::oracle
