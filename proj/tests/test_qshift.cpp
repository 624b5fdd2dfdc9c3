#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "frozen_values.hpp"
#include "gqtoda/function.hpp"
#include "gqtoda/qshift.hpp"

namespace gqtoda {
namespace {

using namespace gqtoda::testing;

const ShiftParams kFig = ShiftParams::from_exp(1.25);

TEST(ShiftParamsTest, FromExpTakesLog) {
  EXPECT_NEAR(kFig.epsilon(), kEpsilon, 1e-16);
  EXPECT_THROW(ShiftParams(0.0), ConfigError);
  EXPECT_THROW(ShiftParams(-1.0), ConfigError);
  EXPECT_THROW(ShiftParams::from_exp(1.0), ConfigError);
}

TEST(MobiusShiftTest, Examples) {
  EXPECT_EQ(mobius_shift(2.0, 0, kFig), 2.0);
  const double x = 0.37;
  EXPECT_NEAR(mobius_shift(mobius_shift(x, 1, kFig), -1, kFig), x, 1e-16);
  EXPECT_NEAR(mobius_shift(1.0, 2, kFig), kMobius_x1_k2, 1e-14);
}

TEST(MobiusShiftTest, PoleIsAnError) {
  const ShiftParams p(0.5);
  EXPECT_THROW(mobius_shift(2.0, 1, p), PoleError);
  EXPECT_THROW(mobius_shift(1.0, 2, p), PoleError);
  EXPECT_NO_THROW(mobius_shift(1.0, 1, p));
}

TEST(MobiusShiftTest, GroupLawProperty) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ueps(0.01, 1.0), ux(-1.0, 1.0);
  std::uniform_int_distribution<int> uk(-5, 5);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const ShiftParams p(ueps(gen));
    const double x = ux(gen);
    const int a = uk(gen), b = uk(gen);
    try {
      const double lhs = mobius_shift(mobius_shift(x, a, p), b, p);
      const double rhs = mobius_shift(x, a + b, p);
      // Near a pole the map amplifies rounding like 1/(1 - k eps x)^2.
      const double cond = std::max({1.0, std::abs(1 - a * p.epsilon() * x), std::abs(1 - (a + b) * p.epsilon() * x)});
      const double d1 = std::abs(1 - a * p.epsilon() * x), d2 = std::abs(1 - (a + b) * p.epsilon() * x);
      if (std::min(d1, d2) < 1e-2) continue;
      EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs) * cond / std::min(d1, d2)) << x << " " << a << " " << b;
      ++checked;
    } catch (const PoleError&) {
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(CoordinateTest, RoundTripAndConjugation) {
  EXPECT_EQ(x_to_y(-1.0), 1.0);
  EXPECT_EQ(y_to_x(x_to_y(-1.0)), -1.0);
  EXPECT_EQ(x_to_y(2.0), -0.5);
  const ShiftParams p(0.223144);
  EXPECT_NEAR(x_to_y(mobius_shift(0.5, 1, p)) - x_to_y(0.5), 0.223144, 1e-15);
  EXPECT_THROW(x_to_y(0.0), DomainError);
  EXPECT_THROW(y_to_x(0.0), DomainError);

  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> ux(0.05, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double x = ux(gen);
    for (int k = -3; k <= 3; ++k) {
      if (std::abs(1 - k * kFig.epsilon() * x) < 0.05) continue;
      const double lhs = x_to_y(mobius_shift(x, k, kFig));
      const double rhs = x_to_y(x) + k * kFig.epsilon();
      EXPECT_NEAR(lhs, rhs, 1e-12 * (1 + std::abs(rhs)));
    }
  }
}

TEST(ShiftApplyTest, Examples) {
  EXPECT_EQ(shift_apply(Function(3.0), 2, kFig)(0.3), 3.0);
  const Function sx = shift_apply(var_x(), 1, kFig);
  EXPECT_DOUBLE_EQ(sx(0.4), 0.4 / (1 - kFig.epsilon() * 0.4));
  const double alpha = -5.0;
  const Function f = exp(-alpha * reciprocal(var_x()));
  EXPECT_NEAR(shift_apply(f, 1, kFig)(1.0), kShiftedExp_alpha_m5, 1e-13 * kShiftedExp_alpha_m5);
}

TEST(ShiftApplyTest, ComposesByGroupLawAndIsHomomorphism) {
  const Function f = exp(var_x()) + var_x() * var_t();
  const Function g = 1.0 / (2.0 + var_x());
  const Function s = shift_apply(shift_apply(f, 2, kFig), -1, kFig);
  EXPECT_TRUE(structurally_equal(s, shift_apply(f, 1, kFig)));
  for (double x : {0.1, 0.5, 1.2}) {
    EXPECT_NEAR(shift_apply(f * g, 1, kFig)(x, 0.3), shift_apply(f, 1, kFig)(x, 0.3) * shift_apply(g, 1, kFig)(x, 0.3),
                1e-15 * (1 + std::abs(shift_apply(f * g, 1, kFig)(x, 0.3))));
  }
  EXPECT_THROW(shift_apply(var_x(), 1, kFig)(1.0 / kFig.epsilon()), PoleError);
}

TEST(CentralDifferenceTest, AnnihilatesAffineFunctionsOfY) {
  EXPECT_TRUE(central_difference(Function(4.0), kFig).is_zero());
  const double alpha = 1.7;
  const Function f = -alpha * reciprocal(var_x());
  const Function d = central_difference(f, kFig);
  for (double x : {0.1, 0.3, 0.9, 2.0}) EXPECT_NEAR(d(x), 0.0, 1e-13 * (1 + std::abs(f(x))));
}

TEST(CentralDifferenceTest, EigenRelationOnExponentials) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> ua(-6.0, 6.0);
  const Domain dom(0.2, 3.5, 1);
  ASSERT_TRUE(dom.admissible(kFig));
  for (int i = 0; i < 20; ++i) {
    const double alpha = ua(gen);
    const Function f = exp(-alpha * reciprocal(var_x()));
    const Function d = central_difference(f, kFig);
    const double lambda = std::exp(alpha * kFig.epsilon()) + std::exp(-alpha * kFig.epsilon()) - 2.0;
    for (double x : dom.linspace(40)) {
      const double expected = lambda * f(x);
      // Cancellation of the three O(f e^{|alpha| eps}) terms bounds attainable accuracy.
      const double scale = std::abs(f(x)) * std::exp(std::abs(alpha) * kFig.epsilon());
      EXPECT_NEAR(d(x), expected, 1e-12 * (scale + std::abs(expected)));
    }
  }
}

TEST(DomainTest, AdmissibilityAndGuard) {
  const Domain ok(0.1, 4.0, 1);  // pole of k = 1 at 4.48
  EXPECT_TRUE(ok.admissible(kFig));
  const Domain bad(0.1, 4.0, 2);  // pole of k = 2 at 2.24
  EXPECT_FALSE(bad.admissible(kFig));
  EXPECT_THROW(bad.require_admissible(kFig), PoleError);
  const Domain neg(-4.0, -0.1, 2);
  EXPECT_FALSE(neg.admissible(kFig));
  EXPECT_THROW(Domain(1.0, 0.0, 1), ConfigError);
  const auto pts = ok.linspace(5);
  EXPECT_EQ(pts.front(), 0.1);
  EXPECT_EQ(pts.back(), 4.0);
}

}  // namespace
}  // namespace gqtoda
