#include <gtest/gtest.h>

#include <random>

#include "convexpmf/criterion.hpp"
#include "convexpmf/errors.hpp"
#include "convexpmf/solver.hpp"
#include "support/generators.hpp"

using namespace convexpmf;

namespace {

EmpiricalPmf emp(std::vector<std::int64_t> xs) { return empirical_from_samples(xs); }

}  // namespace

TEST(GrowthSchedule, DefaultSteps) {
  const GrowthSchedule g;
  EXPECT_EQ(g.next(1), 2);
  EXPECT_EQ(g.next(2), 3);
  EXPECT_EQ(g.next(3), 5);
  EXPECT_EQ(g.next(10), 15);
  EXPECT_EQ((GrowthSchedule{0.0, 1}.next(7)), 8);
}

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.d_tol = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.max_outer = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.growth.min_step = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Fit, DegeneratePointMassAtZero) {
  const auto r = fit(emp({0, 0, 0}));
  EXPECT_EQ(r.pmf.size(), 1u);
  EXPECT_DOUBLE_EQ(r.pmf[0], 1.0);
  EXPECT_EQ(r.mixture.weights().size(), 1u);
  EXPECT_DOUBLE_EQ(r.mixture.weight(1), 1.0);
  EXPECT_EQ(r.final_L, 1);
  EXPECT_TRUE(r.certificate.passed());
}

TEST(Fit, ConvexEmpiricalIsItsOwnProjection) {
  const auto r = fit(emp({0, 0, 0, 1}));
  EXPECT_NEAR(r.pmf[0], 0.75, 1e-12);
  EXPECT_NEAR(r.pmf[1], 0.25, 1e-12);
  EXPECT_LE(r.pmf.size(), 2u);
  EXPECT_NEAR(r.mixture.weight(1), 0.25, 1e-12);
  EXPECT_NEAR(r.mixture.weight(2), 0.75, 1e-12);
  EXPECT_EQ(r.final_L, 2);
  EXPECT_TRUE(r.certificate.passed());
}

TEST(Fit, FlatTailExample) {
  const auto r = fit(emp({0, 0, 1, 2}));
  const std::vector<double> want{1.0 / 2, 7.0 / 24, 1.0 / 6, 1.0 / 24};
  ASSERT_EQ(r.pmf.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(r.pmf[i], want[i], 1e-10) << i;
  ASSERT_EQ(r.mixture.weights().size(), 3u);
  EXPECT_NEAR(r.mixture.weight(1), 1.0 / 12, 1e-10);
  EXPECT_NEAR(r.mixture.weight(3), 1.0 / 2, 1e-10);
  EXPECT_NEAR(r.mixture.weight(4), 5.0 / 12, 1e-10);
  EXPECT_TRUE(r.certificate.passed());
  EXPECT_LT(r.objective, criterion_Psi({{2, 1.0}}, emp({0, 0, 1, 2})));
}

TEST(Fit, SingleObservationSpreadsToOneTriangle) {
  // The projection of a point mass at 7 is T_22, whose mean (22 - 1) / 3 is 7.
  const auto e = emp({7});
  const auto r = fit(e);
  ASSERT_EQ(r.mixture.weights().size(), 1u);
  EXPECT_NEAR(r.mixture.weight(22), 1.0, 1e-9);
  ASSERT_EQ(r.pmf.size(), 22u);
  for (std::size_t i = 0; i < 22; ++i) EXPECT_NEAR(r.pmf[i], (22.0 - i) / 253.0, 1e-10) << i;
  EXPECT_TRUE(r.certificate.passed());
}

TEST(Fit, TraceIsMonotoneAndWellFormed) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto e = testgen::random_empirical(rng, 100, 30);
    const auto r = fit(e);
    ASSERT_FALSE(r.trace.empty());
    for (std::size_t k = 1; k < r.trace.size(); ++k) {
      EXPECT_LE(r.trace[k].objective, r.trace[k - 1].objective + 1e-14);
      EXPECT_GE(r.trace[k].L, r.trace[k - 1].L);
    }
    EXPECT_EQ(r.trace.back().L, r.final_L);
    EXPECT_TRUE(r.certificate.passed()) << r.certificate.failures.front();
  }
}

TEST(Fit, MeanAndMassMatchTheData) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const auto e = testgen::random_empirical(rng, 100, 40);
    const auto r = fit(e);
    double mass = 0.0, mean_fit = 0.0, mean_emp = 0.0;
    for (std::size_t i = 0; i < r.pmf.size(); ++i) {
      mass += r.pmf[i];
      mean_fit += static_cast<double>(i) * r.pmf[i];
    }
    for (std::size_t i = 0; i < e.pmf().size(); ++i) mean_emp += static_cast<double>(i) * e[i];
    EXPECT_NEAR(mass, 1.0, 1e-8);
    EXPECT_NEAR(mean_fit, mean_emp, 1e-8);
    EXPECT_GE(r.pmf[0], e[0] - 1e-10);
    EXPECT_TRUE(is_convex(r.pmf.probs(), 1e-12));
  }
}

TEST(Fit, ProjectionIsIdempotent) {
  // Counts proportional to an integer convex sequence are already convex.
  const std::vector<std::uint64_t> counts{10, 7, 5, 3, 2, 1};
  const EmpiricalPmf e(counts);
  ASSERT_TRUE(is_convex(e));
  const auto r = fit(e);
  for (std::size_t i = 0; i < counts.size(); ++i) EXPECT_NEAR(r.pmf[i], e[i], 1e-10);
}

TEST(FitFixedL, RequiresLargeEnoughL) {
  EXPECT_THROW(fit_fixed_L(2, emp({0, 3})), std::invalid_argument);
  EXPECT_NO_THROW(fit_fixed_L(4, emp({0, 3})));
}

TEST(FitFixedL, WarmStartReachesTheSameOptimum) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto e = testgen::random_empirical(rng, 80, 25);
    const int L = static_cast<int>(e.support_max()) + 6;
    const auto cold = fit_fixed_L(L, e);
    const auto small = fit_fixed_L(static_cast<int>(e.support_max()) + 1, e);
    const auto warm = fit_fixed_L(L, e, {}, small.weights);
    EXPECT_NEAR(cold.objective, warm.objective, 1e-12);
    for (const auto& [j, w] : cold.weights) EXPECT_GT(w, 0.0) << j;
  }
}

TEST(FitFixedL, InnerCapIsEnforced) {
  SolverConfig cfg;
  cfg.max_inner = 1;
  EXPECT_THROW(fit_fixed_L(8, emp({0, 0, 1, 2, 5, 7}), cfg), SolverError);
}

TEST(Fit, OuterCapIsEnforced) {
  SolverConfig cfg;
  cfg.max_outer = 1;
  // Mass is below one at L = 8 for this sample, so a second round is needed.
  EXPECT_THROW(fit(emp({7}), cfg), SolverError);
}

TEST(Fit, AcceptedStepsStrictlyDecreaseTheObjective) {
  std::mt19937_64 rng(58);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = fit(testgen::random_empirical(rng, 100, 30));
    for (std::size_t k = 1; k < r.trace.size(); ++k) {
      if (r.trace[k].L == r.trace[k - 1].L && r.trace[k].iteration > 0) {
        EXPECT_LT(r.trace[k].objective, r.trace[k - 1].objective) << "trial " << trial << " step " << k;
      }
    }
  }
}

TEST(Fit, LargerTruncationChangesNothingOnceMassIsOne) {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 40; ++trial) {
    const auto e = testgen::random_empirical(rng, 100, 30);
    const auto r = fit(e);
    const auto wider = fit_fixed_L(r.final_L + 7, e);
    for (int j = 1; j <= r.final_L + 7; ++j) {
      const double a = r.mixture.weight(j);
      const double b = wider.weights.contains(j) ? wider.weights.at(j) : 0.0;
      EXPECT_NEAR(a, b, 1e-8) << "trial " << trial << " j=" << j;
    }
  }
}
