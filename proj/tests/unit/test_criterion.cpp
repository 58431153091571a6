#include <gtest/gtest.h>

#include <random>

#include "convexpmf/criterion.hpp"
#include "convexpmf/errors.hpp"
#include "support/generators.hpp"

using namespace convexpmf;

namespace {

EmpiricalPmf emp(std::vector<std::int64_t> xs) { return empirical_from_samples(xs); }

// 1/2 sum (f - p)^2 - 1/2 sum p^2, the least-squares form of Q.
double q_least_squares_form(const std::vector<double>& f, const EmpiricalPmf& e) {
  double a = 0.0, b = 0.0;
  const std::size_t len = std::max(f.size(), e.pmf().size());
  for (std::size_t i = 0; i < len; ++i) {
    const double fi = i < f.size() ? f[i] : 0.0;
    a += (fi - e[i]) * (fi - e[i]);
    b += e[i] * e[i];
  }
  return 0.5 * a - 0.5 * b;
}

}  // namespace

TEST(CriterionQ, Examples) {
  const auto point = emp({0});
  EXPECT_DOUBLE_EQ(criterion_Q(std::vector<double>{1.0}, point), -0.5);
  EXPECT_DOUBLE_EQ(criterion_Q(std::vector<double>{}, point), 0.0);

  const auto e = emp({0, 0, 1, 2});
  const std::vector<double> t2{2.0 / 3, 1.0 / 3};
  EXPECT_NEAR(criterion_Q(t2, e), -5.0 / 36, 1e-15);
  EXPECT_NEAR(q_least_squares_form(t2, e), -5.0 / 36, 1e-15);
}

TEST(CriterionQ, LeastSquaresIdentity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto e = testgen::random_empirical(rng, 50, 20);
    const auto f = mixture_to_pmf(testgen::random_mixture(rng, 30, 4));
    EXPECT_NEAR(criterion_Q(f, e), q_least_squares_form(f, e), 1e-14);
  }
}

TEST(CriterionPsi, Examples) {
  EXPECT_DOUBLE_EQ(criterion_Psi({{1, 1.0}}, emp({0})), -0.5);
  EXPECT_EQ(criterion_Psi({}, emp({0, 1})), 0.0);
  EXPECT_NEAR(criterion_Psi({{2, 1.0}}, emp({0, 0, 1, 2})), -5.0 / 36, 1e-15);
}

TEST(DirectionalDerivative, Examples) {
  EXPECT_DOUBLE_EQ(directional_derivative(1, {}, emp({0})), -1.0);
  EXPECT_DOUBLE_EQ(directional_derivative(1, {{1, 1.0}}, emp({0})), 0.0);
  EXPECT_NEAR(directional_derivative(3, {}, emp({0, 0, 1, 2})), -3.0 / 8, 1e-15);
  EXPECT_THROW(directional_derivative(0, {}, emp({0})), std::invalid_argument);
}

TEST(DirectionalDerivative, MatchesOneSidedDifferenceQuotient) {
  const auto e = emp({0, 0, 1, 2});
  const double eps = 1e-7;
  const double quotient = (criterion_Psi({{3, eps}}, e) - criterion_Psi({}, e)) / eps;
  EXPECT_NEAR(quotient, -3.0 / 8, 1e-6);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto e2 = testgen::random_empirical(rng, 60, 25);
    const auto w = testgen::random_mixture(rng, 30, 4);
    for (int j : {1, 2, 7, 19, 33}) {
      auto moved = w;
      moved[j] += eps;
      const double q = (criterion_Psi(moved, e2) - criterion_Psi(w, e2)) / eps;
      EXPECT_NEAR(directional_derivative(j, w, e2), q, 1e-6);
    }
  }
}

TEST(DirectionalDerivative, BatchAgreesWithTermwise) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const auto e = testgen::random_empirical(rng, 80, 30);
    auto w = testgen::random_mixture(rng, 40, 6);
    w[5] -= 0.2;  // signed iterates are allowed
    const auto d = directional_derivatives(50, w, e);
    for (int j = 1; j <= 50; ++j) {
      EXPECT_NEAR(d[static_cast<std::size_t>(j - 1)], directional_derivative(j, w, e), 1e-13);
    }
  }
}

TEST(RestrictedMinimizer, SinglePointMass) {
  const auto x = restricted_minimizer(std::vector<int>{1}, emp({0}));
  ASSERT_EQ(x.size(), 1u);
  EXPECT_NEAR(x[0], 1.0, 1e-14);
}

TEST(RestrictedMinimizer, SingletonMatchesProjectionFormula) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const auto e = testgen::random_empirical(rng, 40, 15);
    const int L = static_cast<int>(e.support_max()) + 1 + trial % 4;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(L); ++i) {
      num += triangular_value(L, i) * e[i];
      den += triangular_value(L, i) * triangular_value(L, i);
    }
    const auto x = restricted_minimizer(std::vector<int>{L}, e);
    EXPECT_NEAR(x[0], num / den, 1e-13);
  }
}

TEST(RestrictedMinimizer, TwoByTwoAgainstNormalEquations) {
  const auto e = emp({0, 0, 1, 2});
  // Gram matrix and right-hand side from the basis, solved by Cramer's rule.
  double g11 = 0, g13 = 0, g33 = 0, b1 = 0, b3 = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double t1 = triangular_value(1, i), t3 = triangular_value(3, i);
    g11 += t1 * t1;
    g13 += t1 * t3;
    g33 += t3 * t3;
    b1 += t1 * e[i];
    b3 += t3 * e[i];
  }
  const double det = g11 * g33 - g13 * g13;
  const double a = (b1 * g33 - g13 * b3) / det;
  const double c = (g11 * b3 - g13 * b1) / det;
  EXPECT_NEAR(a, 1.0 / 20, 1e-15);
  EXPECT_NEAR(c, 9.0 / 10, 1e-15);

  const auto x = restricted_minimizer(std::vector<int>{1, 3}, e);
  EXPECT_NEAR(x[0], a, 1e-14);
  EXPECT_NEAR(x[1], c, 1e-14);
  const MixtureWeights w{{1, x[0]}, {3, x[1]}};
  EXPECT_NEAR(directional_derivative(1, w, e), 0.0, 1e-10);
  EXPECT_NEAR(directional_derivative(3, w, e), 0.0, 1e-10);
}

TEST(RestrictedMinimizer, DerivativesVanishOnSupport) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> pick(1, 40);
  for (int trial = 0; trial < 50; ++trial) {
    const auto e = testgen::random_empirical(rng, 100, 30);
    std::vector<int> support;
    for (int k = 0; k < 5; ++k) support.push_back(pick(rng));
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const auto x = restricted_minimizer(support, e);
    MixtureWeights w;
    for (std::size_t k = 0; k < support.size(); ++k) w[support[k]] = x[k];
    for (int j : support) EXPECT_NEAR(directional_derivative(j, w, e), 0.0, 1e-10);
  }
}

TEST(RestrictedMinimizer, RejectsBadSupport) {
  const auto e = emp({0, 1});
  EXPECT_THROW(restricted_minimizer(std::vector<int>{}, e), std::invalid_argument);
  EXPECT_THROW(restricted_minimizer(std::vector<int>{3, 1}, e), std::invalid_argument);
  EXPECT_THROW(restricted_minimizer(std::vector<int>{2, 2}, e), std::invalid_argument);
  EXPECT_THROW(restricted_minimizer(std::vector<int>{0, 2}, e), std::invalid_argument);
}
