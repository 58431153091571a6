#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "convexpmf/diagnostics.hpp"
#include "convexpmf/solver.hpp"
#include "support/generators.hpp"

using namespace convexpmf;

namespace {

EmpiricalPmf emp(std::vector<std::int64_t> xs) { return empirical_from_samples(xs); }

FitResult handmade(MixtureWeights w, int final_L) {
  FitResult r;
  r.mixture = TriangularMixture(std::move(w));
  r.pmf = Pmf::unchecked(mixture_to_pmf(r.mixture));
  r.final_L = final_L;
  return r;
}

bool mentions(const CertificateReport& r, const std::string& needle) {
  for (const auto& f : r.failures) {
    if (f.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Losses, Examples) {
  const std::vector<double> p{1.0}, q{0.5, 0.5};
  const auto r = losses(p, q);
  EXPECT_DOUBLE_EQ(r.l2, 0.5);
  EXPECT_DOUBLE_EQ(r.kolmogorov, 0.5);
  EXPECT_DOUBLE_EQ(r.total_variation, 0.5);
  EXPECT_NEAR(r.hellinger, 1.0 - std::sqrt(0.5), 1e-15);

  const auto zero = losses(p, p);
  EXPECT_EQ(zero.l2, 0.0);
  EXPECT_EQ(zero.kolmogorov, 0.0);
  EXPECT_EQ(zero.hellinger, 0.0);
  EXPECT_EQ(zero.total_variation, 0.0);
}

TEST(Losses, DisjointSupportsAreMaximallyFar) {
  const std::vector<double> p{1.0}, q{0.0, 0.0, 1.0};
  const auto r = losses(p, q);
  EXPECT_DOUBLE_EQ(r.l2, 2.0);
  EXPECT_DOUBLE_EQ(r.kolmogorov, 1.0);
  EXPECT_DOUBLE_EQ(r.total_variation, 1.0);
  EXPECT_DOUBLE_EQ(r.hellinger, 1.0);
}

TEST(Losses, SymmetricAndOrdered) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = mixture_to_pmf(testgen::random_mixture(rng, 20, 3));
    const auto b = mixture_to_pmf(testgen::random_mixture(rng, 20, 3));
    const auto ab = losses(a, b), ba = losses(b, a);
    EXPECT_NEAR(ab.l2, ba.l2, 1e-15);
    EXPECT_NEAR(ab.hellinger, ba.hellinger, 1e-15);
    EXPECT_LE(ab.kolmogorov, ab.total_variation + 1e-15);
    EXPECT_LE(ab.hellinger, ab.total_variation + 1e-15);
  }
}

TEST(Moments, TriangleTwo) {
  const std::vector<double> t2{2.0 / 3, 1.0 / 3};
  const auto m = moments(t2, 0.0, 3);
  EXPECT_NEAR(m.mean, 1.0 / 3, 1e-15);
  EXPECT_NEAR(m.variance, 2.0 / 9, 1e-15);
  EXPECT_NEAR(m.entropy, -(2.0 / 3) * std::log(2.0 / 3) - (1.0 / 3) * std::log(1.0 / 3), 1e-15);
  EXPECT_DOUBLE_EQ(m.p0, 2.0 / 3);
  ASSERT_EQ(m.centered_moments.size(), 3u);
  for (int u = 1; u <= 3; ++u) EXPECT_NEAR(m.centered_moments.at(u), 1.0 / 3, 1e-15);
}

TEST(Moments, PointMassHasZeroEntropy) {
  EXPECT_EQ(entropy(std::vector<double>{1.0}), 0.0);
  EXPECT_EQ(entropy(std::vector<double>{0.0, 1.0, 0.0}), 0.0);
  EXPECT_NEAR(entropy(std::vector<double>{0.5, 0.5}), std::log(2.0), 1e-15);
}

TEST(ChangeOfSlope, KinksAreTheMixtureSupport) {
  const std::vector<double> f{1.0 / 2, 7.0 / 24, 1.0 / 6, 1.0 / 24};
  EXPECT_EQ(change_of_slope_points(f), (std::vector<std::size_t>{1, 3, 4}));

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto w = testgen::random_mixture(rng, 40, 5);
    std::vector<std::size_t> want;
    for (const auto& kv : w) want.push_back(static_cast<std::size_t>(kv.first));
    EXPECT_EQ(change_of_slope_points(mixture_to_pmf(w)), want);
  }
}

TEST(Certify, AcceptsExactProjection) {
  const auto e = emp({0, 0, 1, 2});
  const auto rep = certify(handmade({{1, 1.0 / 12}, {3, 0.5}, {4, 5.0 / 12}}, 4), e);
  EXPECT_TRUE(rep.passed());
  EXPECT_TRUE(rep.structure_ok);
  EXPECT_LE(rep.dj_max_abs_on_support, 1e-15);
  EXPECT_GE(rep.H_min_slack, -1e-15);
  EXPECT_LE(rep.H_equality_residual_at_kinks, 1e-15);
}

TEST(Certify, RejectsSuboptimalFit) {
  // T_2 is convex with unit mass but not the projection of (1/2, 1/4, 1/4).
  const auto rep = certify(handmade({{2, 1.0}}, 2), emp({0, 0, 1, 2}));
  EXPECT_FALSE(rep.passed());
  EXPECT_NEAR(rep.dj_max_abs_on_support, 5.0 / 36, 1e-15);
  EXPECT_TRUE(mentions(rep, "nonzero directional derivative on the support"));
}

TEST(Certify, RejectsFitWithTooLittleMass) {
  const auto rep = certify(handmade({{1, 0.5}}, 1), emp({0}));
  EXPECT_NEAR(rep.dj_min_off_support, -1.0 / 3, 1e-15);
  EXPECT_TRUE(mentions(rep, "negative directional derivative off the support"));
  EXPECT_TRUE(mentions(rep, "fitted mass differs from 1"));
}

TEST(Certify, RejectsMassAndConsistencyErrors) {
  const auto e = emp({0, 0, 0, 1});
  auto r = handmade({{1, 0.25}, {2, 0.75}}, 2);
  EXPECT_TRUE(certify(r, e).passed());

  r.pmf = Pmf::unchecked({0.75, 0.25 + 1e-6});
  const auto rep = certify(r, e);
  EXPECT_TRUE(mentions(rep, "does not match its mixture"));
  EXPECT_GT(rep.consistency_residual, 1e-7);

  const auto half = certify(handmade({{1, 0.125}, {2, 0.375}}, 2), e);
  EXPECT_TRUE(mentions(half, "fitted mass differs from 1"));
  EXPECT_NEAR(half.mass_residual, 0.5, 1e-15);
}

TEST(Certify, FlagsSlopeChangePastLargestObservation) {
  // Extra atom at j = 6 adds a kink beyond the data.
  const auto rep = certify(handmade({{1, 0.25}, {2, 0.70}, {6, 0.05}}, 6), emp({0, 0, 0, 1}));
  EXPECT_FALSE(rep.structure_ok);
  EXPECT_TRUE(mentions(rep, "past the largest observation"));
}

TEST(Certify, SolverFitsAlwaysPass) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto e = testgen::random_empirical(rng, 100, 30);
    const auto r = fit(e);
    const auto rep = certify(r, e);
    EXPECT_TRUE(rep.passed()) << (rep.failures.empty() ? "" : rep.failures.front());
  }
}
