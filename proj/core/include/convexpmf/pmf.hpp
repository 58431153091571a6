#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "convexpmf/tolerances.hpp"

namespace convexpmf {

/// Probability mass function on {0, 1, 2, ...} with finite support.
///
/// Stored densely from index 0; trailing zeros are stripped so that
/// `size() == support_max() + 1`. The checked constructor requires
/// nonnegative entries summing to one. `Pmf::unchecked` builds the same
/// representation for sub-probability vectors produced during fitting.
class Pmf {
 public:
  explicit Pmf(std::vector<double> probs, double sum_tol = kTolerances.pmf_sum);

  static Pmf point_mass(std::size_t at);
  static Pmf unchecked(std::vector<double> probs);

  /// Probability at `i`; zero past the stored support.
  double operator[](std::size_t i) const noexcept {
    return i < probs_.size() ? probs_[i] : 0.0;
  }
  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  /// Largest index with positive mass, or -1 when everything is zero.
  std::ptrdiff_t support_max() const noexcept {
    return static_cast<std::ptrdiff_t>(probs_.size()) - 1;
  }
  double mass() const noexcept;

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  Pmf() = default;
  std::vector<double> probs_;
};

/// Empirical estimator built from integer observations.
class EmpiricalPmf {
 public:
  /// `counts[i]` is the number of observations equal to i.
  explicit EmpiricalPmf(std::vector<std::uint64_t> counts);

  const Pmf& pmf() const noexcept { return pmf_; }
  std::uint64_t n() const noexcept { return n_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  const std::vector<std::size_t>& distinct_values() const noexcept { return distinct_; }
  /// Largest observed value.
  std::size_t support_max() const noexcept { return distinct_.back(); }
  std::size_t min_value() const noexcept { return distinct_.front(); }
  double operator[](std::size_t i) const noexcept { return pmf_[i]; }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t n_ = 0;
  std::vector<std::size_t> distinct_;
  Pmf pmf_ = Pmf::unchecked({});
};

/// Coefficients of the triangular basis, keyed by j >= 1. Signed maps of the
/// same shape are used for solver iterates.
using MixtureWeights = std::map<int, double>;

/// Nonnegative finite measure on {1, 2, ...}.
class TriangularMixture {
 public:
  TriangularMixture() = default;
  /// Drops exact zeros; throws on j < 1 or negative weights.
  explicit TriangularMixture(MixtureWeights weights);

  const MixtureWeights& weights() const noexcept { return weights_; }
  double weight(int j) const noexcept;
  double mass() const noexcept;
  /// Largest j carrying weight, 0 for the empty mixture.
  int max_support() const noexcept {
    return weights_.empty() ? 0 : weights_.rbegin()->first;
  }
  bool empty() const noexcept { return weights_.empty(); }

 private:
  MixtureWeights weights_;
};

/// T_j(i) = 2(j - i) / (j(j + 1)) for i < j, else 0. Throws for j < 1.
double triangular_value(int j, std::size_t i);

/// f(i) = sum_{j > i} pi_j T_j(i). The result has length max(j) (the
/// support is contained in {0, ..., J - 1}); weights may be signed.
std::vector<double> mixture_to_pmf(const MixtureWeights& weights);
std::vector<double> mixture_to_pmf(const TriangularMixture& mixture);

struct ConvexityCheck {
  bool convex = true;
  /// First i >= 1 where f(i-1) - 2 f(i) + f(i+1) < -tol.
  std::optional<std::size_t> violating_index;

  explicit operator bool() const noexcept { return convex; }
};

/// Second-difference convexity test on the zero extension of `f`, checked
/// for i = 1 .. s + 1 where s is the last stored index.
ConvexityCheck is_convex(std::span<const double> f,
                         double tol = kTolerances.convexity_real);
ConvexityCheck is_convex(const Pmf& p, double tol = kTolerances.convexity_real);
/// Exact integer test on the observation counts.
ConvexityCheck is_convex(const EmpiricalPmf& empirical);

/// Inverse of `mixture_to_pmf` on convex vectors:
/// pi_j = j(j+1)/2 * (f(j+1) + f(j-1) - 2 f(j)) for 1 <= j <= s + 1.
/// Throws NotConvexError naming the first violating index. Second
/// differences within `tol` below zero are clamped to zero.
TriangularMixture pmf_to_mixture(std::span<const double> f,
                                 double tol = kTolerances.convexity_real);

/// F_p(j) = sum_{i <= j} p(i); zero for j < 0.
double cumulative_F(std::span<const double> p, std::int64_t j);
/// H_p(j) = sum_{i <= j} F_p(i); zero for j < 0.
double cumulative_H(std::span<const double> p, std::int64_t j);

/// Frequencies of the observed values. Throws std::invalid_argument on empty
/// input, negative values, or values above kMaxObservedValue.
EmpiricalPmf empirical_from_samples(std::span<const std::int64_t> xs);

/// Dense storage bound for observed values.
inline constexpr std::int64_t kMaxObservedValue = 10'000'000;

}  // namespace convexpmf
