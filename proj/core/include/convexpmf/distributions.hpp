#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "convexpmf/pmf.hpp"

namespace convexpmf {

enum class DistributionKind { Geometric, Triangular, Poisson };

/// Convexity threshold of the Poisson family: 2 - sqrt(2).
inline constexpr double kPoissonConvexityThreshold = 0.58578643762690495119;

/// Tail mass dropped when materializing infinite-support distributions.
inline constexpr double kTruncationTail = 1e-12;

/// Ground-truth distribution for simulation studies.
///   Geometric(gamma): p(i) = gamma (1 - gamma)^i, gamma in (0, 1]
///   Triangular(j):    T_j, j >= 1
///   Poisson(lambda):  exp(-lambda) lambda^i / i!, lambda > 0
class TrueDistribution {
 public:
  static TrueDistribution geometric(double gamma);
  static TrueDistribution triangular(int j);
  static TrueDistribution poisson(double lambda);
  /// Parses "geom:0.5", "tri:20", "pois:1.0". Throws std::invalid_argument.
  static TrueDistribution parse(std::string_view text);

  DistributionKind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  /// "geom", "tri" or "pois".
  std::string family() const;
  /// Shortest round-trip text of the parameter.
  std::string parameter_text() const;
  /// family() + ":" + parameter_text()
  std::string to_string() const;

  /// Index one past the last materialized point.
  std::size_t truncation() const noexcept { return pmf_.size(); }
  /// Truncated where the dropped tail is below kTruncationTail, renormalized.
  const Pmf& pmf() const noexcept { return pmf_; }
  /// Cumulative sums of pmf(); the last entry is exactly 1.
  const std::vector<double>& cdf() const noexcept { return cdf_; }

 private:
  TrueDistribution(DistributionKind kind, double param);

  DistributionKind kind_;
  double param_;
  Pmf pmf_ = Pmf::unchecked({});
  std::vector<double> cdf_;
};

inline const Pmf& materialize(const TrueDistribution& d) { return d.pmf(); }

/// n i.i.d. draws by inverse CDF. The generator is std::mt19937_64 seeded
/// with `seed`, and uniforms are built from its top 53 bits, so output is
/// identical across platforms.
std::vector<std::int64_t> sample(const TrueDistribution& d, std::size_t n, std::uint64_t seed);

}  // namespace convexpmf
