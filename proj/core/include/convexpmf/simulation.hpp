#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "convexpmf/distributions.hpp"
#include "convexpmf/solver.hpp"

namespace convexpmf {

enum class Functional { L2, Kolmogorov, Hellinger, TotalVariation, Variance, Entropy, P0 };
enum class Estimator { Empirical, Constrained };

std::string_view to_string(Functional f) noexcept;
std::string_view to_string(Estimator e) noexcept;
/// Accepts "l2", "kolmogorov", "hellinger", "tv", "variance", "entropy", "p0".
std::optional<Functional> parse_functional(std::string_view name) noexcept;
/// Losses report mean risk; the rest report relative standard error.
bool is_loss(Functional f) noexcept;

const std::vector<Functional>& all_functionals();

struct ExperimentSpec {
  TrueDistribution distribution = TrueDistribution::triangular(1);
  std::vector<std::size_t> sample_sizes{10, 100, 1000};
  std::size_t replicates = 1000;
  std::uint64_t seed = 20120601;
  std::vector<Functional> functionals = all_functionals();
  SolverConfig solver{};

  /// Throws std::invalid_argument.
  void validate() const;
};

struct FunctionalSummary {
  Functional functional;
  Estimator estimator;
  double value = 0.0;      // mean risk, or relative standard error
  double mc_stderr = 0.0;  // Monte Carlo standard error of `value`
};

struct SizeResult {
  std::size_t n = 0;
  std::vector<FunctionalSummary> summaries;
  /// Replicates with l2(fit, truth) > l2(empirical, truth) + 1e-10.
  std::size_t dominance_violations = 0;
  /// Replicates with a non-convex empirical pmf where the l2 gain is < 1e-12.
  std::size_t strict_dominance_violations = 0;
  std::size_t certificate_failures = 0;
  double nonconvex_fraction = 0.0;

  const FunctionalSummary& summary(Functional f, Estimator e) const;
};

struct ExperimentResult {
  TrueDistribution distribution = TrueDistribution::triangular(1);
  std::size_t replicates = 0;
  std::vector<SizeResult> sizes;

  const SizeResult& at_size(std::size_t n) const;
};

struct RunOptions {
  /// Worker threads for replicates; 0 uses the hardware concurrency.
  unsigned threads = 0;
};

/// Replicate r of every sample size draws from seed ^ r. Output does not
/// depend on the thread count. Solver failures are rethrown as SolverError
/// naming the replicate.
ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options = {});

struct TableRow {
  std::string distribution;
  std::string param;
  std::size_t n = 0;
  std::string estimator;
  std::string functional;
  double value = 0.0;
  double mc_stderr = 0.0;
};

std::vector<TableRow> table_rows(const ExperimentResult& result);

struct CampaignResult {
  std::vector<ExperimentResult> experiments;
  std::vector<TableRow> rows;
  /// One message per spec that failed; the other specs still run.
  std::vector<std::string> failures;
};

CampaignResult run_campaign(const std::vector<ExperimentSpec>& specs, const RunOptions& options = {});

/// Geometric {.9,.5,.1}, triangular {20,5,2}, Poisson {.59,.8,1}, each at
/// n = 10, 100, 1000.
std::vector<ExperimentSpec> standard_grid(std::size_t replicates, std::uint64_t seed);

inline constexpr std::string_view kCsvHeader =
    "distribution,param,n,estimator,functional,value,mc_stderr";

/// Header line plus one line per row; floats in shortest round-trip form.
void write_csv(std::ostream& os, const std::vector<TableRow>& rows);

/// Shortest decimal that round-trips, "nan"/"inf"/"-inf" otherwise.
std::string format_double(double x);

}  // namespace convexpmf
