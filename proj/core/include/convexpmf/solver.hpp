#pragma once

#include <cstddef>
#include <vector>

#include "convexpmf/diagnostics.hpp"
#include "convexpmf/pmf.hpp"

namespace convexpmf {

/// Truncation schedule: L_next = L + max(min_step, ceil(factor * L)).
struct GrowthSchedule {
  double factor = 0.5;
  int min_step = 1;

  int next(int L) const;
};

struct SolverConfig {
  /// Step 1 stops when j (j + 1) / 2 * d_j >= -d_tol for every j, which
  /// implies d_j >= -d_tol.
  double d_tol = 1e-10;
  double mass_tol = 1e-8;   // |sum pi - 1| stopping rule
  GrowthSchedule growth{};
  int max_outer = 60;       // truncation rounds
  int max_L = 1'000'000;    // hard cap on the truncation level
  int max_inner = 10000;    // add/prune steps per truncation level
  double prune_tol = 1e-8;  // weights below this are dropped if optimality survives
  CertifyTolerances certify{};

  /// Throws std::invalid_argument on nonpositive tolerances or caps.
  void validate() const;
};

struct TraceRecord {
  int iteration = 0;
  int L = 0;
  std::size_t active_set_size = 0;
  double objective = 0.0;
};

/// Minimizer of Psi over nonnegative measures on {1..L}.
struct FixedLResult {
  MixtureWeights weights;  // strictly positive entries only
  double objective = 0.0;
  std::vector<TraceRecord> trace;
};

struct FitResult {
  Pmf pmf = Pmf::unchecked({});
  TriangularMixture mixture;
  double objective = 0.0;
  int final_L = 0;
  std::vector<TraceRecord> trace;
  CertificateReport certificate;
};

/// Support reduction over {1..L}. Starts from `warm_start` when it is
/// nonempty (it must be the minimizer over the cone spanned by its own
/// support, e.g. the result for a smaller L), otherwise from the best
/// multiple of T_L. Requires L >= max observed value + 1. Weights below
/// cfg.prune_tol are removed at the end when the pruned support still meets
/// the derivative conditions.
/// Throws SolverError when max_inner is exceeded.
FixedLResult fit_fixed_L(int L, const EmpiricalPmf& empirical, const SolverConfig& cfg = {},
                         const MixtureWeights& warm_start = {});

/// Least-squares convex pmf: grows L until the restricted minimizer has
/// unit mass, then certifies the result.
FitResult fit(const EmpiricalPmf& empirical, const SolverConfig& cfg = {});

}  // namespace convexpmf
