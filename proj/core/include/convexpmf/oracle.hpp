#pragma once

#include <vector>

#include "convexpmf/pmf.hpp"

namespace convexpmf::oracle {

// Reference solver for the convex least-squares projection: Lawson-Hanson
// nonnegative least squares on the explicit triangular design matrix.
// It shares no code with the support reduction solver beyond
// `triangular_value`, and is meant for tests and cross-checks only.

struct Problem {
  int L = 0;
  /// Row-major L x L: design[i * L + (j - 1)] = T_j(i).
  std::vector<double> design;
  /// Empirical pmf padded or cut to length L.
  std::vector<double> target;
};

/// Requires L >= max observed value + 1.
Problem make_problem(int L, const EmpiricalPmf& empirical);

struct Solution {
  /// coefficients[j - 1] = pi_j >= 0.
  std::vector<double> coefficients;
  /// min_j (A^T (A pi - b))_j; should be >= -1e-10.
  double min_gradient = 0.0;
  /// max_j |pi_j (A^T (A pi - b))_j|.
  double complementarity = 0.0;
  int iterations = 0;
};

/// min 1/2 ||A pi - b||^2 subject to pi >= 0. Throws SolverError past
/// `max_iterations` with the residuals in the message.
Solution solve(const Problem& problem, int max_iterations = 10000);

struct Fit {
  Pmf pmf = Pmf::unchecked({});
  TriangularMixture mixture;
  int final_L = 0;
  Solution last;
};

/// Grows L from max observed value + 1 (L += max(1, ceil(L / 2))) until the
/// NNLS solution has mass 1 within `mass_tol`.
Fit fit(const EmpiricalPmf& empirical, double mass_tol = 1e-8, int max_rounds = 60);

}  // namespace convexpmf::oracle
