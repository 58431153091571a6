#pragma once

#include <span>
#include <vector>

#include "convexpmf/pmf.hpp"

namespace convexpmf {

/// Q(f) = 1/2 sum f(i)^2 - sum f(i) p~(i).
double criterion_Q(std::span<const double> f, const EmpiricalPmf& empirical);

/// Psi(pi) = Q(sum_j pi_j T_j). Accepts signed coefficients.
double criterion_Psi(const MixtureWeights& weights, const EmpiricalPmf& empirical);

/// One-sided derivative of Psi at `weights` in the direction of the point
/// mass at j:  sum_{l < j} T_j(l) (f(l) - p~(l)), evaluated term by term.
double directional_derivative(int j, const MixtureWeights& weights,
                              const EmpiricalPmf& empirical);

/// All derivatives d_1 .. d_count at once, in O(count + |support| * J).
///
/// Uses sum_{l < j} (j - l) r(l) = H_r(j - 1) for the residual r = f - p~,
/// so d_j = 2 H_r(j - 1) / (j (j + 1)). Entry k of the result is d_{k+1}.
std::vector<double> directional_derivatives(int count, const MixtureWeights& weights,
                                            const EmpiricalPmf& empirical);

/// Minimizer of Psi over signed measures supported on `support`
/// (sorted, distinct, all >= 1). Solves the least-squares problem on the
/// triangular columns by Householder QR; coefficient k belongs to support[k].
/// Throws SolverError when the column block is numerically rank deficient.
std::vector<double> restricted_minimizer(std::span<const int> support,
                                         const EmpiricalPmf& empirical);

}  // namespace convexpmf
