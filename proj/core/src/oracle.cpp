#include "convexpmf/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "convexpmf/errors.hpp"

namespace convexpmf::oracle {
namespace {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kGradientTol = 1e-13;
constexpr int kMaxL = 4000;

Eigen::VectorXd solve_on(const Matrix& A, const Eigen::VectorXd& b, const std::vector<bool>& passive) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
  }
  Eigen::MatrixXd sub(A.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = A.col(cols[k]);
  const Eigen::VectorXd zs = sub.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(A.cols());
  for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = zs(static_cast<Eigen::Index>(k));
  return z;
}

}  // namespace

Problem make_problem(int L, const EmpiricalPmf& empirical) {
  if (L < 1 || static_cast<std::size_t>(L) < empirical.support_max() + 1) {
    throw std::invalid_argument("oracle: L must be at least the largest observation + 1");
  }
  Problem p;
  p.L = L;
  const auto n = static_cast<std::size_t>(L);
  p.design.assign(n * n, 0.0);
  p.target.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    p.target[i] = empirical[i];
    for (std::size_t j = 1; j <= n; ++j) p.design[i * n + (j - 1)] = triangular_value(static_cast<int>(j), i);
  }
  return p;
}

Solution solve(const Problem& problem, int max_iterations) {
  const auto n = static_cast<Eigen::Index>(problem.L);
  const Eigen::Map<const Matrix> A(problem.design.data(), n, n);
  const Eigen::Map<const Eigen::VectorXd> b(problem.target.data(), n);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  // Columns that entered and immediately left again in floating point; they
  // are skipped until the passive set changes.
  std::vector<bool> blocked(static_cast<std::size_t>(n), false);
  Eigen::VectorXd w = A.transpose() * (b - A * x);
  Solution sol;

  while (true) {
    Eigen::Index best = -1;
    double best_w = kGradientTol;
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto u = static_cast<std::size_t>(j);
      if (!passive[u] && !blocked[u] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    if (++sol.iterations > max_iterations) {
      throw SolverError("oracle NNLS exceeded " + std::to_string(max_iterations) +
                        " iterations (max gradient " + std::to_string(best_w) + ")");
    }
    passive[static_cast<std::size_t>(best)] = true;

    while (true) {
      const Eigen::VectorXd z = solve_on(A, b, passive);
      double alpha = std::numeric_limits<double>::infinity();
      Eigen::Index blocking = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
          const double a = x(j) / (x(j) - z(j));
          if (a < alpha) {
            alpha = a;
            blocking = j;
          }
        }
      }
      if (blocking < 0) {
        x = z;
        break;
      }
      x += alpha * (z - x);
      x(blocking) = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto u = static_cast<std::size_t>(j);
        if (passive[u] && x(j) <= 0.0) {
          passive[u] = false;
          x(j) = 0.0;
        }
      }
    }
    if (x(best) > 0.0) {
      std::fill(blocked.begin(), blocked.end(), false);
    } else {
      blocked[static_cast<std::size_t>(best)] = true;
    }
    w = A.transpose() * (b - A * x);
  }

  const Eigen::VectorXd grad = A.transpose() * (A * x - b);
  sol.coefficients.assign(x.data(), x.data() + n);
  sol.min_gradient = grad.minCoeff();
  sol.complementarity = x.cwiseProduct(grad).cwiseAbs().maxCoeff();
  return sol;
}

Fit fit(const EmpiricalPmf& empirical, double mass_tol, int max_rounds) {
  int L = static_cast<int>(empirical.support_max()) + 1;
  for (int round = 0; round < max_rounds; ++round) {
    Solution sol = solve(make_problem(L, empirical));
    const double mass = std::accumulate(sol.coefficients.begin(), sol.coefficients.end(), 0.0);
    if (std::abs(mass - 1.0) <= mass_tol) {
      MixtureWeights weights;
      for (std::size_t k = 0; k < sol.coefficients.size(); ++k) {
        if (sol.coefficients[k] > 0.0) weights.emplace(static_cast<int>(k + 1), sol.coefficients[k]);
      }
      Fit out;
      out.mixture = TriangularMixture(std::move(weights));
      out.pmf = Pmf::unchecked(mixture_to_pmf(out.mixture));
      out.final_L = L;
      out.last = std::move(sol);
      return out;
    }
    L += std::max(1, (L + 1) / 2);
    if (L > kMaxL) {
      throw SolverError("oracle fit: L would exceed " + std::to_string(kMaxL) + " (dense design)");
    }
  }
  throw SolverError("oracle fit: mass did not reach 1 within " + std::to_string(max_rounds) + " rounds");
}

}  // namespace convexpmf::oracle
