#include "convexpmf/criterion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

#include "convexpmf/errors.hpp"

namespace convexpmf {

double criterion_Q(std::span<const double> f, const EmpiricalPmf& empirical) {
  double quad = 0.0, cross = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    quad += f[i] * f[i];
    cross += f[i] * empirical[i];
  }
  return 0.5 * quad - cross;
}

double criterion_Psi(const MixtureWeights& weights, const EmpiricalPmf& empirical) {
  const auto f = mixture_to_pmf(weights);
  return criterion_Q(f, empirical);
}

double directional_derivative(int j, const MixtureWeights& weights,
                              const EmpiricalPmf& empirical) {
  if (j < 1) throw std::invalid_argument("directional derivative index must be >= 1");
  const auto f = mixture_to_pmf(weights);
  double d = 0.0;
  for (std::size_t l = 0; l < static_cast<std::size_t>(j); ++l) {
    const double fl = l < f.size() ? f[l] : 0.0;
    d += triangular_value(j, l) * (fl - empirical[l]);
  }
  return d;
}

std::vector<double> directional_derivatives(int count, const MixtureWeights& weights,
                                            const EmpiricalPmf& empirical) {
  if (count < 0) throw std::invalid_argument("derivative count must be >= 0");
  const auto f = mixture_to_pmf(weights);
  std::vector<double> d(static_cast<std::size_t>(count));
  double cum_r = 0.0;  // F_r(l)
  double cum_h = 0.0;  // H_r(l)
  for (std::size_t l = 0; l < d.size(); ++l) {
    const double fl = l < f.size() ? f[l] : 0.0;
    cum_r += fl - empirical[l];
    cum_h += cum_r;
    const double j = static_cast<double>(l + 1);
    d[l] = 2.0 * cum_h / (j * (j + 1.0));
  }
  return d;
}

std::vector<double> restricted_minimizer(std::span<const int> support,
                                         const EmpiricalPmf& empirical) {
  if (support.empty()) throw std::invalid_argument("restricted_minimizer: empty support");
  if (!std::is_sorted(support.begin(), support.end()) ||
      std::adjacent_find(support.begin(), support.end()) != support.end() || support.front() < 1) {
    throw std::invalid_argument("restricted_minimizer: support must be sorted, distinct, >= 1");
  }
  // Rows past max(support) only add a constant to the objective.
  const auto rows = static_cast<Eigen::Index>(support.back());
  const auto cols = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd target(rows);
  for (Eigen::Index i = 0; i < rows; ++i) target(i) = empirical[static_cast<std::size_t>(i)];
  for (Eigen::Index c = 0; c < cols; ++c) {
    const int j = support[static_cast<std::size_t>(c)];
    for (Eigen::Index i = 0; i < j; ++i) design(i, c) = triangular_value(j, static_cast<std::size_t>(i));
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-13);
  if (qr.rank() < cols) {
    throw SolverError("restricted_minimizer: triangular columns are numerically dependent");
  }
  const Eigen::VectorXd x = qr.solve(target);
  return {x.data(), x.data() + x.size()};
}

}  // namespace convexpmf
