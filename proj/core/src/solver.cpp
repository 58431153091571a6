#include "convexpmf/solver.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "convexpmf/criterion.hpp"
#include "convexpmf/errors.hpp"

namespace convexpmf {

int GrowthSchedule::next(int L) const {
  const int step = static_cast<int>(std::ceil(factor * static_cast<double>(L)));
  return L + std::max(min_step, step);
}

void SolverConfig::validate() const {
  if (!(d_tol > 0.0) || !(mass_tol > 0.0)) throw std::invalid_argument("solver tolerances must be > 0");
  if (max_outer < 1 || max_inner < 1) throw std::invalid_argument("solver iteration caps must be >= 1");
  if (!(prune_tol >= 0.0)) throw std::invalid_argument("prune_tol must be >= 0");
  if (!(growth.factor >= 0.0) || growth.min_step < 1) throw std::invalid_argument("invalid growth schedule");
  if (max_L < 1) throw std::invalid_argument("max_L must be >= 1");
}

namespace {

std::vector<int> keys_of(const MixtureWeights& w) {
  std::vector<int> keys;
  keys.reserve(w.size());
  for (const auto& kv : w) keys.push_back(kv.first);
  return keys;
}

double total_mass(const MixtureWeights& w) {
  double m = 0.0;
  for (const auto& kv : w) m += kv.second;
  return m;
}

MixtureWeights initial_iterate(int L, const EmpiricalPmf& empirical) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(L); ++i) {
    const double t = triangular_value(L, i);
    num += t * empirical[i];
    den += t * t;
  }
  return {{L, num / den}};
}

// j (j + 1) / 2 * d_j, the H-difference H_fit(j - 1) - H_emp(j - 1). d_j itself
// decays like 1 / j^2, so an absolute threshold on d_j accepts descent
// directions with large j.
double scaled(int j, double dj) { return 0.5 * static_cast<double>(j) * static_cast<double>(j + 1) * dj; }

bool meets_derivative_conditions(int L, const MixtureWeights& w, const EmpiricalPmf& empirical,
                                 double d_tol) {
  const auto d = directional_derivatives(L, w, empirical);
  for (int j = 1; j <= L; ++j) {
    const double hj = scaled(j, d[static_cast<std::size_t>(j - 1)]);
    if (hj < -d_tol || (w.contains(j) && std::abs(hj) > d_tol)) return false;
  }
  return true;
}

// Floating-point solves leave weights of order 1e-16 on directions whose
// exact coefficient is zero. Drop them when the smaller support is still
// optimal.
MixtureWeights prune_negligible(int L, MixtureWeights w, const EmpiricalPmf& empirical,
                                const SolverConfig& cfg) {
  std::vector<int> kept;
  for (const auto& [j, v] : w) {
    if (v >= cfg.prune_tol) kept.push_back(j);
  }
  if (kept.size() == w.size() || kept.empty()) return w;
  const auto star = restricted_minimizer(kept, empirical);
  MixtureWeights pruned;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    if (!(star[k] > 0.0)) return w;
    pruned.emplace(kept[k], star[k]);
  }
  if (!meets_derivative_conditions(L, pruned, empirical, cfg.d_tol)) return w;
  return pruned;
}

}  // namespace

FixedLResult fit_fixed_L(int L, const EmpiricalPmf& empirical, const SolverConfig& cfg,
                         const MixtureWeights& warm_start) {
  cfg.validate();
  if (L < 1 || static_cast<std::size_t>(L) < empirical.support_max() + 1) {
    throw std::invalid_argument("fit_fixed_L: L must be at least the largest observation + 1");
  }

  MixtureWeights current;
  for (const auto& [j, w] : warm_start) {
    if (j < 1 || j > L) throw std::invalid_argument("fit_fixed_L: warm start outside {1..L}");
    if (w > 0.0) current.emplace(j, w);
  }
  if (current.empty()) current = initial_iterate(L, empirical);

  FixedLResult out;
  int accepted = 0;
  out.trace.push_back({accepted, L, current.size(), criterion_Psi(current, empirical)});

  // Directions whose addition failed to produce a positive coefficient in
  // floating point. They are skipped until the support changes again.
  std::set<int> stalled;
  int steps = 0;
  auto count_step = [&] {
    if (++steps > cfg.max_inner) {
      throw SolverError("support reduction exceeded " + std::to_string(cfg.max_inner) +
                        " steps at L=" + std::to_string(L) + " (support size " +
                        std::to_string(current.size()) + ")");
    }
  };

  while (true) {
    count_step();
    const auto d = directional_derivatives(L, current, empirical);
    int add = 0;
    bool descent = false;
    double most_negative = 0.0;
    for (int j = 1; j <= L; ++j) {
      if (current.contains(j) || stalled.contains(j)) continue;
      const double dj = d[static_cast<std::size_t>(j - 1)];
      descent = descent || scaled(j, dj) < -cfg.d_tol;
      if (dj < most_negative) {
        most_negative = dj;
        add = j;
      }
    }
    if (!descent) break;

    MixtureWeights iterate = current;
    iterate.emplace(add, 0.0);
    while (true) {
      count_step();
      const auto support = keys_of(iterate);
      const auto star = restricted_minimizer(support, empirical);

      bool feasible = true;
      for (double v : star) feasible = feasible && v >= 0.0;
      if (feasible) {
        MixtureWeights next;
        for (std::size_t k = 0; k < support.size(); ++k) {
          if (star[k] > 0.0) next.emplace(support[k], star[k]);
        }
        if (!next.contains(add)) {
          stalled.insert(add);
        } else {
          stalled.clear();
        }
        current = std::move(next);
        out.trace.push_back({++accepted, L, current.size(), criterion_Psi(current, empirical)});
        break;
      }

      // Move to the boundary of the cone along star - iterate and drop the
      // coordinate that hits zero first.
      double step = std::numeric_limits<double>::infinity();
      std::size_t drop = 0;
      for (std::size_t k = 0; k < support.size(); ++k) {
        const double w = iterate.at(support[k]);
        if (star[k] < w) {
          const double e = w / (w - star[k]);
          if (e < step) {
            step = e;
            drop = k;
          }
        }
      }
      if (support[drop] == add) {
        // The new direction gets no positive weight: numerical stagnation.
        stalled.insert(add);
        break;
      }
      for (std::size_t k = 0; k < support.size(); ++k) {
        double& w = iterate.at(support[k]);
        w = std::max(0.0, w + step * (star[k] - w));
      }
      iterate.erase(support[drop]);
    }
  }

  out.weights = prune_negligible(L, std::move(current), empirical, cfg);
  out.objective = criterion_Psi(out.weights, empirical);
  return out;
}

FitResult fit(const EmpiricalPmf& empirical, const SolverConfig& cfg) {
  cfg.validate();
  FitResult result;

  auto finish = [&](MixtureWeights weights, int L) {
    result.mixture = TriangularMixture(std::move(weights));
    result.pmf = Pmf::unchecked(mixture_to_pmf(result.mixture));
    result.objective = criterion_Psi(result.mixture.weights(), empirical);
    result.final_L = L;
    result.certificate = certify(result, empirical, cfg.certify);
    return result;
  };

  if (empirical.support_max() == 0) {
    // Point mass at zero is already convex and is its own projection.
    const double objective = criterion_Psi({{1, 1.0}}, empirical);
    result.trace.push_back({0, 1, 1, objective});
    return finish({{1, 1.0}}, 1);
  }

  int L = static_cast<int>(empirical.support_max()) + 1;
  MixtureWeights warm;
  for (int round = 0; round < cfg.max_outer; ++round) {
    auto level = fit_fixed_L(L, empirical, cfg, warm);
    result.trace.insert(result.trace.end(), level.trace.begin(), level.trace.end());
    if (std::abs(total_mass(level.weights) - 1.0) <= cfg.mass_tol) {
      return finish(std::move(level.weights), L);
    }
    warm = std::move(level.weights);
    const int next = cfg.growth.next(L);
    if (next > cfg.max_L) {
      throw SolverError("fit: truncation would exceed max_L=" + std::to_string(cfg.max_L) +
                        " (last L=" + std::to_string(L) + ", mass=" + std::to_string(total_mass(warm)) +
                        ", support size " + std::to_string(warm.size()) + ")");
    }
    L = next;
  }
  throw SolverError("fit: mixture mass did not reach 1 within " + std::to_string(cfg.max_outer) +
                    " truncation rounds (last L=" + std::to_string(L) +
                    ", mass=" + std::to_string(total_mass(warm)) + ")");
}

}  // namespace convexpmf
