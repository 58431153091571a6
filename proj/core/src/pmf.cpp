#include "convexpmf/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "convexpmf/errors.hpp"

namespace convexpmf {
namespace {

void strip_trailing_zeros(std::vector<double>& v) {
  while (!v.empty() && v.back() == 0.0) v.pop_back();
}

// Neumaier-compensated sum; pmfs here can have hundreds of tiny entries.
double stable_sum(std::span<const double> v) {
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

Pmf::Pmf(std::vector<double> probs, double sum_tol) : probs_(std::move(probs)) {
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] >= 0.0) || !std::isfinite(probs_[i])) {
      throw std::invalid_argument("pmf entry " + std::to_string(i) +
                                  " is negative or not finite");
    }
  }
  strip_trailing_zeros(probs_);
  const double total = stable_sum(probs_);
  if (std::abs(total - 1.0) > sum_tol) {
    throw std::invalid_argument("pmf entries sum to " + std::to_string(total) +
                                ", expected 1");
  }
}

Pmf Pmf::point_mass(std::size_t at) {
  std::vector<double> probs(at + 1, 0.0);
  probs[at] = 1.0;
  return Pmf(std::move(probs));
}

Pmf Pmf::unchecked(std::vector<double> probs) {
  Pmf p;
  p.probs_ = std::move(probs);
  strip_trailing_zeros(p.probs_);
  return p;
}

double Pmf::mass() const noexcept { return stable_sum(probs_); }

EmpiricalPmf::EmpiricalPmf(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
  while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
  n_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
  if (n_ == 0) throw std::invalid_argument("no observations");
  std::vector<double> probs(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    probs[i] = static_cast<double>(counts_[i]) / static_cast<double>(n_);
    if (counts_[i] > 0) distinct_.push_back(i);
  }
  pmf_ = Pmf(std::move(probs));
}

TriangularMixture::TriangularMixture(MixtureWeights weights) {
  for (const auto& [j, w] : weights) {
    if (j < 1) throw std::invalid_argument("mixture index must be >= 1");
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("mixture weight at j=" + std::to_string(j) +
                                  " is negative or not finite");
    }
    if (w > 0.0) weights_.emplace(j, w);
  }
}

double TriangularMixture::weight(int j) const noexcept {
  const auto it = weights_.find(j);
  return it == weights_.end() ? 0.0 : it->second;
}

double TriangularMixture::mass() const noexcept {
  std::vector<double> w;
  w.reserve(weights_.size());
  for (const auto& kv : weights_) w.push_back(kv.second);
  return stable_sum(w);
}

double triangular_value(int j, std::size_t i) {
  if (j < 1) throw std::invalid_argument("triangular index must be >= 1");
  const auto ju = static_cast<std::size_t>(j);
  if (i >= ju) return 0.0;
  const double jd = j;
  return 2.0 * static_cast<double>(ju - i) / (jd * (jd + 1.0));
}

std::vector<double> mixture_to_pmf(const MixtureWeights& weights) {
  if (weights.empty()) return {};
  if (weights.begin()->first < 1) throw std::invalid_argument("mixture index must be >= 1");
  const auto len = static_cast<std::size_t>(weights.rbegin()->first);
  std::vector<double> f(len, 0.0);
  for (const auto& [j, w] : weights) {
    if (w == 0.0) continue;
    const double jd = j;
    const double scale = 2.0 * w / (jd * (jd + 1.0));
    for (std::size_t i = 0; i < static_cast<std::size_t>(j); ++i) {
      f[i] += scale * static_cast<double>(static_cast<std::size_t>(j) - i);
    }
  }
  return f;
}

std::vector<double> mixture_to_pmf(const TriangularMixture& mixture) {
  return mixture_to_pmf(mixture.weights());
}

namespace {

double at(std::span<const double> f, std::size_t i) { return i < f.size() ? f[i] : 0.0; }

std::size_t last_nonzero_plus_one(std::span<const double> f) {
  std::size_t len = f.size();
  while (len > 0 && f[len - 1] == 0.0) --len;
  return len;
}

}  // namespace

ConvexityCheck is_convex(std::span<const double> f, double tol) {
  // With s = len - 1, second differences at i > s + 1 vanish identically.
  const std::size_t len = last_nonzero_plus_one(f);
  for (std::size_t i = 1; i <= len; ++i) {
    const double d2 = at(f, i - 1) - 2.0 * at(f, i) + at(f, i + 1);
    if (d2 < -tol) return {false, i};
  }
  return {true, std::nullopt};
}

ConvexityCheck is_convex(const Pmf& p, double tol) { return is_convex(p.probs(), tol); }

ConvexityCheck is_convex(const EmpiricalPmf& empirical) {
  const auto c = empirical.counts();
  auto count = [&](std::size_t i) -> std::int64_t {
    return i < c.size() ? static_cast<std::int64_t>(c[i]) : 0;
  };
  for (std::size_t i = 1; i <= c.size(); ++i) {
    if (count(i - 1) - 2 * count(i) + count(i + 1) < 0) return {false, i};
  }
  return {true, std::nullopt};
}

TriangularMixture pmf_to_mixture(std::span<const double> f, double tol) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 0.0) throw std::invalid_argument("pmf_to_mixture: negative entry at " + std::to_string(i));
  }
  if (const auto check = is_convex(f, tol); !check) {
    throw NotConvexError(*check.violating_index,
                         "pmf_to_mixture: vector is not convex at index " +
                             std::to_string(*check.violating_index));
  }
  const std::size_t len = last_nonzero_plus_one(f);
  MixtureWeights weights;
  for (std::size_t j = 1; j <= len; ++j) {
    const double d2 = at(f, j + 1) + at(f, j - 1) - 2.0 * at(f, j);
    if (d2 <= 0.0) continue;
    const double jd = static_cast<double>(j);
    weights.emplace(static_cast<int>(j), 0.5 * jd * (jd + 1.0) * d2);
  }
  return TriangularMixture(std::move(weights));
}

double cumulative_F(std::span<const double> p, std::int64_t j) {
  if (j < 0) return 0.0;
  const auto upto = std::min(static_cast<std::size_t>(j) + 1, p.size());
  return stable_sum(p.first(upto));
}

double cumulative_H(std::span<const double> p, std::int64_t j) {
  if (j < 0) return 0.0;
  // H(j) = sum_{i <= j} (j - i + 1) p(i)
  double h = 0.0;
  const auto upto = std::min(static_cast<std::size_t>(j) + 1, p.size());
  for (std::size_t i = 0; i < upto; ++i) {
    h += static_cast<double>(static_cast<std::size_t>(j) - i + 1) * p[i];
  }
  return h;
}

EmpiricalPmf empirical_from_samples(std::span<const std::int64_t> xs) {
  if (xs.empty()) throw std::invalid_argument("no observations");
  std::int64_t hi = 0;
  for (auto x : xs) {
    if (x < 0) throw std::invalid_argument("observations must be nonnegative, got " + std::to_string(x));
    if (x > kMaxObservedValue) throw std::invalid_argument("observation too large: " + std::to_string(x));
    hi = std::max(hi, x);
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(hi) + 1, 0);
  for (auto x : xs) ++counts[static_cast<std::size_t>(x)];
  return EmpiricalPmf(std::move(counts));
}

}  // namespace convexpmf
