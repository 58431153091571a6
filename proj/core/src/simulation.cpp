#include "convexpmf/simulation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "convexpmf/diagnostics.hpp"
#include "convexpmf/errors.hpp"

namespace convexpmf {
namespace {

constexpr std::size_t kFunctionalCount = 7;

std::size_t index_of(Functional f) { return static_cast<std::size_t>(f); }

struct Replicate {
  // [functional][estimator]: loss against the truth, or the functional itself.
  std::array<std::array<double, 2>, kFunctionalCount> value{};
  bool nonconvex = false;
  bool certified = true;
  double l2_empirical = 0.0;
  double l2_fit = 0.0;
};

double functional_of(Functional f, std::span<const double> estimate, std::span<const double> truth) {
  switch (f) {
    case Functional::L2: return losses(estimate, truth).l2;
    case Functional::Kolmogorov: return losses(estimate, truth).kolmogorov;
    case Functional::Hellinger: return losses(estimate, truth).hellinger;
    case Functional::TotalVariation: return losses(estimate, truth).total_variation;
    case Functional::Variance: return moments(estimate, 0.0, 0).variance;
    case Functional::Entropy: return entropy(estimate);
    case Functional::P0: return estimate.empty() ? 0.0 : estimate[0];
  }
  return 0.0;
}

Replicate run_replicate(const ExperimentSpec& spec, std::size_t n, std::size_t r) {
  const auto& truth = spec.distribution.pmf();
  const auto xs = sample(spec.distribution, n, spec.seed ^ static_cast<std::uint64_t>(r));
  const auto empirical = empirical_from_samples(xs);
  const auto fitted = fit(empirical, spec.solver);

  Replicate rep;
  rep.nonconvex = !is_convex(empirical);
  rep.certified = fitted.certificate.passed();
  rep.l2_empirical = losses(empirical.pmf(), truth).l2;
  rep.l2_fit = losses(fitted.pmf.probs(), truth.probs()).l2;
  for (Functional f : spec.functionals) {
    rep.value[index_of(f)][0] = functional_of(f, empirical.pmf().probs(), truth.probs());
    rep.value[index_of(f)][1] = functional_of(f, fitted.pmf.probs(), truth.probs());
  }
  return rep;
}

FunctionalSummary summarize(Functional f, Estimator e, const std::vector<Replicate>& reps,
                            double true_value) {
  const auto est = static_cast<std::size_t>(e);
  const double count = static_cast<double>(reps.size());
  // Per-replicate quantity averaged: the loss itself, or the squared error.
  std::vector<double> q(reps.size());
  for (std::size_t r = 0; r < reps.size(); ++r) {
    const double v = reps[r].value[index_of(f)][est];
    q[r] = is_loss(f) ? v : (v - true_value) * (v - true_value);
  }
  double mean = 0.0;
  for (double x : q) mean += x;
  mean /= count;
  double ss = 0.0;
  for (double x : q) ss += (x - mean) * (x - mean);
  const double se = reps.size() > 1 ? std::sqrt(ss / (count - 1.0) / count) : 0.0;

  FunctionalSummary s{f, e, 0.0, 0.0};
  if (is_loss(f)) {
    s.value = mean;
    s.mc_stderr = se;
  } else if (true_value == 0.0) {
    s.value = std::numeric_limits<double>::quiet_NaN();
    s.mc_stderr = std::numeric_limits<double>::quiet_NaN();
  } else {
    const double rmse = std::sqrt(mean);
    s.value = rmse / std::abs(true_value);
    // Delta method for sqrt(mean squared error).
    s.mc_stderr = rmse > 0.0 ? se / (2.0 * rmse * std::abs(true_value)) : 0.0;
  }
  return s;
}

unsigned worker_count(const RunOptions& options, std::size_t tasks) {
  unsigned t = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(tasks, 1)));
}

}  // namespace

std::string_view to_string(Functional f) noexcept {
  switch (f) {
    case Functional::L2: return "l2";
    case Functional::Kolmogorov: return "kolmogorov";
    case Functional::Hellinger: return "hellinger";
    case Functional::TotalVariation: return "tv";
    case Functional::Variance: return "variance";
    case Functional::Entropy: return "entropy";
    case Functional::P0: return "p0";
  }
  return {};
}

std::string_view to_string(Estimator e) noexcept {
  return e == Estimator::Empirical ? "empirical" : "constrained";
}

std::optional<Functional> parse_functional(std::string_view name) noexcept {
  for (Functional f : all_functionals()) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

bool is_loss(Functional f) noexcept {
  return f == Functional::L2 || f == Functional::Kolmogorov || f == Functional::Hellinger ||
         f == Functional::TotalVariation;
}

const std::vector<Functional>& all_functionals() {
  static const std::vector<Functional> all{Functional::L2,       Functional::Kolmogorov,
                                           Functional::Hellinger, Functional::TotalVariation,
                                           Functional::Variance, Functional::Entropy,
                                           Functional::P0};
  return all;
}

void ExperimentSpec::validate() const {
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (sample_sizes.empty()) throw std::invalid_argument("at least one sample size is required");
  for (auto n : sample_sizes) {
    if (n < 1) throw std::invalid_argument("sample sizes must be >= 1");
  }
  solver.validate();
}

const FunctionalSummary& SizeResult::summary(Functional f, Estimator e) const {
  for (const auto& s : summaries) {
    if (s.functional == f && s.estimator == e) return s;
  }
  throw std::out_of_range("functional '" + std::string(to_string(f)) + "' was not requested");
}

const SizeResult& ExperimentResult::at_size(std::size_t n) const {
  for (const auto& s : sizes) {
    if (s.n == n) return s;
  }
  throw std::out_of_range("sample size " + std::to_string(n) + " was not simulated");
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const RunOptions& options) {
  spec.validate();
  const std::size_t R = spec.replicates;
  const std::size_t tasks = spec.sample_sizes.size() * R;
  std::vector<std::vector<Replicate>> reps(spec.sample_sizes.size(), std::vector<Replicate>(R));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_task = tasks;
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks;) {
      const std::size_t size_idx = t / R, r = t % R;
      try {
        reps[size_idx][r] = run_replicate(spec, spec.sample_sizes[size_idx], r);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (t < error_task) {
          error_task = t;
          error = std::current_exception();
        }
      }
    }
  };
  const unsigned threads = worker_count(options, tasks);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (error) {
    const std::size_t n = spec.sample_sizes[error_task / R];
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw SolverError(spec.distribution.to_string() + " n=" + std::to_string(n) + " replicate " +
                        std::to_string(error_task % R) + ": " + e.what());
    }
  }

  ExperimentResult result;
  result.distribution = spec.distribution;
  result.replicates = R;
  const auto truth = spec.distribution.pmf().probs();
  for (std::size_t k = 0; k < spec.sample_sizes.size(); ++k) {
    SizeResult sr;
    sr.n = spec.sample_sizes[k];
    std::size_t nonconvex = 0;
    for (const auto& rep : reps[k]) {
      nonconvex += rep.nonconvex;
      sr.certificate_failures += !rep.certified;
      if (rep.l2_fit > rep.l2_empirical + 1e-10) ++sr.dominance_violations;
      if (rep.nonconvex && rep.l2_empirical - rep.l2_fit < 1e-12) ++sr.strict_dominance_violations;
    }
    sr.nonconvex_fraction = static_cast<double>(nonconvex) / static_cast<double>(R);
    for (Functional f : spec.functionals) {
      const double true_value = is_loss(f) ? 0.0 : functional_of(f, truth, truth);
      sr.summaries.push_back(summarize(f, Estimator::Empirical, reps[k], true_value));
      sr.summaries.push_back(summarize(f, Estimator::Constrained, reps[k], true_value));
    }
    result.sizes.push_back(std::move(sr));
  }
  return result;
}

std::vector<TableRow> table_rows(const ExperimentResult& result) {
  std::vector<TableRow> rows;
  for (const auto& size : result.sizes) {
    for (const auto& s : size.summaries) {
      rows.push_back({result.distribution.family(), result.distribution.parameter_text(), size.n,
                      std::string(to_string(s.estimator)), std::string(to_string(s.functional)),
                      s.value, s.mc_stderr});
    }
  }
  return rows;
}

CampaignResult run_campaign(const std::vector<ExperimentSpec>& specs, const RunOptions& options) {
  CampaignResult out;
  for (const auto& spec : specs) {
    try {
      auto result = run_experiment(spec, options);
      auto rows = table_rows(result);
      out.rows.insert(out.rows.end(), rows.begin(), rows.end());
      out.experiments.push_back(std::move(result));
    } catch (const std::exception& e) {
      out.failures.push_back(spec.distribution.to_string() + ": " + e.what());
    }
  }
  return out;
}

std::vector<ExperimentSpec> standard_grid(std::size_t replicates, std::uint64_t seed) {
  const std::vector<TrueDistribution> truths{
      TrueDistribution::geometric(0.9), TrueDistribution::geometric(0.5),
      TrueDistribution::geometric(0.1), TrueDistribution::triangular(20),
      TrueDistribution::triangular(5),  TrueDistribution::triangular(2),
      TrueDistribution::poisson(0.59),  TrueDistribution::poisson(0.8),
      TrueDistribution::poisson(1.0)};
  std::vector<ExperimentSpec> specs;
  for (const auto& d : truths) {
    ExperimentSpec s;
    s.distribution = d;
    s.replicates = replicates;
    s.seed = seed;
    specs.push_back(std::move(s));
  }
  return specs;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

void write_csv(std::ostream& os, const std::vector<TableRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.distribution << ',' << r.param << ',' << r.n << ',' << r.estimator << ','
       << r.functional << ',' << format_double(r.value) << ',' << format_double(r.mc_stderr) << '\n';
  }
}

}  // namespace convexpmf
