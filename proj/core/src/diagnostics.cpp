#include "convexpmf/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "convexpmf/solver.hpp"

namespace convexpmf {
namespace {

double at(std::span<const double> v, std::size_t i) { return i < v.size() ? v[i] : 0.0; }

std::string describe(const char* what, double value, double bound) {
  std::ostringstream os;
  os.precision(3);
  os << what << " (" << std::scientific << value << " vs tolerance " << bound << ")";
  return os.str();
}

}  // namespace

LossReport losses(std::span<const double> p, std::span<const double> q) {
  LossReport r;
  const std::size_t len = std::max(p.size(), q.size());
  double cdf_p = 0.0, cdf_q = 0.0;
  for (std::size_t i = 0; i <= len; ++i) {
    const double a = at(p, i), b = at(q, i);
    r.l2 += (a - b) * (a - b);
    r.total_variation += std::abs(a - b);
    const double h = std::sqrt(a) - std::sqrt(b);
    r.hellinger += h * h;
    cdf_p += a;
    cdf_q += b;
    r.kolmogorov = std::max(r.kolmogorov, std::abs(cdf_p - cdf_q));
  }
  r.total_variation *= 0.5;
  r.hellinger *= 0.5;
  return r;
}

LossReport losses(const Pmf& p, const Pmf& q) { return losses(p.probs(), q.probs()); }

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

MomentReport moments(std::span<const double> p, double center, int u_max) {
  MomentReport r;
  for (std::size_t i = 0; i < p.size(); ++i) r.mean += static_cast<double>(i) * p[i];
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double dev = static_cast<double>(i) - r.mean;
    r.variance += dev * dev * p[i];
  }
  for (int u = 1; u <= u_max; ++u) {
    double m = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      m += std::pow(std::abs(static_cast<double>(i) - center), u) * p[i];
    }
    r.centered_moments[u] = m;
  }
  r.entropy = entropy(p);
  r.p0 = at(p, 0);
  return r;
}

MomentReport moments(const Pmf& p, double center, int u_max) {
  return moments(p.probs(), center, u_max);
}

std::vector<std::size_t> change_of_slope_points(std::span<const double> f, double kink_tol) {
  std::vector<std::size_t> kinks;
  for (std::size_t l = 1; l <= f.size(); ++l) {
    if (at(f, l - 1) - 2.0 * at(f, l) + at(f, l + 1) > kink_tol) kinks.push_back(l);
  }
  return kinks;
}

CertificateReport certify(const FitResult& fit, const EmpiricalPmf& empirical,
                          const CertifyTolerances& tol) {
  CertificateReport rep;
  const auto f = fit.pmf.probs();
  const auto& weights = fit.mixture.weights();
  const auto g = mixture_to_pmf(fit.mixture);

  // (d) bookkeeping: the stored pmf must be the mixture's pmf.
  for (std::size_t i = 0; i < std::max(f.size(), g.size()); ++i) {
    rep.consistency_residual = std::max(rep.consistency_residual, std::abs(at(f, i) - at(g, i)));
  }
  rep.mass_residual = std::abs(fit.pmf.mass() - 1.0);

  // (a) derivative conditions, evaluated termwise from the mixture.
  const int window = std::max({fit.final_L, fit.mixture.max_support(),
                               static_cast<int>(empirical.support_max()) + 1}) +
                     tol.lookahead;
  rep.dj_min_off_support = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= window; ++j) {
    double d = 0.0;
    for (std::size_t l = 0; l < static_cast<std::size_t>(j); ++l) {
      d += triangular_value(j, l) * (at(g, l) - empirical[l]);
    }
    if (weights.contains(j)) {
      rep.dj_max_abs_on_support = std::max(rep.dj_max_abs_on_support, std::abs(d));
    } else {
      rep.dj_min_off_support = std::min(rep.dj_min_off_support, d);
    }
  }
  if (std::isinf(rep.dj_min_off_support)) rep.dj_min_off_support = 0.0;

  // (b) H_fit(l-1) >= H_emp(l-1) for l >= 1, equality at changes of slope.
  const auto emp = empirical.pmf().probs();
  const std::size_t horizon = std::max(f.size(), emp.size()) + 2;
  std::vector<double> gap(horizon);
  {
    double F_fit = 0.0, F_emp = 0.0, H_fit = 0.0, H_emp = 0.0;
    for (std::size_t m = 0; m < horizon; ++m) {
      F_fit += at(f, m);
      F_emp += at(emp, m);
      H_fit += F_fit;
      H_emp += F_emp;
      gap[m] = H_fit - H_emp;
    }
  }
  rep.H_min_slack = *std::min_element(gap.begin(), gap.end());
  const auto kinks = change_of_slope_points(f, tol.kink);
  for (std::size_t l : kinks) {
    rep.H_equality_residual_at_kinks = std::max(rep.H_equality_residual_at_kinks, std::abs(gap[l - 1]));
  }

  // (c) structure of the fit relative to the observed values.
  const auto& xs = empirical.distinct_values();
  const auto is_kink = [&](std::size_t l) { return std::binary_search(kinks.begin(), kinks.end(), l); };
  std::vector<std::string> structure;
  for (std::size_t l = 1; l <= xs.front(); ++l) {
    if (is_kink(l)) {
      structure.push_back("slope change at " + std::to_string(l) + " before the smallest observation + 1");
      break;
    }
  }
  const std::size_t s_emp = empirical.support_max();
  const std::size_t s_fit = f.empty() ? 0 : f.size() - 1;
  for (std::size_t l = std::max<std::size_t>(s_emp, 1); l < s_fit; ++l) {
    if (is_kink(l)) {
      structure.push_back("slope change at " + std::to_string(l) + " past the largest observation");
      break;
    }
  }
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    std::vector<std::size_t> inside;
    for (std::size_t l : kinks) {
      if (l > xs[k] && l < xs[k + 1]) inside.push_back(l);
    }
    if (inside.size() > 2 || (inside.size() == 2 && inside[1] != inside[0] + 1)) {
      structure.push_back("more than one slope-change block between observations " +
                          std::to_string(xs[k]) + " and " + std::to_string(xs[k + 1]));
    }
  }
  rep.structure_ok = structure.empty();

  if (rep.dj_min_off_support < -tol.d_tol) {
    rep.failures.push_back(describe("negative directional derivative off the support",
                                    rep.dj_min_off_support, tol.d_tol));
  }
  if (rep.dj_max_abs_on_support > tol.d_tol) {
    rep.failures.push_back(describe("nonzero directional derivative on the support",
                                    rep.dj_max_abs_on_support, tol.d_tol));
  }
  if (rep.H_min_slack < -tol.h_slack) {
    rep.failures.push_back(describe("H_fit below H_empirical", rep.H_min_slack, tol.h_slack));
  }
  if (rep.H_equality_residual_at_kinks > tol.kink_equality) {
    rep.failures.push_back(describe("H equality violated at a change of slope",
                                    rep.H_equality_residual_at_kinks, tol.kink_equality));
  }
  if (rep.mass_residual > tol.mass) {
    rep.failures.push_back(describe("fitted mass differs from 1", rep.mass_residual, tol.mass));
  }
  if (rep.consistency_residual > tol.consistency) {
    rep.failures.push_back(describe("fitted pmf does not match its mixture",
                                    rep.consistency_residual, tol.consistency));
  }
  for (auto& s : structure) rep.failures.push_back("structure: " + std::move(s));
  return rep;
}

}  // namespace convexpmf
