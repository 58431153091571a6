#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "convexpmf/pmf.hpp"

namespace convexpmf {

struct FitResult;

struct LossReport {
  double l2 = 0.0;               // sum (p - q)^2
  double kolmogorov = 0.0;       // sup |P - Q|
  double hellinger = 0.0;        // 1/2 sum (sqrt p - sqrt q)^2
  double total_variation = 0.0;  // 1/2 sum |p - q|
};

/// Losses between two pmfs, summed over the union of their supports.
LossReport losses(std::span<const double> p, std::span<const double> q);
LossReport losses(const Pmf& p, const Pmf& q);

struct MomentReport {
  double mean = 0.0;
  double variance = 0.0;
  /// u -> sum_i |i - center|^u p(i), for u = 1 .. u_max.
  std::map<int, double> centered_moments;
  double entropy = 0.0;  // nats, 0 log 0 = 0
  double p0 = 0.0;
};

MomentReport moments(std::span<const double> p, double center, int u_max = 4);
MomentReport moments(const Pmf& p, double center, int u_max = 4);

/// Shannon entropy in nats.
double entropy(std::span<const double> p);

struct CertifyTolerances {
  double d_tol = 1e-8;            // d_j >= -d_tol everywhere, |d_j| <= d_tol on support
  double h_slack = kTolerances.h_slack;
  double kink = kTolerances.kink;
  double kink_equality = kTolerances.kink_equality;
  double mass = 1e-8;
  double consistency = 1e-10;     // fitted pmf vs. mixture_to_pmf(mixture)
  int lookahead = 10;             // extra j beyond final_L
};

/// Runtime optimality certificate for a fitted convex pmf.
struct CertificateReport {
  double dj_min_off_support = 0.0;
  double dj_max_abs_on_support = 0.0;
  double H_min_slack = 0.0;
  double H_equality_residual_at_kinks = 0.0;
  double mass_residual = 0.0;
  double consistency_residual = 0.0;
  bool structure_ok = true;
  /// Names of violated conditions; empty iff the certificate passes.
  std::vector<std::string> failures;

  bool passed() const noexcept { return failures.empty(); }
};

/// Checks a fit against the empirical pmf it claims to project:
///   (a) derivative signs up to final_L + lookahead, zero on the support;
///   (b) H_fit >= H_emp, with equality at changes of slope;
///   (c) linear stretches and slope-change counts between observations;
///   (d) unit mass, and agreement of the stored pmf with its mixture.
/// Reports, never throws.
CertificateReport certify(const FitResult& fit, const EmpiricalPmf& empirical,
                          const CertifyTolerances& tol = {});

/// Indices l >= 1 where f(l-1) - 2 f(l) + f(l+1) > kink_tol.
std::vector<std::size_t> change_of_slope_points(std::span<const double> f,
                                                double kink_tol = kTolerances.kink);

}  // namespace convexpmf
