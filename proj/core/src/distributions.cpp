#include "convexpmf/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <stdexcept>

namespace convexpmf {
namespace {

std::vector<double> geometric_probs(double gamma) {
  if (gamma == 1.0) return {1.0};
  // Keep i while the tail beyond i, (1 - gamma)^(i + 1), is not negligible.
  std::vector<double> p;
  double tail = 1.0;  // (1 - gamma)^i
  while (tail >= kTruncationTail) {
    p.push_back(gamma * tail);
    tail *= 1.0 - gamma;
  }
  return p;
}

std::vector<double> poisson_probs(double lambda) {
  std::vector<double> p;
  double term = std::exp(-lambda);
  double cum = 0.0;
  for (std::size_t i = 0;; ++i) {
    if (i > 0) term *= lambda / static_cast<double>(i);
    p.push_back(term);
    cum += term;
    if (static_cast<double>(i) > lambda && 1.0 - cum < kTruncationTail) break;
  }
  return p;
}

std::vector<double> normalized(std::vector<double> p) {
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return p;
}

}  // namespace

TrueDistribution::TrueDistribution(DistributionKind kind, double param) : kind_(kind), param_(param) {
  std::vector<double> probs;
  switch (kind) {
    case DistributionKind::Geometric:
      probs = normalized(geometric_probs(param));
      break;
    case DistributionKind::Triangular: {
      const int j = static_cast<int>(param);
      probs.resize(static_cast<std::size_t>(j));
      for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = triangular_value(j, i);
      break;
    }
    case DistributionKind::Poisson:
      probs = normalized(poisson_probs(param));
      break;
  }
  cdf_.resize(probs.size());
  double c = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) cdf_[i] = (c += probs[i]);
  cdf_.back() = 1.0;
  pmf_ = Pmf(std::move(probs));
}

TrueDistribution TrueDistribution::geometric(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("geometric parameter must be in (0, 1]");
  return {DistributionKind::Geometric, gamma};
}

TrueDistribution TrueDistribution::triangular(int j) {
  if (j < 1) throw std::invalid_argument("triangular parameter must be >= 1");
  return {DistributionKind::Triangular, static_cast<double>(j)};
}

TrueDistribution TrueDistribution::poisson(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda) || lambda > 1e6) {
    throw std::invalid_argument("poisson parameter must be in (0, 1e6]");
  }
  return {DistributionKind::Poisson, lambda};
}

TrueDistribution TrueDistribution::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("distribution must look like geom:G, tri:J or pois:L");
  }
  const auto family = text.substr(0, colon);
  const auto arg = text.substr(colon + 1);
  auto parse_number = [&](auto& out) {
    const auto* end = arg.data() + arg.size();
    const auto [ptr, ec] = std::from_chars(arg.data(), end, out);
    if (ec != std::errc{} || ptr != end || arg.empty()) {
      throw std::invalid_argument("bad distribution parameter '" + std::string(arg) + "'");
    }
  };
  if (family == "geom") {
    double g = 0;
    parse_number(g);
    return geometric(g);
  }
  if (family == "tri") {
    int j = 0;
    parse_number(j);
    return triangular(j);
  }
  if (family == "pois") {
    double l = 0;
    parse_number(l);
    return poisson(l);
  }
  throw std::invalid_argument("unknown distribution family '" + std::string(family) + "'");
}

std::string TrueDistribution::family() const {
  switch (kind_) {
    case DistributionKind::Geometric: return "geom";
    case DistributionKind::Triangular: return "tri";
    case DistributionKind::Poisson: return "pois";
  }
  return {};
}

std::string TrueDistribution::parameter_text() const {
  if (kind_ == DistributionKind::Triangular) return std::to_string(static_cast<int>(param_));
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, param_);
  return {buf, res.ptr};
}

std::string TrueDistribution::to_string() const { return family() + ":" + parameter_text(); }

std::vector<std::int64_t> sample(const TrueDistribution& d, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  const auto& cdf = d.cdf();
  std::vector<std::int64_t> out(n);
  for (auto& x : out) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;  // [0, 1)
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    x = static_cast<std::int64_t>(std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1));
  }
  return out;
}

}  // namespace convexpmf
