#pragma once

#include <string>
#include <utility>
#include <vector>

#include "subgauss/transform.hpp"

namespace subgauss {

// (p - q) / (2 (log p - log q)), q = 1 - p: the optimal subgaussian constant of
// the centered Bernoulli law. OutOfRange unless 0 < p < 1.
double kearns_saul(double p);

inline constexpr double kDefaultTCap = 50.0;

struct ProxyVariance {
  double value = 0.0;       // sup_{t != 0} 2K(t)/t^2 over |t| <= t_cap
  double worst_t = 0.0;     // where the sup is attained (0 for the t -> 0 limit)
  double curvature = 0.0;   // K''(0)
  bool at_cap = false;      // sup attained at |t| = t_cap
  double t_cap = 0.0;
};

ProxyVariance proxy_variance_report(const TransformHandle& h, double t_cap = kDefaultTCap);
double proxy_variance(const TransformHandle& h, double t_cap = kDefaultTCap);

struct Separation {
  double t0 = 0.0;
  double value = 0.0;  // sup_{t0 <= |t| <= t_cap} 2K(t)/t^2
  double worst_t = 0.0;
  bool at_cap = false;
};

Separation separation_report(const TransformHandle& h, double t0, double t_cap = kDefaultTCap);
double separation_constant(const TransformHandle& h, double t0, double t_cap = kDefaultTCap);

// Concavity of s -> K(sqrt s) on a log-spaced grid over [1e-4, t_cap^2].
bool concavity_check_sqrtK(const TransformHandle& h, double t_cap = kDefaultTCap);

// proxy <= variance (1 + 1e-8) + 1e-12
bool strict_verdict(double variance, double proxy);

struct SubgaussReport {
  std::string subject;
  double variance = 0.0;
  double proxy_variance = 0.0;
  bool strict = false;
  std::vector<std::pair<double, double>> separation;  // (t0, c(t0))
  bool concave_sqrt_K = false;
  double worst_t = 0.0;
  double t_cap = 0.0;
  bool sup_at_cap = false;
};

// Full report; t_cap is clipped to the trust radius of sampled densities.
SubgaussReport verify_handle(const TransformHandle& h, const std::vector<double>& t0s = {0.5, 1.0, 2.0},
                             double t_cap = kDefaultTCap);

}  // namespace subgauss
