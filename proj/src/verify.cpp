#include "subgauss/verify.hpp"

#include <algorithm>
#include <cmath>

#include "subgauss/error.hpp"

namespace subgauss {

double kearns_saul(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::OutOfRange, "kearns_saul needs 0 < p < 1");
  // log(p/q) = 2 atanh(p - q), stable through p = 1/2.
  const double d = p - 0.5;
  if (d == 0.0) return 0.25;
  return d / (2.0 * std::atanh(2.0 * d));
}

namespace {

double checked_K(const TransformHandle& h, double t) {
  const double k = h.K(t);
  if (!std::isfinite(k)) throw Error(ErrorCode::TransformDiverged, "K(t) is not finite at t = " + std::to_string(t));
  return k;
}

double ratio(const TransformHandle& h, double t) { return 2.0 * checked_K(h, t) / (t * t); }

// K''(0) from central second differences, one Richardson step.
double curvature_at_zero(const TransformHandle& h) {
  constexpr double step = 1e-4;
  const double k0 = checked_K(h, 0.0);
  auto d2 = [&](double s) { return (checked_K(h, s) + checked_K(h, -s) - 2.0 * k0) / (s * s); };
  return (4.0 * d2(0.5 * step) - d2(step)) / 3.0;
}

double effective_cap(const TransformHandle& h, double t_cap) {
  if (!(t_cap > 0.0)) throw Error(ErrorCode::InvalidArgument, "t_cap must be positive");
  if (const auto* g = dynamic_cast<const GridTransform*>(&h.impl())) return std::min(t_cap, g->trust_radius());
  return t_cap;
}

struct HalfAxisMax {
  double value;
  double t;
};

HalfAxisMax sup_over(const TransformHandle& h, double lo, double hi) {
  const auto pos = maximize_1d([&](double t) { return ratio(h, t); }, lo, hi);
  const auto neg = maximize_1d([&](double t) { return ratio(h, -t); }, lo, hi);
  if (neg.value > pos.value) return {neg.value, -neg.arg};
  return {pos.value, pos.arg};
}

}  // namespace

ProxyVariance proxy_variance_report(const TransformHandle& h, double t_cap) {
  ProxyVariance r;
  r.t_cap = effective_cap(h, t_cap);
  r.curvature = curvature_at_zero(h);
  r.value = r.curvature;
  constexpr double t_min = 1e-3;
  if (r.t_cap > t_min) {
    const auto best = sup_over(h, t_min, r.t_cap);
    if (best.value > r.value) {
      r.value = best.value;
      r.worst_t = best.t;
      r.at_cap = std::abs(std::abs(best.t) - r.t_cap) <= 1e-6 * r.t_cap;
    }
  }
  return r;
}

double proxy_variance(const TransformHandle& h, double t_cap) { return proxy_variance_report(h, t_cap).value; }

Separation separation_report(const TransformHandle& h, double t0, double t_cap) {
  if (!(t0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "t0 must be positive");
  const double cap = effective_cap(h, t_cap);
  if (!(cap > t0)) throw Error(ErrorCode::InvalidInterval, "t0 must lie below t_cap");
  // Endpoints are evaluated exactly: the sup often sits at |t| = t0.
  Separation s{t0, 0.0, 0.0, false};
  const auto best = sup_over(h, t0, cap);
  s.value = best.value;
  s.worst_t = best.t;
  for (double t : {t0, -t0, cap, -cap}) {
    const double v = ratio(h, t);
    if (v >= s.value) {
      s.value = v;
      s.worst_t = t;
    }
  }
  s.at_cap = std::abs(std::abs(s.worst_t) - cap) <= 1e-6 * cap;
  return s;
}

double separation_constant(const TransformHandle& h, double t0, double t_cap) {
  return separation_report(h, t0, t_cap).value;
}

bool concavity_check_sqrtK(const TransformHandle& h, double t_cap) {
  const double cap = effective_cap(h, t_cap);
  constexpr int kPoints = 2000;
  const double lo = std::log(1e-4);
  const double hi = std::log(cap * cap);
  if (!(hi > lo)) return true;
  std::vector<double> s(kPoints), k(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    s[i] = std::exp(lo + (hi - lo) * i / (kPoints - 1));
    k[i] = checked_K(h, std::sqrt(s[i]));
  }
  for (int i = 1; i + 1 < kPoints; ++i) {
    // Chord through the neighbours must not pass above the middle value.
    const double w = (s[i] - s[i - 1]) / (s[i + 1] - s[i - 1]);
    const double chord = (1.0 - w) * k[i - 1] + w * k[i + 1];
    if (chord - k[i] > 1e-10 * std::max(1.0, std::abs(k[i]))) return false;
  }
  return true;
}

bool strict_verdict(double variance, double proxy) { return proxy <= variance * (1.0 + 1e-8) + 1e-12; }

SubgaussReport verify_handle(const TransformHandle& h, const std::vector<double>& t0s, double t_cap) {
  SubgaussReport r;
  r.subject = h.describe();
  r.variance = h.variance();
  const auto pv = proxy_variance_report(h, t_cap);
  r.proxy_variance = pv.value;
  r.worst_t = pv.worst_t;
  r.t_cap = pv.t_cap;
  r.sup_at_cap = pv.at_cap;
  r.strict = strict_verdict(r.variance, r.proxy_variance);
  for (double t0 : t0s) {
    if (t0 < pv.t_cap) r.separation.emplace_back(t0, separation_constant(h, t0, pv.t_cap));
  }
  r.concave_sqrt_K = h.symmetric() && concavity_check_sqrtK(h, pv.t_cap);
  return r;
}

}  // namespace subgauss
