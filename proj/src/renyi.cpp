#include "subgauss/renyi.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>

#include "subgauss/error.hpp"
#include "subgauss/periodic.hpp"

namespace subgauss {

namespace {

// Samples must exceed the noise floor by this factor before p / phi is trusted.
constexpr double kClearFactor = 1e6;
constexpr std::size_t kEdgeBand = 3;
constexpr double kRatioDiverged = 1e6;

bool usable(const GriddedDensity& d, std::size_t i) {
  const double p = d[i];
  return p > 0.0 && p > kClearFactor * d.noise_floor();
}

double trapezoid_weight(const GriddedDensity& d, std::size_t i) {
  return (i == 0 || i + 1 == d.size()) ? 0.5 * d.step() : d.step();
}

double log_sum_exp(const std::vector<double>& v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

void check_edges(const GriddedDensity& d) {
  for (std::size_t i : {std::size_t{0}, d.size() - 1}) {
    if (!usable(d, i)) continue;
    const double r = std::exp(std::log(d[i]) - log_standard_normal_density(d.x(i)));
    if (r > kRatioDiverged) throw Error(ErrorCode::RatioDiverged, "p / phi exceeds 1e6 at the grid edge");
  }
}

}  // namespace

SupDivergence sup_divergences(const GriddedDensity& d) {
  if (d.size() < 2 * kEdgeBand + 1) throw Error(ErrorCode::EmptyGrid, "grid too small for the edge band");
  SupDivergence out;
  double best = -std::numeric_limits<double>::infinity();
  double edge = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!usable(d, i)) continue;
    const double lr = std::log(d[i]) - log_standard_normal_density(d.x(i));
    const bool in_band = i < kEdgeBand || i + kEdgeBand >= d.size();
    if (in_band) {
      edge = std::max(edge, lr);
    } else if (lr > best) {
      best = lr;
      out.argmax = d.x(i);
    }
  }
  if (!std::isfinite(best)) throw Error(ErrorCode::EmptyGrid, "no sample above the noise floor");
  out.D_inf = best;
  out.T_inf = std::expm1(best);
  out.ratio_at_edge = edge >= best;
  return out;
}

double renyi_divergence(const GriddedDensity& d, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  if (std::isinf(alpha)) return sup_divergences(d).D_inf;
  grid_moments(d);
  check_edges(d);

  // p keeps only the samples clear of the noise floor; phi is normalized over
  // the whole grid, so dropped samples simply contribute nothing.
  std::vector<double> log_p, log_phi, log_phi_all;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double lw = std::log(trapezoid_weight(d, i));
    const double lphi = lw + log_standard_normal_density(d.x(i));
    log_phi_all.push_back(lphi);
    if (!usable(d, i)) continue;
    log_p.push_back(lw + std::log(d[i]));
    log_phi.push_back(lphi);
  }
  const double zp = log_sum_exp(log_p);
  const double zphi = log_sum_exp(log_phi_all);
  for (double& v : log_p) v -= zp;
  for (double& v : log_phi) v -= zphi;

  if (alpha == 1.0) {
    double kl = 0.0;
    for (std::size_t i = 0; i < log_p.size(); ++i) kl += std::exp(log_p[i]) * (log_p[i] - log_phi[i]);
    return std::max(kl, 0.0);
  }
  std::vector<double> terms(log_p.size());
  for (std::size_t i = 0; i < log_p.size(); ++i) terms[i] = alpha * log_p[i] + (1.0 - alpha) * log_phi[i];
  return std::max(log_sum_exp(terms) / (alpha - 1.0), 0.0);
}

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuffer real_buffer(std::size_t n) {
  return RealBuffer(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
}
ComplexBuffer complex_buffer(std::size_t n) {
  return ComplexBuffer(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
}

std::size_t next_pow2(double x) {
  std::size_t m = 16;
  while (static_cast<double>(m) < x) m <<= 1;
  return m;
}

std::complex<double> int_power(std::complex<double> z, int n) {
  std::complex<double> r(1.0, 0.0);
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

bool has_jumps(const GriddedDensity& d) {
  const auto v = d.values();
  const double top = *std::max_element(v.begin(), v.end());
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i] - v[i - 1]) > 0.05 * top) return true;
  return false;
}

}  // namespace

GriddedDensity normalized_sum_density(const GriddedDensity& d, int n, Interpolation mode) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  const Moments m = grid_moments(d);
  if (std::abs(m.mass - 1.0) > 1e-6 || std::abs(m.mean) > 1e-6 || std::abs(m.variance - 1.0) > 1e-6)
    throw Error(ErrorCode::NotStandardized, "density must have mass 1, mean 0 and variance 1");
  if (n == 1) return d;
  if (mode == Interpolation::Auto) mode = has_jumps(d) ? Interpolation::Linear : Interpolation::Cubic;

  const double h = d.step();
  const double width = d.x_max() - d.x_min();
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  // The sum lives on a grid sqrt(n) times wider; pad to 4x the input support
  // and at least twice the rescaled one.
  const std::size_t M = next_pow2(std::max(4.0 * width, 2.0 * width * sqrt_n) / h);
  const double period = static_cast<double>(M) * h;

  auto buf = real_buffer(M);
  auto spec = complex_buffer(M / 2 + 1);
  std::fill(buf.get(), buf.get() + M, 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) buf[i] = d[i] * trapezoid_weight(d, i);

  fftw_plan fwd = fftw_plan_dft_r2c_1d(static_cast<int>(M), buf.get(), spec.get(), FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);
  for (std::size_t k = 0; k <= M / 2; ++k) {
    const auto z = int_power(std::complex<double>(spec[k][0], spec[k][1]), n);
    spec[k][0] = z.real();
    spec[k][1] = z.imag();
  }
  fftw_plan inv = fftw_plan_dft_c2r_1d(static_cast<int>(M), spec.get(), buf.get(), FFTW_ESTIMATE);
  fftw_execute(inv);
  fftw_destroy_plan(inv);

  // buf[j] / (M h) is the density of S_n at s = n x_min + j h (mod period).
  const double scale = 1.0 / (static_cast<double>(M) * h);
  double top = 0.0, negative = 0.0, outer_mass = 0.0;
  const double origin = n * d.x_min();
  for (std::size_t j = 0; j < M; ++j) {
    buf[j] *= scale;
    top = std::max(top, buf[j]);
    negative = std::max(negative, -buf[j]);
    double s = origin + static_cast<double>(j) * h;
    s -= period * std::round(s / period);
    if (std::abs(s) > 0.375 * period) outer_mass += std::abs(buf[j]) * h;
  }
  if (outer_mass > 1e-8) throw Error(ErrorCode::AliasingDetected, "circular wrap-around mass exceeds 1e-8");

  auto at = [&](long long j) {
    const long long mm = static_cast<long long>(M);
    return buf[static_cast<std::size_t>(((j % mm) + mm) % mm)];
  };
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double u = (sqrt_n * d.x(i) - origin) / h;
    double base = std::floor(u);
    double frac = u - base;
    if (frac > 1.0 - 1e-9) {
      base += 1.0;
      frac = 0.0;
    } else if (frac < 1e-9) {
      frac = 0.0;
    }
    const auto k = static_cast<long long>(base);
    double v;
    if (frac == 0.0) {
      v = at(k);
    } else if (mode == Interpolation::Linear) {
      v = (1.0 - frac) * at(k) + frac * at(k + 1);
    } else {
      const double f = frac;
      v = -f * (f - 1.0) * (f - 2.0) / 6.0 * at(k - 1) + (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0 * at(k) -
          (f + 1.0) * f * (f - 2.0) / 2.0 * at(k + 1) + (f + 1.0) * f * (f - 1.0) / 6.0 * at(k + 2);
    }
    out[i] = std::max(0.0, sqrt_n * v);
  }

  const double noise =
      sqrt_n * std::max(2.0 * negative, std::numeric_limits<double>::epsilon() * top * std::log2(M));
  GriddedDensity result(d.x_min(), h, std::move(out), noise);
  const double drift = std::abs(result.mass() - 1.0);
  if (drift > 1e-6) throw Error(ErrorCode::NormalizationDrift, "mass drifted by more than 1e-6");
  return result.normalized();
}

namespace {

std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Degree (in z^2) up to which the Hermite expansion is used; beyond it the
// alternating coefficients cancel badly and Fourier inversion takes over.
constexpr std::size_t kMaxHermiteDegree = 8;

std::optional<std::function<double(double)>> closed_form(const TransformHandle& h) {
  const auto* a = dynamic_cast<const AnalyticTransform*>(&h.impl());
  if (a == nullptr) return std::nullopt;
  if (a->periodic()) {
    if (!a->factors().empty() || a->gamma() != 1.0) return std::nullopt;
    const TrigSeries& s = *a->periodic();
    PeriodicComponent p{2.0 * std::numbers::pi / s.omega, s.a0, s.a, s.b, s.c};
    return [p](double x) { return trig_density_value(p, p.c, x); };
  }
  std::vector<double> q{1.0};
  for (const auto& f : a->factors()) q = multiply(q, f.coeffs);
  const double g = a->gamma();
  if (!(g > 0.0) || q.size() - 1 > kMaxHermiteDegree) return std::nullopt;
  // t^{2k} e^{-g t^2/2} <-> (-1)^k g^{-k} He_{2k}(x / sqrt g) phi_g(x)
  std::vector<double> c(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) c[k] = q[k] * ((k % 2) ? -1.0 : 1.0) * std::pow(g, -double(k));
  const double sd = std::sqrt(g);
  return [c, sd](double x) {
    const double y = x / sd;
    double he_prev = 1.0, he = y, sum = c[0];
    // He_{m+1} = y He_m - m He_{m-1}; even orders pick up their coefficient.
    for (std::size_t m = 1; m + 1 < 2 * c.size(); ++m) {
      const double next = y * he - static_cast<double>(m) * he_prev;
      he_prev = he;
      he = next;
      if ((m + 1) % 2 == 0) sum += c[(m + 1) / 2] * he;
    }
    return std::max(0.0, sum * standard_normal_density(y) / sd);
  };
}

GriddedDensity fourier_density(const TransformHandle& h, const GridSpec& grid) {
  const std::size_t M = next_pow2(4.0 * static_cast<double>(grid.points()));
  const double step = grid.step();
  const double dw = 2.0 * std::numbers::pi / (static_cast<double>(M) * step);
  const double nyquist = dw * static_cast<double>(M / 2);
  if (std::abs(h.f(ComplexPoint(nyquist, 0.0))) > 1e-13)
    throw Error(ErrorCode::NumericFailure, "characteristic function does not decay within the grid bandwidth");

  auto spec = complex_buffer(M / 2 + 1);
  auto buf = real_buffer(M);
  for (std::size_t k = 0; k <= M / 2; ++k) {
    const double w = dw * static_cast<double>(k);
    const auto y = std::conj(h.f(ComplexPoint(w, 0.0)) * std::polar(1.0, -w * grid.x_min()));
    spec[k][0] = y.real();
    spec[k][1] = (k == 0 || k == M / 2) ? 0.0 : y.imag();
  }
  fftw_plan inv = fftw_plan_dft_c2r_1d(static_cast<int>(M), spec.get(), buf.get(), FFTW_ESTIMATE);
  fftw_execute(inv);
  fftw_destroy_plan(inv);

  std::vector<double> v(grid.points());
  double top = 0.0, negative = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double p = buf[j] * dw / (2.0 * std::numbers::pi);
    top = std::max(top, p);
    negative = std::max(negative, -p);
    v[j] = std::max(0.0, p);
  }
  const double noise = std::max(2.0 * negative, std::numeric_limits<double>::epsilon() * top * std::log2(M));
  return GriddedDensity(grid.x_min(), step, std::move(v), noise);
}

}  // namespace

GriddedDensity synthesize_density(const TransformHandle& h, const GridSpec& grid) {
  if (auto f = closed_form(h)) return sample_on(grid, *f);
  return fourier_density(h, grid);
}

GriddedDensity synthesize_standardized(const TransformHandle& h, const GridSpec& grid) {
  const double sd = std::sqrt(h.variance());
  const double mu = h.mean();
  if (!(sd > 0.0)) throw Error(ErrorCode::InvalidArgument, "variance must be positive");
  if (auto f = closed_form(h)) return sample_on(grid, [&](double x) { return sd * (*f)(sd * x + mu); });
  return fourier_density(h.standardized(), grid);
}

RateFit fit_rate(const std::vector<int>& ns, const std::vector<double>& t_inf) {
  RateFit fit;
  fit.t_inf_decreasing = !t_inf.empty();
  for (std::size_t i = 1; i < t_inf.size(); ++i)
    if (!(t_inf[i] < t_inf[i - 1])) fit.t_inf_decreasing = false;

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ns.size() && i < t_inf.size(); ++i) {
    if (ns[i] < 16 || !(t_inf[i] > 0.0)) continue;
    const double ln = std::log(static_cast<double>(ns[i]));
    xs.push_back(3.0 * std::log(ln) - ln);
    ys.push_back(std::log(t_inf[i]));
  }
  fit.points = static_cast<int>(xs.size());
  if (xs.size() < 2) return fit;
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / k;
    my += ys[i] / k;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

CltResult clt_experiment(const GriddedDensity& d, const std::vector<int>& ns, const std::vector<double>& alphas) {
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i] <= ns[i - 1]) throw Error(ErrorCode::InvalidArgument, "ns must be increasing");
  CltResult r;
  for (int n : ns) {
    const GriddedDensity pn = normalized_sum_density(d, n);
    const SupDivergence sup = sup_divergences(pn);
    r.t_inf.push_back(sup.T_inf);
    for (double a : alphas) {
      DivergenceReport rep;
      rep.n = n;
      rep.alpha = a;
      rep.T_inf = sup.T_inf;
      rep.ratio_at_edge = sup.ratio_at_edge;
      rep.D_alpha = std::isinf(a) ? sup.D_inf : renyi_divergence(pn, a);
      rep.beta_conjugate = std::isinf(a) ? 1.0 : (a == 1.0 ? kAlphaInfinity : a / (a - 1.0));
      r.reports.push_back(rep);
    }
  }
  r.fit = fit_rate(ns, r.t_inf);
  return r;
}

}  // namespace subgauss
