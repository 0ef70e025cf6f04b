#include "subgauss/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <sstream>

#include "subgauss/error.hpp"

namespace subgauss {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{x^2/2} |coef| without overflow for large x and tiny coefficients.
double weighted(double coef, double x) {
  if (coef == 0.0) return 0.0;
  return std::exp(std::log(std::abs(coef)) + 0.5 * x * x);
}

double signed_weighted(double coef, double x) {
  return coef < 0.0 ? -weighted(coef, x) : weighted(coef, x);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TrigSeries PeriodicComponent::series() const { return TrigSeries{omega(), a0, a, b, c}; }

PeriodicComponent PeriodicComponent::with_c(double value) const {
  PeriodicComponent p = *this;
  p.c = value;
  return p;
}

MomentConstraints moment_constraints(const PeriodicComponent& p, double tol) {
  MomentConstraints m;
  double scale = std::abs(p.a0);
  m.value_at_zero = p.a0;
  for (std::size_t k = 0; k < p.a.size(); ++k) {
    const double kk = k + 1.0;
    m.value_at_zero += p.a[k];
    m.second += kk * kk * p.a[k];
    scale = std::max(scale, kk * kk * std::abs(p.a[k]));
  }
  for (std::size_t k = 0; k < p.b.size(); ++k) {
    m.first += (k + 1.0) * p.b[k];
    scale = std::max(scale, (k + 1.0) * std::abs(p.b[k]));
  }
  const double lim = tol * std::max(scale, 1e-300);
  m.hold = std::abs(m.value_at_zero) <= lim && std::abs(m.first) <= lim && std::abs(m.second) <= lim;
  return m;
}

double max_admissible_c(const PeriodicComponent& p) {
  const double w = p.omega();
  double s = std::abs(p.a0);
  for (std::size_t k = 0; k < p.a.size(); ++k) s += weighted(p.a[k], (k + 1.0) * w);
  for (std::size_t k = 0; k < p.b.size(); ++k) s += weighted(p.b[k], (k + 1.0) * w);
  if (s == 0.0) throw Error(ErrorCode::AllZeroCoefficients, "all Fourier coefficients vanish");
  return 1.0 / s;
}

double trig_density_value(const PeriodicComponent& p, double c, double x) {
  const double w = p.omega();
  double s = p.a0;
  for (std::size_t k = 0; k < p.a.size(); ++k) {
    const double kw = (k + 1.0) * w;
    s += signed_weighted(p.a[k], kw) * std::cos(kw * x);
  }
  for (std::size_t k = 0; k < p.b.size(); ++k) {
    const double kw = (k + 1.0) * w;
    s += signed_weighted(p.b[k], kw) * std::sin(kw * x);
  }
  return std::max(0.0, standard_normal_density(x) * (1.0 - c * s));
}

TransformHandle periodic_handle(const PeriodicComponent& p) {
  std::ostringstream os;
  os << "periodic (h=" << p.period << ", c=" << p.c << ")";
  return TransformHandle(
      std::make_shared<AnalyticTransform>(1.0, std::vector<EvenPolynomial>{}, p.series(), os.str()));
}

TrigDensity trig_density(const PeriodicComponent& p, double c, const GridSpec& grid) {
  const double cmax = max_admissible_c(p);
  if (std::abs(c) > cmax * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "|c| = " << std::abs(c) << " exceeds the admissible " << cmax;
    throw Error(ErrorCode::CTooLarge, os.str());
  }
  if (!moment_constraints(p).hold)
    throw Error(ErrorCode::MomentConstraintViolated, "P(0) = P'(0) = P''(0) = 0 does not hold");

  const PeriodicComponent pc = p.with_c(c);
  TrigDensity out;
  out.density = sample_on(grid, [&](double x) { return trig_density_value(pc, c, x); });
  out.handle = periodic_handle(pc);

  // Psi(t) = integral of phi(y) q(y + t) dy: checks the synthesized density
  // against 1 - cP(t) without touching e^{t^2/2}.
  constexpr double kHalf = 12.0;
  constexpr int kSteps = 24000;
  const double dy = 2.0 * kHalf / kSteps;
  for (double t : {0.5, 1.0, 2.0, 0.5 * pc.period, pc.period, 3.7}) {
    double acc = 0.0;
    for (int i = 0; i <= kSteps; ++i) {
      const double y = -kHalf + i * dy;
      const double phi = standard_normal_density(y);
      const double q = trig_density_value(pc, c, y + t) / standard_normal_density(y + t);
      acc += (i == 0 || i == kSteps ? 0.5 : 1.0) * phi * q;
    }
    out.laplace_check = std::max(out.laplace_check, std::abs(acc * dy - pc.psi(t)));
  }
  if (out.laplace_check > 1e-8)
    throw Error(ErrorCode::NumericFailure, "synthesized density does not reproduce its transform");
  return out;
}

TrigDensity trig_density(const PeriodicComponent& p, double c) {
  return trig_density(p, c, default_grid(1.0));
}

PeriodicComponent sin_power_fourier(int m) {
  if (m < 3) throw Error(ErrorCode::InvalidArgument, "sin power must be >= 3");
  // sin^m t = (2i)^{-m} sum_j C(m, j) (-1)^j e^{i (m - 2j) t}
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> prefactor = std::pow(2.0 * i, -m);
  PeriodicComponent p;
  p.a.assign(m, 0.0);
  p.b.assign(m, 0.0);
  for (int j = 0; j <= m; ++j) {
    const int n = m - 2 * j;
    if (n < 0) continue;
    const std::complex<double> cn = prefactor * binomial(m, j) * ((j % 2) ? -1.0 : 1.0);
    if (n == 0) {
      p.a0 = cn.real();
    } else {
      p.a[n - 1] = 2.0 * cn.real();
      p.b[n - 1] = -2.0 * cn.imag();
    }
  }
  // Clean the +-0 rounding residue of the complex power.
  auto snap = [](double& v) {
    if (std::abs(v) < 1e-15) v = 0.0;
  };
  snap(p.a0);
  std::for_each(p.a.begin(), p.a.end(), snap);
  std::for_each(p.b.begin(), p.b.end(), snap);
  return p;
}

double ThetaComponent::window(double t) const {
  return kInvSqrt2Pi / sigma * std::exp(-0.5 * t * t / (sigma * sigma));
}

double ThetaComponent::window_hat(double k) const { return std::exp(-0.5 * sigma * sigma * k * k); }

namespace {

void require_sigma(const ThetaComponent& theta) {
  if (!(theta.sigma > 1.0) || !std::isfinite(theta.sigma))
    throw Error(ErrorCode::SigmaOutOfRange, "theta window needs sigma > 1");
}

}  // namespace

double theta_q_lattice(double t, const ThetaComponent& theta, int lattice_terms) {
  require_sigma(theta);
  double s = 0.0;
  // Smallest terms first.
  for (int m = lattice_terms; m >= 1; --m)
    s += theta.window(t + kTwoPi * m) + theta.window(t - kTwoPi * m);
  return s + theta.window(t);
}

double theta_q_fourier(double t, const ThetaComponent& theta, int fourier_terms) {
  require_sigma(theta);
  double s = 0.0;
  for (int k = fourier_terms; k >= 1; --k) s += theta.window_hat(k) * std::cos(k * t);
  return (theta.window_hat(0) + 2.0 * s) / kTwoPi;
}

ThetaPsi theta_psi(double t, const ThetaComponent& theta, double c, ThetaTruncation trunc) {
  ThetaPsi r;
  r.q_lattice = theta_q_lattice(t, theta, trunc.lattice_terms);
  r.q_fourier = theta_q_fourier(t, theta, trunc.fourier_terms);
  const double s = std::sin(t);
  r.psi = 1.0 - c * s * s * s * s * r.q_lattice;
  return r;
}

PeriodicComponent theta_component(const ThetaComponent& theta, int fourier_terms) {
  require_sigma(theta);
  // Cosine coefficients of Q and of sin^4, multiplied via
  // cos(j t) cos(k t) = (cos((j+k) t) + cos((j-k) t)) / 2.
  std::vector<double> q(fourier_terms + 1);
  q[0] = theta.window_hat(0) / kTwoPi;
  for (int k = 1; k <= fourier_terms; ++k) q[k] = theta.window_hat(k) / std::numbers::pi;
  const std::vector<std::pair<int, double>> s4{{0, 3.0 / 8.0}, {2, -0.5}, {4, 1.0 / 8.0}};

  std::vector<double> prod(fourier_terms + 5, 0.0);
  for (const auto& [j, sj] : s4) {
    for (int k = 0; k <= fourier_terms; ++k) {
      if (j == 0 || k == 0) {
        prod[j + k] += sj * q[k];
      } else {
        prod[j + k] += 0.5 * sj * q[k];
        prod[std::abs(j - k)] += 0.5 * sj * q[k];
      }
    }
  }
  PeriodicComponent p;
  p.a0 = prod[0];
  p.a.assign(prod.begin() + 1, prod.end());
  return p;
}

LatticeReport lattice_identity_check(const TransformHandle& h, double period, int m_max) {
  if (!(period > 0.0) || m_max < 1)
    throw Error(ErrorCode::InvalidArgument, "need period > 0 and m_max >= 1");
  LatticeReport r;
  for (int m = 1; m <= m_max; ++m) {
    const double t = m * period;
    if (0.5 * t * t > kOverflowExponent)
      throw Error(ErrorCode::OverflowGuard, "m h too large for L(mh) to be represented");
    const double dev = std::abs(std::expm1(h.K(t) - 0.5 * t * t));
    r.deviations.push_back(dev);
    r.max_deviation = std::max(r.max_deviation, dev);
  }
  auto psi = [&](double t) { return std::exp(h.K(t) - 0.5 * t * t); };
  for (int i = 0; i <= 2000; ++i) {
    const double t = -10.0 + 0.01 * i;
    r.periodicity_defect = std::max(r.periodicity_defect, std::abs(psi(t + period) - psi(t)));
  }
  return r;
}

}  // namespace subgauss
