#pragma once

#include <vector>

#include "subgauss/grid.hpp"
#include "subgauss/transform.hpp"

namespace subgauss {

// Psi(t) = 1 - c P(2 pi t / h), P(s) = a0 + sum_k (a_k cos(k s) + b_k sin(k s)).
// With the default period 2 pi the series variable is t itself.
struct PeriodicComponent {
  double period = 2.0 * std::numbers::pi;
  double a0 = 0.0;
  std::vector<double> a;  // a[k-1] = a_k
  std::vector<double> b;  // b[k-1] = b_k
  double c = 0.0;

  double omega() const { return 2.0 * std::numbers::pi / period; }
  TrigSeries series() const;
  double P(double t) const { return series().P(omega() * t); }
  double psi(double t) const { return 1.0 - c * P(t); }
  PeriodicComponent with_c(double value) const;
};

struct MomentConstraints {
  double value_at_zero = 0.0;  // a0 + sum a_k
  double first = 0.0;          // sum k b_k
  double second = 0.0;         // sum k^2 a_k
  bool hold = false;
};

MomentConstraints moment_constraints(const PeriodicComponent& p, double tol = 1e-12);

// 1 / (|a0| + sum_k e^{(k omega)^2 / 2} (|a_k| + |b_k|)).
double max_admissible_c(const PeriodicComponent& p);

struct TrigDensity {
  GriddedDensity density;
  TransformHandle handle;
  double laplace_check = 0.0;  // max |numeric Psi - (1 - cP)| over the probe points
};

// The density phi(x) [1 - c (a0 + sum e^{(k omega)^2/2} (a_k cos + b_k sin)(k omega x))]
// whose Laplace transform is (1 - c P) e^{t^2/2}.
double trig_density_value(const PeriodicComponent& p, double c, double x);
TrigDensity trig_density(const PeriodicComponent& p, double c, const GridSpec& grid);
TrigDensity trig_density(const PeriodicComponent& p, double c);

// Handle with L(t) = Psi(t) e^{t^2/2}.
TransformHandle periodic_handle(const PeriodicComponent& p);

// Exact Fourier coefficients of sin^m on the 2 pi period.
PeriodicComponent sin_power_fourier(int m);

// Gaussian window w = N(0, sigma^2), hat w(k) = e^{-sigma^2 k^2 / 2}.
struct ThetaComponent {
  double sigma = 1.5;

  double window(double t) const;
  double window_hat(double k) const;
};

struct ThetaTruncation {
  int lattice_terms = 20;  // |m| <= M
  int fourier_terms = 40;  // k <= K
};

// Q(t) = sum_m w(t + 2 pi m), directly and via its Fourier series.
double theta_q_lattice(double t, const ThetaComponent& theta, int lattice_terms = 20);
double theta_q_fourier(double t, const ThetaComponent& theta, int fourier_terms = 40);

struct ThetaPsi {
  double psi = 1.0;        // 1 - c sin^4(t) Q(t) with the lattice Q
  double q_lattice = 0.0;
  double q_fourier = 0.0;
};

ThetaPsi theta_psi(double t, const ThetaComponent& theta, double c, ThetaTruncation trunc = {});

// sin^4(t) Q(t) as a trigonometric series (coefficients through k = K + 4).
PeriodicComponent theta_component(const ThetaComponent& theta, int fourier_terms = 40);

struct LatticeReport {
  std::vector<double> deviations;  // |L(mh) e^{-(mh)^2/2} - 1|, m = 1..m_max
  double max_deviation = 0.0;
  double periodicity_defect = 0.0;  // max_t |Psi(t + h) - Psi(t)|, t in [-10, 10]
};

LatticeReport lattice_identity_check(const TransformHandle& h, double period, int m_max);

}  // namespace subgauss
