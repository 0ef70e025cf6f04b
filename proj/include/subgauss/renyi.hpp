#pragma once

#include <limits>
#include <vector>

#include "subgauss/grid.hpp"
#include "subgauss/transform.hpp"

namespace subgauss {

inline constexpr double kAlphaInfinity = std::numeric_limits<double>::infinity();

// D_alpha(p || phi) with trapezoid weights; alpha = 1 is the Kullback-Leibler
// divergence, alpha = infinity is D_inf. p is renormalized over the samples
// clear of its noise floor and phi over the grid, so both are discrete
// probability vectors and the values are monotone in alpha.
double renyi_divergence(const GriddedDensity& d, double alpha);

struct SupDivergence {
  double D_inf = 0.0;
  double T_inf = 0.0;
  double argmax = 0.0;
  bool ratio_at_edge = false;  // the ratio peaks inside the excluded edge band
};

SupDivergence sup_divergences(const GriddedDensity& d);

enum class Interpolation { Auto, Linear, Cubic };

// Density of Z_n = (X_1 + ... + X_n) / sqrt(n) on the grid of d.
GriddedDensity normalized_sum_density(const GriddedDensity& d, int n,
                                      Interpolation mode = Interpolation::Auto);

// Density of h sampled on `grid`: closed forms (Hermite expansion for
// polynomial-times-Gaussian transforms, the trigonometric density for the
// periodic class) or Fourier inversion of f.
GriddedDensity synthesize_density(const TransformHandle& h, const GridSpec& grid);
// Same, for (X - mean) / sd.
GriddedDensity synthesize_standardized(const TransformHandle& h, const GridSpec& grid);

struct DivergenceReport {
  int n = 0;
  double alpha = 0.0;  // kAlphaInfinity for D_inf
  double D_alpha = 0.0;
  double T_inf = 0.0;
  double beta_conjugate = 0.0;  // alpha / (alpha - 1); infinity at alpha = 1, 1 at alpha = inf
  bool ratio_at_edge = false;
};

struct RateFit {
  double slope = 0.0;      // of log T_inf against log((log n)^3 / n)
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
  bool t_inf_decreasing = false;  // strictly, over all ns
};

struct CltResult {
  std::vector<DivergenceReport> reports;  // n-major, alpha-minor
  std::vector<double> t_inf;              // per n
  RateFit fit;
};

// Least squares over the n >= 16 entries with T_inf > 0.
RateFit fit_rate(const std::vector<int>& ns, const std::vector<double>& t_inf);

CltResult clt_experiment(const GriddedDensity& d, const std::vector<int>& ns,
                         const std::vector<double>& alphas);

}  // namespace subgauss
