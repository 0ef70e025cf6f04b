#pragma once

#include <string>

#include "subgauss/core.hpp"
#include "subgauss/transform.hpp"

namespace subgauss {

// Characteristic functions f(t) = e^{-gamma t^2/2} (1 - alpha t^2 + beta t^4).
struct QuarticParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;

  // (alpha / gamma, beta / gamma^2): the same family after t -> t / sqrt(gamma).
  QuarticParams unit_gamma() const;
  double variance() const { return gamma + 2.0 * alpha; }
};

namespace region {

// Largest beta at which the strict region still touches alpha = sqrt(2 beta).
inline double beta0() { return (7.0 + 2.0 * std::sqrt(10.0)) / 36.0; }
// Largest Re w for which the pi/8 cone alone decides admissibility.
inline double a0() {
  return std::pow(beta0(), 0.25) * (std::sqrt(2.0) + 1.0) / std::sqrt(4.0 + 2.0 * std::sqrt(2.0));
}
inline double a_max() { return std::pow(2.0, -0.25); }

// Points within this distance of a boundary count as inside.
inline constexpr double kBoundaryTol = 1e-12;

}  // namespace region

// Membership of (alpha, beta) (unit gamma) in the region where the quartic is
// positive definite, boundaries included.
bool is_characteristic(double alpha, double beta);

// is_characteristic and alpha >= sqrt(2 beta).
bool is_strictly_subgaussian_quartic(double alpha, double beta);

// The strict region written out piecewise in beta (independent formulation of
// the same set, used to cross-check the classifier).
bool strict_region_piecewise(double alpha, double beta);

struct QuarticDensityCoeffs {
  double c0 = 0.0;
  double c2 = 0.0;
  double c4 = 0.0;

  // (c0 + c2 x^2 + c4 x^4) phi(x)
  double density(double x) const;
};

// Density coefficients for unit gamma; throws NotACharacteristicFunction
// outside the admissible region.
QuarticDensityCoeffs quartic_density_coeffs(double alpha, double beta);

// Density of the general-gamma quartic law.
double quartic_density(const QuarticParams& p, double x);

// Largest |b| such that w = a + b i gives a strictly subgaussian quartic.
// For a > sqrt(2/3) no b works (not even b = 0); 0 is returned there.
double admissible_b_max(double a);

TransformHandle quartic_handle(const QuarticParams& p);

struct QuarticFromZero {
  QuarticParams params;
  TransformHandle handle;
  ComplexPoint w;  // 1 / z with Im w >= 0
};

// Quartic with zeros exactly at +-z, +-conj(z).
QuarticFromZero quartic_from_zero(ComplexPoint z, double gamma);

struct ClassificationReport {
  QuarticParams input;
  QuarticParams normalized;  // unit gamma
  bool characteristic = false;
  bool strict = false;
  std::string binding_constraint;  // nearest boundary among the constraints in force
  double boundary_distance = 0.0;  // |alpha - bound(beta)| (or |beta - bound|)
};

ClassificationReport classify_quartic(const QuarticParams& p);

}  // namespace subgauss
