#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>

namespace subgauss {

// Points of the complex plane: arguments of characteristic functions and
// reciprocals of their zeros.
using ComplexPoint = std::complex<double>;

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;
inline constexpr double kLogSqrt2Pi = 0.9189385332046727417803297364056176;

// Exponents above this (natural log units) are refused rather than evaluated.
inline constexpr double kOverflowExponent = 700.0;

inline double standard_normal_density(double x) noexcept {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

inline double log_standard_normal_density(double x) noexcept {
  return -0.5 * x * x - kLogSqrt2Pi;
}

bool is_finite(ComplexPoint z) noexcept;

// Throws InvalidArgument if either component is NaN or infinite.
void require_finite(ComplexPoint z, const char* what);
void require_finite(double x, const char* what);

// Composite trapezoid rule over uniformly spaced samples.
double trapezoid(std::span<const double> values, double step);

struct Maximum {
  double arg = 0.0;
  double value = 0.0;
};

// Maximizes g over [lo, hi]: a coarse scan on `scan_points` points, then
// golden-section refinement of every local maximum of the scan (best few), and
// a final parabolic polish so that smooth interior maxima are located well
// below the sqrt(machine epsilon) floor of pure golden section.
Maximum maximize_1d(const std::function<double(double)>& g, double lo, double hi,
                    double tol = 1e-10, int scan_points = 1024);

// Root of a continuous f on [lo, hi] with f(lo), f(hi) of opposite sign.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              int iterations = 200);

// Same, but on a boolean predicate that is true on [lo, x*] and false on
// (x*, hi]; returns x*.
double bisect_predicate(const std::function<bool(double)>& inside, double lo, double hi,
                        int iterations = 200);

}  // namespace subgauss
