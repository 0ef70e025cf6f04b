#pragma once

#include <vector>

#include "subgauss/core.hpp"
#include "subgauss/grid.hpp"
#include "subgauss/transform.hpp"

namespace subgauss {

// Zeros of a symmetric characteristic function, one representative per orbit
// {z, -z, conj(z), -conj(z)}, stored in the closed quadrant Re z >= 0, Im z <= 0.
class ZeroSet {
 public:
  ZeroSet() = default;

  // Rejects zeros outside the quadrant (QuadrantViolation) and z = 0.
  explicit ZeroSet(std::vector<ComplexPoint> zeros);

  // Maps every nonzero point onto its quadrant representative.
  static ZeroSet canonical(const std::vector<ComplexPoint>& points);

  const std::vector<ComplexPoint>& zeros() const noexcept { return zeros_; }
  std::size_t size() const noexcept { return zeros_.size(); }
  bool empty() const noexcept { return zeros_.empty(); }

  // w_n = 1 / z_n = a_n + b_n i with b_n >= 0.
  ComplexPoint reciprocal(std::size_t n) const { return 1.0 / zeros_[n]; }
  double alpha(std::size_t n) const;  // 2 (a_n^2 - b_n^2)
  double beta(std::size_t n) const;   // (a_n^2 + b_n^2)^2
  bool is_real(std::size_t n) const { return zeros_[n].imag() == 0.0; }

  // sum |z_n|^{-2}
  double sum_inverse_square() const;

 private:
  std::vector<ComplexPoint> zeros_;
};

// Strictly subgaussian law with real characteristic-function zeros:
// L(t) = e^{gamma t^2/2} prod (1 + t^2 / z_n^2).
struct ClassLModel {
  double gamma = 0.0;
  std::vector<double> zeros;
  // sum_{n>N} z_n^{-2} of zeros dropped by truncation; only reported.
  double truncated_tail = 0.0;

  double variance() const;
};

ClassLModel make_class_l(double gamma, std::vector<double> zeros, double truncated_tail = 0.0);
TransformHandle class_l_handle(const ClassLModel& model);
TransformHandle classL_from_real_zeros(double gamma, std::vector<double> zeros);

// Zeros pi n / a, n = 1..count, of sinh(a t)/(a t) together with the tail
// sum_{n > count} (a / (pi n))^2 that the truncation drops.
ClassLModel sinhc_class_l(double a, int count);

// Symmetric Hadamard product over a zero set: real zeros contribute
// (1 - z^2/x^2), complex zeros the quartic (1 - alpha z^2 + beta z^4).
TransformHandle zero_set_handle(const ZeroSet& zeros, double gamma);

// The mixed representation as Gaussian times rescaled x^2 phi(x) summands is a
// characteristic function only when sigma^2 / 3 <= gamma <= sigma^2. Reported,
// never enforced.
bool mixed_representation_admissible(const ClassLModel& model);

// gamma_{2m} = K^{(2m)}(0); m = 1 gives the variance.
double cumulant_even(const ClassLModel& model, int m);

// (2m)! / (2^m m!) sigma^{2m}
double gaussian_moment_bound(double variance, int m);

struct MomentBoundReport {
  int m = 0;
  double moment = 0.0;
  double bound = 0.0;
  bool holds = false;
};

MomentBoundReport moment_bound_check(double variance, int m, double moment);
// E X^{2m} read off the grid; GridMomentDiverged if the integrand has not
// decayed at the grid edges.
MomentBoundReport moment_bound_check(const ClassLModel& model, int m, const GriddedDensity& density);

ComplexPoint eval_transform(const TransformHandle& h, ComplexPoint z);

}  // namespace subgauss
