#include "subgauss/charfn.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "subgauss/error.hpp"

namespace subgauss {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

ZeroSet::ZeroSet(std::vector<ComplexPoint> zeros) : zeros_(std::move(zeros)) {
  for (const auto& z : zeros_) {
    require_finite(z, "zero");
    if (z == 0.0) throw Error(ErrorCode::NonPositiveZero, "zero set may not contain 0");
    if (z.real() < 0.0 || z.imag() > 0.0) {
      std::ostringstream os;
      os << "zero " << z << " is outside the quadrant Re >= 0, Im <= 0";
      throw Error(ErrorCode::QuadrantViolation, os.str());
    }
  }
}

ZeroSet ZeroSet::canonical(const std::vector<ComplexPoint>& points) {
  std::vector<ComplexPoint> out;
  out.reserve(points.size());
  for (auto z : points) {
    require_finite(z, "zero");
    out.emplace_back(std::abs(z.real()), -std::abs(z.imag()));
  }
  return ZeroSet(std::move(out));
}

double ZeroSet::alpha(std::size_t n) const {
  ComplexPoint w = reciprocal(n);
  return 2.0 * (w.real() * w.real() - w.imag() * w.imag());
}

double ZeroSet::beta(std::size_t n) const {
  double r2 = std::norm(reciprocal(n));
  return r2 * r2;
}

double ZeroSet::sum_inverse_square() const {
  double s = 0.0;
  for (const auto& z : zeros_) s += 1.0 / std::norm(z);
  return s;
}

double ClassLModel::variance() const {
  double v = gamma;
  for (double z : zeros) v += 2.0 / (z * z);
  return v;
}

ClassLModel make_class_l(double gamma, std::vector<double> zeros, double truncated_tail) {
  require_finite(gamma, "gamma");
  if (gamma < 0.0) throw Error(ErrorCode::NegativeGamma, "gamma must be >= 0");
  for (double z : zeros) {
    require_finite(z, "zero");
    if (!(z > 0.0)) throw Error(ErrorCode::NonPositiveZero, "class-L zeros must be positive");
  }
  return ClassLModel{gamma, std::move(zeros), truncated_tail};
}

TransformHandle class_l_handle(const ClassLModel& model) {
  std::vector<EvenPolynomial> factors;
  factors.reserve(model.zeros.size());
  for (double z : model.zeros) factors.push_back(EvenPolynomial{{1.0, -1.0 / (z * z)}});
  std::ostringstream os;
  os << "class L (gamma=" << model.gamma << ", " << model.zeros.size() << " zeros)";
  return TransformHandle(std::make_shared<AnalyticTransform>(model.gamma, std::move(factors),
                                                             std::nullopt, os.str()));
}

TransformHandle classL_from_real_zeros(double gamma, std::vector<double> zeros) {
  return class_l_handle(make_class_l(gamma, std::move(zeros)));
}

ClassLModel sinhc_class_l(double a, int count) {
  if (!(a > 0.0) || count < 0) throw Error(ErrorCode::InvalidArgument, "need a > 0, count >= 0");
  std::vector<double> zeros;
  double kept = 0.0;
  for (int n = 1; n <= count; ++n) {
    double z = std::numbers::pi * n / a;
    zeros.push_back(z);
    kept += 1.0 / (z * z);
  }
  // sum over all n of (a / (pi n))^2 = a^2 / 6
  double tail = std::max(0.0, a * a / 6.0 - kept);
  return make_class_l(0.0, std::move(zeros), tail);
}

TransformHandle zero_set_handle(const ZeroSet& zeros, double gamma) {
  require_finite(gamma, "gamma");
  if (gamma < 0.0) throw Error(ErrorCode::NegativeGamma, "gamma must be >= 0");
  std::vector<EvenPolynomial> factors;
  for (std::size_t n = 0; n < zeros.size(); ++n) {
    if (zeros.is_real(n)) {
      double x = zeros.zeros()[n].real();
      factors.push_back(EvenPolynomial{{1.0, -1.0 / (x * x)}});
    } else {
      factors.push_back(EvenPolynomial{{1.0, -zeros.alpha(n), zeros.beta(n)}});
    }
  }
  std::ostringstream os;
  os << "symmetric Hadamard product (gamma=" << gamma << ", " << zeros.size() << " zero orbits)";
  return TransformHandle(
      std::make_shared<AnalyticTransform>(gamma, std::move(factors), std::nullopt, os.str()));
}

bool mixed_representation_admissible(const ClassLModel& model) {
  const double s2 = model.variance();
  return model.gamma >= s2 / 3.0 && model.gamma <= s2;
}

double cumulant_even(const ClassLModel& model, int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "cumulant order m must be >= 1");
  if (m == 1) return model.variance();
  double s = 0.0;
  for (double z : model.zeros) s += std::pow(z, -2.0 * m);
  const double sign = (m % 2 == 1) ? 1.0 : -1.0;  // (-1)^{m-1}
  return sign * factorial(2 * m) / m * s;
}

double gaussian_moment_bound(double variance, int m) {
  return factorial(2 * m) / (std::pow(2.0, m) * factorial(m)) * std::pow(variance, m);
}

MomentBoundReport moment_bound_check(double variance, int m, double moment) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "moment order m must be >= 1");
  MomentBoundReport r;
  r.m = m;
  r.moment = moment;
  r.bound = gaussian_moment_bound(variance, m);
  r.holds = moment <= r.bound * (1.0 + 1e-9);
  return r;
}

MomentBoundReport moment_bound_check(const ClassLModel& model, int m, const GriddedDensity& density) {
  Moments mom = grid_moments(density);
  const int power = 2 * m;
  double moment = density.expect([power](double x) { return std::pow(x, power); }) / mom.mass;
  const double lo = std::pow(density.x_min(), power) * density[0];
  const double hi = std::pow(density.x_max(), power) * density[density.size() - 1];
  // The integrand at the edges, times a generous tail width, must be negligible.
  if (std::max(lo, hi) * 10.0 > 1e-10 * std::max(moment, 1e-300))
    throw Error(ErrorCode::GridMomentDiverged,
                "x^" + std::to_string(power) + " p(x) has not decayed at the grid edge");
  return moment_bound_check(model.variance(), m, moment);
}

ComplexPoint eval_transform(const TransformHandle& h, ComplexPoint z) { return h.f(z); }

}  // namespace subgauss
