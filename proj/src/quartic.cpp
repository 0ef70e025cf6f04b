#include "subgauss/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <vector>

#include "subgauss/error.hpp"

namespace subgauss {

namespace {

using region::kBoundaryTol;

// 2 sqrt(beta (1 - 2 beta)), clamped at the ends of [0, 1/2].
double half_width(double beta) {
  double v = beta * (1.0 - 2.0 * beta);
  return v > 0.0 ? 2.0 * std::sqrt(v) : 0.0;
}

}  // namespace

QuarticParams QuarticParams::unit_gamma() const {
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  return {alpha / gamma, beta / (gamma * gamma), 1.0};
}

bool is_characteristic(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) return false;
  if (beta < -kBoundaryTol || beta > 0.5 + kBoundaryTol) return false;
  const double b = std::clamp(beta, 0.0, 0.5);
  const double hw = half_width(b);
  const double lower = 4.0 * b - hw;
  if (b <= 1.0 / 3.0 + kBoundaryTol && alpha >= lower - kBoundaryTol &&
      alpha <= 3.0 * b + 1.0 + kBoundaryTol)
    return true;
  if (b >= 1.0 / 3.0 - kBoundaryTol && std::abs(alpha - 4.0 * b) <= hw + kBoundaryTol) return true;
  return false;
}

bool is_strictly_subgaussian_quartic(double alpha, double beta) {
  if (!is_characteristic(alpha, beta)) return false;
  return alpha >= std::sqrt(2.0 * std::max(beta, 0.0)) - kBoundaryTol;
}

bool strict_region_piecewise(double alpha, double beta) {
  const double tol = kBoundaryTol;
  if (beta < -tol || beta > 0.5 + tol) return false;
  const double b = std::clamp(beta, 0.0, 0.5);
  const double s = std::sqrt(2.0 * b);
  const double hw = half_width(b);
  const double b0 = region::beta0();
  bool in = false;
  if (b <= 1.0 / 3.0 + tol) in |= alpha >= s - tol && alpha <= 3.0 * b + 1.0 + tol;
  if (b >= 1.0 / 3.0 - tol && b <= b0 + tol) in |= alpha >= s - tol && alpha <= 4.0 * b + hw + tol;
  if (b >= b0 - tol) in |= alpha >= 4.0 * b - hw - tol && alpha <= 4.0 * b + hw + tol;
  return in;
}

double QuarticDensityCoeffs::density(double x) const {
  const double x2 = x * x;
  return (c0 + c2 * x2 + c4 * x2 * x2) * standard_normal_density(x);
}

QuarticDensityCoeffs quartic_density_coeffs(double alpha, double beta) {
  if (!is_characteristic(alpha, beta)) {
    std::ostringstream os;
    os << "(alpha, beta) = (" << alpha << ", " << beta << ") is outside the admissible region";
    throw Error(ErrorCode::NotACharacteristicFunction, os.str());
  }
  return {1.0 - alpha + 3.0 * beta, alpha - 6.0 * beta, beta};
}

double quartic_density(const QuarticParams& p, double x) {
  const QuarticParams u = p.unit_gamma();
  const QuarticDensityCoeffs c = quartic_density_coeffs(u.alpha, u.beta);
  const double s = std::sqrt(p.gamma);
  // Rounding at the boundary of the region can leave c0 + c2 y + c4 y^2 a few
  // ulps below zero.
  return std::max(0.0, c.density(x / s) / s);
}

double admissible_b_max(double a) {
  const double amax = region::a_max();
  if (!(a > 0.0) || a > amax * (1.0 + 1e-15))
    throw Error(ErrorCode::OutOfDomain, "admissible_b_max needs 0 < a <= 2^{-1/4}");
  if (a <= region::a0()) return a / (std::sqrt(2.0) + 1.0);
  const double A = a * a;
  const double hi = std::min(A, 1.0 / std::sqrt(2.0) - A);
  if (hi <= 0.0) return 0.0;
  // 2x^2 - x sqrt(1 - 2x^2) = A - B at x = A + B; increasing in B.
  auto boundary = [A](double B) {
    const double x = A + B;
    const double r = std::max(0.0, 1.0 - 2.0 * x * x);
    return 2.0 * x * x - x * std::sqrt(r) - (A - B);
  };
  if (boundary(0.0) >= 0.0) return 0.0;
  const double B = bisect(boundary, 0.0, hi, 200);
  return std::sqrt(B);
}

TransformHandle quartic_handle(const QuarticParams& p) {
  require_finite(p.alpha, "alpha");
  require_finite(p.beta, "beta");
  if (!(p.gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  std::ostringstream os;
  os << "quartic (alpha=" << p.alpha << ", beta=" << p.beta << ", gamma=" << p.gamma << ")";
  return TransformHandle(std::make_shared<AnalyticTransform>(
      p.gamma, std::vector<EvenPolynomial>{EvenPolynomial{{1.0, -p.alpha, p.beta}}}, std::nullopt,
      os.str()));
}

QuarticFromZero quartic_from_zero(ComplexPoint z, double gamma) {
  require_finite(z, "zero");
  if (z.real() == 0.0)
    throw Error(ErrorCode::ZeroOnImaginaryAxis, "a zero on the imaginary axis is impossible");
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  const ComplexPoint rep(std::abs(z.real()), -std::abs(z.imag()));
  const ComplexPoint w = 1.0 / rep;
  const double A = w.real() * w.real();
  const double B = w.imag() * w.imag();
  QuarticParams p{2.0 * (A - B), (A + B) * (A + B), gamma};
  return {p, quartic_handle(p), w};
}

ClassificationReport classify_quartic(const QuarticParams& p) {
  ClassificationReport r;
  r.input = p;
  r.normalized = p.unit_gamma();
  const double alpha = r.normalized.alpha;
  const double beta = r.normalized.beta;
  r.characteristic = is_characteristic(alpha, beta);
  r.strict = is_strictly_subgaussian_quartic(alpha, beta);

  struct Constraint {
    const char* name;
    double distance;
  };
  std::vector<Constraint> cs;
  cs.push_back({"beta>=0", std::abs(beta)});
  cs.push_back({"beta<=1/2", std::abs(0.5 - beta)});
  const double b = std::clamp(beta, 0.0, 0.5);
  const double hw = half_width(b);
  cs.push_back({"alpha>=4beta-2sqrt(beta(1-2beta))", std::abs(alpha - (4.0 * b - hw))});
  if (b <= 1.0 / 3.0)
    cs.push_back({"alpha<=3beta+1", std::abs(3.0 * b + 1.0 - alpha)});
  else
    cs.push_back({"alpha<=4beta+2sqrt(beta(1-2beta))", std::abs(4.0 * b + hw - alpha)});
  if (b <= region::beta0()) cs.push_back({"alpha=sqrt(2beta)", std::abs(alpha - std::sqrt(2.0 * b))});

  auto nearest = std::min_element(cs.begin(), cs.end(), [](const Constraint& x, const Constraint& y) {
    return x.distance < y.distance;
  });
  r.binding_constraint = nearest->name;
  r.boundary_distance = nearest->distance;
  return r;
}

}  // namespace subgauss
