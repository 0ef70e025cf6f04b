#include "subgauss/construct.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "subgauss/error.hpp"

namespace subgauss {

namespace {

// Relative slack on the cone and on Lambda so that values computed from exact
// boundary data (e.g. zeros at angle exactly pi/8) are accepted.
constexpr double kSlack = 1e-12;

}  // namespace

double lambda_min() {
  const double a0 = region::a0();
  return 4.0 + 1.0 / (a0 * a0);
}

BuiltProduct build_from_zero_set(const ZeroSet& zeros, double lambda) {
  if (zeros.empty()) throw Error(ErrorCode::EmptyZeroSet, "at least one zero is required");
  require_finite(lambda, "lambda");
  if (lambda < lambda_min() * (1.0 - kSlack)) {
    std::ostringstream os;
    os << "lambda = " << lambda << " is below 4 + 1/a0^2 = " << lambda_min();
    throw Error(ErrorCode::LambdaTooSmall, os.str());
  }

  const double cone = 1.0 / (std::sqrt(2.0) + 1.0);
  const double a0 = region::a0();
  BuiltProduct out;
  out.distribution.lambda = lambda;
  double gamma_total = 0.0;
  std::vector<EvenPolynomial> factors;
  for (std::size_t n = 0; n < zeros.size(); ++n) {
    const ComplexPoint z = zeros.zeros()[n];
    const ComplexPoint w = zeros.reciprocal(n);
    const double a = w.real();
    const double b = w.imag();
    if (!(a > 0.0) || b > cone * a * (1.0 + kSlack)) {
      std::ostringstream os;
      os << "zero " << z << " lies outside the cone |Arg z| <= pi/8";
      throw Error(ErrorCode::AngleViolation, os.str());
    }
    ProductComponent c;
    c.zero = z;
    c.w = w;
    c.gamma = (lambda - 4.0) * a * a + (lambda + 4.0) * b * b;
    if (c.gamma < a * a / (a0 * a0) * (1.0 - kSlack))
      throw Error(ErrorCode::LambdaTooSmall, "component gaussian coefficient below a_n^2 / a0^2");
    c.params = QuarticParams{2.0 * (a * a - b * b), (a * a + b * b) * (a * a + b * b), c.gamma};
    out.distribution.total_variance += c.variance();
    gamma_total += c.gamma;
    factors.push_back(EvenPolynomial{{1.0, -c.params.alpha, c.params.beta}});
    out.distribution.components.push_back(c);
  }
  std::ostringstream os;
  os << "product over " << zeros.size() << " zero orbits (Lambda=" << lambda << ")";
  out.handle = TransformHandle(
      std::make_shared<AnalyticTransform>(gamma_total, std::move(factors), std::nullopt, os.str()));
  return out;
}

TransformHandle component_handle(const ProductComponent& c) { return quartic_handle(c.params); }

}  // namespace subgauss
