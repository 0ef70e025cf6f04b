#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "subgauss/grid.hpp"
#include "subgauss/quartic.hpp"
#include "support.hpp"

using namespace subgauss;
using testing::error_of;

namespace {
const double kEdgeAlpha = std::sqrt(2.0 / 3.0);
}

TEST_CASE("region constants") {
  CHECK(region::beta0() == doctest::Approx(0.37007).epsilon(1e-4));
  CHECK(region::a0() == doctest::Approx(0.72061).epsilon(1e-4));
  // a0 is where the cone edge B = A / (sqrt2 + 1)^2 meets A + B = sqrt(beta0)
  const double A = region::a0() * region::a0();
  CHECK(A * (1.0 + 1.0 / std::pow(std::sqrt(2.0) + 1.0, 2)) == doctest::Approx(std::sqrt(region::beta0())));
  CHECK(region::a_max() == doctest::Approx(0.8409).epsilon(1e-4));
  CHECK(std::abs(region::beta0() - (7.0 + 2.0 * std::sqrt(10.0)) / 36.0) <= 1e-12);
}

TEST_CASE("characteristic-function region") {
  CHECK(is_characteristic(1.0, 0.0));
  CHECK_FALSE(is_characteristic(1.0 + 1e-9, 0.0));
  CHECK(is_characteristic(0.0, 0.0));
  CHECK(is_characteristic(kEdgeAlpha, 1.0 / 3.0));
  CHECK_FALSE(is_characteristic(0.0, -0.01));
  CHECK_FALSE(is_characteristic(2.0, 0.51));
  // corner beta = 1/2: the interval degenerates to alpha = 2
  CHECK(is_characteristic(2.0, 0.5));
  CHECK_FALSE(is_characteristic(2.01, 0.5));
}

TEST_CASE("strict region") {
  CHECK(is_strictly_subgaussian_quartic(kEdgeAlpha, 1.0 / 3.0));
  for (double b : {0.01, 0.2, 0.45}) CHECK_FALSE(is_strictly_subgaussian_quartic(0.0, b));
  CHECK(is_strictly_subgaussian_quartic(1.0, 0.0));
  CHECK_FALSE(is_strictly_subgaussian_quartic(1.5, 0.0));

  SUBCASE("agrees with the piecewise formulation") {
    int mismatches = 0;
    for (int i = 0; i <= 400; ++i) {
      for (int j = 0; j <= 400; ++j) {
        const double a = -0.5 + 2.5 * i / 400.0, b = 0.6 * j / 400.0;
        if (is_strictly_subgaussian_quartic(a, b) != strict_region_piecewise(a, b)) ++mismatches;
      }
    }
    CHECK(mismatches == 0);
  }

  SUBCASE("Laplace-side inequality") {
    // 1 + alpha t^2 + beta t^4 <= e^{alpha t^2} exactly when alpha >= sqrt(2 beta)
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ua(-0.5, 2.0), ub(0.0, 0.5);
    int checked = 0;
    while (checked < 300) {
      const double a = ua(rng), b = ub(rng);
      if (!is_characteristic(a, b) || std::abs(a - std::sqrt(2.0 * b)) < 1e-3) continue;
      ++checked;
      double sup = -1.0;
      for (int k = 1; k <= 6000; ++k) {
        const double t = 0.005 * k;
        sup = std::max(sup, std::log1p(a * t * t + b * t * t * t * t) - a * t * t);
      }
      CHECK((sup <= 1e-10) == (a >= std::sqrt(2.0 * b)));
    }
  }
}

TEST_CASE("density coefficients") {
  auto c = quartic_density_coeffs(1.0, 0.0);
  CHECK(c.c0 == 0.0);
  CHECK(c.c2 == 1.0);
  CHECK(c.c4 == 0.0);
  c = quartic_density_coeffs(0.0, 0.0);
  CHECK(c.c0 == 1.0);

  SUBCASE("density on the characteristic boundary touches zero") {
    const double beta = 0.4, alpha = 1.6 - std::sqrt(0.32);  // c2^2 = 4 c0 c4
    CHECK(is_characteristic(alpha, beta));
    const auto e = quartic_density_coeffs(alpha, beta);
    CHECK(e.c0 == doctest::Approx(1.0 - alpha + 3.0 * beta));
    CHECK(e.c2 == doctest::Approx(alpha - 6.0 * beta));
    CHECK(e.c4 == doctest::Approx(beta));
    const auto m = maximize_1d([&](double y) { return -(e.c0 + e.c2 * y + e.c4 * y * y); }, 0.0, 10.0);
    CHECK(std::abs(m.value) <= 1e-12);
    const auto inner = quartic_density_coeffs(kEdgeAlpha, 1.0 / 3.0);
    CHECK(inner.c0 == doctest::Approx(2.0 - kEdgeAlpha));
  }
  CHECK(error_of([] { quartic_density_coeffs(0.0, 0.6); }) == ErrorCode::NotACharacteristicFunction);

  SUBCASE("nonnegative on admissible samples") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ua(-0.5, 2.5), ub(0.0, 0.5);
    int checked = 0;
    while (checked < 200) {
      const double a = ua(rng), b = ub(rng);
      if (!is_characteristic(a, b)) continue;
      ++checked;
      const auto k = quartic_density_coeffs(a, b);
      double lowest = 1.0;
      for (int i = 0; i < 10000; ++i) {
        const double y = 0.01 * i;
        lowest = std::min(lowest, k.c0 + k.c2 * y + k.c4 * y * y);
      }
      CHECK(lowest >= -1e-12);
    }
  }
}

TEST_CASE("general gamma") {
  const QuarticParams p{0.6, 0.3, 2.0};
  const auto u = p.unit_gamma();
  CHECK(u.alpha == doctest::Approx(0.3));
  CHECK(u.beta == doctest::Approx(0.075));
  const auto d = sample_on(GridSpec{20.0, 1u << 14}, [&](double x) { return quartic_density(p, x); });
  CHECK(d.mass() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(d.variance() == doctest::Approx(p.variance()).epsilon(1e-9));
  const auto h = quartic_handle(p);
  CHECK(h.variance() == doctest::Approx(3.2));
  CHECK(h.f(1.1).real() == doctest::Approx(std::exp(-1.21) * (1 - 0.6 * 1.21 + 0.3 * 1.21 * 1.21)));
}

TEST_CASE("admissible b(a)") {
  const double s = std::sqrt(2.0) + 1.0;
  CHECK(admissible_b_max(0.5) == doctest::Approx(0.5 / s).epsilon(1e-14));
  CHECK(admissible_b_max(region::a_max()) <= 1e-9);
  CHECK(std::abs(admissible_b_max(region::a0() * (1 + 1e-14)) - region::a0() / s) <= 1e-9);
  CHECK(error_of([] { admissible_b_max(0.0); }) == ErrorCode::OutOfDomain);
  CHECK(error_of([] { admissible_b_max(region::a_max() * 1.01); }) == ErrorCode::OutOfDomain);

  SUBCASE("nothing is admissible past sqrt(2/3)") {
    const double a = 0.83, A = a * a;
    CHECK(admissible_b_max(a) == 0.0);
    CHECK_FALSE(is_characteristic(2.0 * A, A * A));
    CHECK(is_characteristic(4.0 / 3.0, 4.0 / 9.0));  // a = sqrt(2/3), b = 0
  }
  SUBCASE("b(a) is the edge of the strict region") {
    for (double a : {0.3, 0.6, 0.75, 0.8, 0.81}) {
      CAPTURE(a);
      const double b = admissible_b_max(a);
      auto strict_at = [&](double bb) {
        const double A = a * a, B = bb * bb;
        return is_strictly_subgaussian_quartic(2.0 * (A - B), (A + B) * (A + B));
      };
      CHECK(strict_at(b * (1.0 - 1e-9)));
      CHECK_FALSE(strict_at(b * (1.0 + 1e-6) + 1e-9));
    }
  }
}

TEST_CASE("quartic from a prescribed zero") {
  SUBCASE("real zero") {
    const auto q = quartic_from_zero(1.0, 1.0);
    CHECK(q.params.alpha == doctest::Approx(2.0));
    CHECK(q.params.beta == doctest::Approx(1.0));
    CHECK(q.handle.variance() == doctest::Approx(5.0));
    for (double t : {0.4, 1.3, 2.2})
      CHECK(q.handle.f(t).real() == doctest::Approx(std::exp(-0.5 * t * t) * std::pow(1 - t * t, 2)));
  }
  SUBCASE("zero on the pi/8 ray gives the boundary example") {
    const ComplexPoint z = std::polar(std::pow(3.0, 0.25), std::numbers::pi / 8.0);
    const auto q = quartic_from_zero(z, 1.0);
    CHECK(q.params.alpha == doctest::Approx(kEdgeAlpha).epsilon(1e-13));
    CHECK(q.params.beta == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    for (ComplexPoint zz : {z, -z, std::conj(z), -std::conj(z)})
      CHECK(std::abs(q.handle.f(zz)) <= 1e-10 * std::exp(std::norm(zz)));
  }
  CHECK(error_of([] { quartic_from_zero(ComplexPoint(0.0, 2.0), 1.0); }) == ErrorCode::ZeroOnImaginaryAxis);

  SUBCASE("angle identity") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> r(0.2, 3.0), th(-0.7, 0.7);
    for (int i = 0; i < 100; ++i) {
      const ComplexPoint w = std::polar(r(rng), th(rng));
      const auto q = quartic_from_zero(1.0 / w, 1.0);
      const double lhs = q.params.alpha * q.params.alpha - 2.0 * q.params.beta;
      const double rhs = 2.0 * q.params.beta * std::cos(4.0 * std::arg(w));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, 2.0 * q.params.beta));
    }
  }
}

TEST_CASE("classification report") {
  const auto r = classify_quartic(QuarticParams{0.8165, 0.3333, 1.0});
  CHECK(r.characteristic);
  CHECK(r.strict);
  CHECK(r.binding_constraint == "alpha=sqrt(2beta)");
  CHECK(r.boundary_distance == doctest::Approx(0.8165 - std::sqrt(0.6666)).epsilon(1e-9));

  const auto g = classify_quartic(QuarticParams{2.0, 4.0, 2.0});
  CHECK(g.normalized.alpha == doctest::Approx(1.0));
  CHECK(g.normalized.beta == doctest::Approx(1.0));
  CHECK_FALSE(g.characteristic);
  CHECK_FALSE(g.strict);
}
