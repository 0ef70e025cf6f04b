#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "subgauss/core.hpp"
#include "subgauss/grid.hpp"
#include "subgauss/transform.hpp"
#include "support.hpp"

using namespace subgauss;
using testing::error_of;

TEST_CASE("standard normal density") {
  CHECK(standard_normal_density(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));
  // e^{-1/2} / sqrt(2 pi) at double precision
  CHECK(std::abs(standard_normal_density(1.0) - 0.24197072451914337) < 1e-16);
  for (double x : {0.3, 1.7, 6.0}) CHECK(standard_normal_density(x) == standard_normal_density(-x));
  CHECK(std::abs(log_standard_normal_density(2.5) - std::log(standard_normal_density(2.5))) < 1e-14);
}

TEST_CASE("trapezoid rule") {
  const std::vector<double> v{1.0, 1.0, 1.0, 1.0};
  CHECK(trapezoid(v, 0.5) == doctest::Approx(1.5));
  const std::vector<double> ramp{0.0, 1.0, 2.0};
  CHECK(trapezoid(ramp, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("grid moments") {
  SUBCASE("standard normal on [-10, 10] with step 1e-3") {
    const auto d = GriddedDensity::sample(standard_normal_density, -10.0, 1e-3, 20001);
    const auto m = grid_moments(d);
    CHECK(std::abs(m.mass - 1.0) <= 1e-8);
    CHECK(std::abs(m.mean) <= 1e-10);
    CHECK(std::abs(m.variance - 1.0) <= 1e-6);
  }
  SUBCASE("x^2 phi(x) has variance 3") {
    const auto d = GriddedDensity::sample([](double x) { return x * x * standard_normal_density(x); }, -12.0,
                                          1e-3, 24001);
    CHECK(std::abs(grid_moments(d).variance - 3.0) <= 1e-6);
  }
  SUBCASE("massless and empty grids") {
    const GriddedDensity zero(-1.0, 0.5, std::vector<double>(5, 0.0));
    CHECK(error_of([&] { grid_moments(zero); }) == ErrorCode::EmptyGrid);
    CHECK(error_of([] { grid_moments(GriddedDensity{}); }) == ErrorCode::EmptyGrid);
  }
  SUBCASE("invalid samples") {
    CHECK(error_of([] { GriddedDensity(0.0, 1.0, {1.0, -1.0}); }) == ErrorCode::InvalidArgument);
    CHECK(error_of([] { GriddedDensity(0.0, 0.0, {1.0, 1.0}); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("default grid layout") {
  ::unsetenv("SUBGAUSS_GRID_POINTS");
  CHECK(default_grid_intervals() == (1u << 14));
  const GridSpec g = default_grid(2.0);
  CHECK(g.half_width == 16.0);
  CHECK(default_grid(0.5).half_width == 10.0);

  ::setenv("SUBGAUSS_GRID_POINTS", "1024", 1);
  CHECK(default_grid_intervals() == 1024);
  ::setenv("SUBGAUSS_GRID_POINTS", "1000", 1);
  CHECK(error_of([] { default_grid_intervals(); }) == ErrorCode::ConfigInvalid);
  ::setenv("SUBGAUSS_GRID_POINTS", "lots", 1);
  CHECK(error_of([] { default_grid_intervals(); }) == ErrorCode::ConfigInvalid);
  ::unsetenv("SUBGAUSS_GRID_POINTS");

  const auto d = sample_on(GridSpec{10.0, 1024}, standard_normal_density);
  CHECK(d.size() == 1025);
  CHECK(d.x(512) == 0.0);
  CHECK(d.is_symmetric());
}

TEST_CASE("density CSV round trip") {
  const auto d = sample_on(GridSpec{5.0, 64}, standard_normal_density);
  std::stringstream ss;
  write_density_csv(ss, d);
  const auto back = read_density_csv(ss);
  REQUIRE(back.size() == d.size());
  CHECK(back.step() == doctest::Approx(d.step()).epsilon(1e-11));
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(back[i] == doctest::Approx(d[i]).epsilon(1e-11));

  std::stringstream bad_header("x,y\n0,1\n1,1\n");
  CHECK(error_of([&] { read_density_csv(bad_header); }) == ErrorCode::ParseError);
  std::stringstream uneven("x,p\n0,1\n1,1\n2.5,1\n");
  CHECK(error_of([&] { read_density_csv(uneven); }) == ErrorCode::ParseError);
}

TEST_CASE("maximize_1d") {
  auto quad = maximize_1d([](double t) { return -(t - 1.0) * (t - 1.0); }, 0.0, 2.0, 1e-10);
  CHECK(std::abs(quad.arg - 1.0) <= 1e-9);

  auto s = maximize_1d([](double t) { return std::sin(t); }, 0.0, 10.0, 1e-10);
  CHECK(std::abs(s.arg - std::numbers::pi / 2) <= 1e-9);

  // 2 log cosh(t) / t^2 increases to 1 as t -> 0
  auto lc = maximize_1d([](double t) { const double sh = std::sinh(0.5 * t);
    return 2.0 * std::log1p(2.0 * sh * sh) / (t * t);
  }, 1e-6, 50.0);
  CHECK(lc.value <= 1.0);
  CHECK(lc.value >= 1.0 - 1e-9);

  SUBCASE("invariant under monotone rescaling") {
    auto g = [](double t) { return std::sin(3.0 * t) * std::exp(-0.1 * t); };
    auto a = maximize_1d(g, 0.0, 10.0, 1e-10);
    auto b = maximize_1d([&](double t) { return 2.0 * g(t) + 1.0; }, 0.0, 10.0, 1e-10);
    CHECK(std::abs(a.arg - b.arg) <= 1e-9);
  }
  CHECK(error_of([] { maximize_1d([](double t) { return t; }, 1.0, 1.0); }) == ErrorCode::InvalidInterval);
}

TEST_CASE("bisection") {
  CHECK(bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(bisect_predicate([](double x) { return x * x <= 3.0; }, 0.0, 3.0) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(error_of([] { bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0); }) == ErrorCode::InvalidInterval);
}

TEST_CASE("transform handle contract") {
  const std::vector<TransformHandle> handles{
      gaussian_handle(2.0),           symmetric_bernoulli_handle(),        bernoulli_handle(0.3),
      bernoulli_sum_handle({1, 0.5}), uniform_handle(2.0),                 uniform_sum_handle({1.0, 0.25}),
  };
  for (const auto& h : handles) {
    CAPTURE(h.describe());
    CHECK(h.K(0.0) == 0.0);
    CHECK(h.L(0.0) == 1.0);
    for (double t : {0.3, 1.0, 2.5}) {
      // f(-it) = E e^{tX} = L(t)
      const ComplexPoint f = h.f(ComplexPoint(0.0, -t));
      CHECK(testing::rel_err(f.real(), h.L(t)) <= 1e-12);
      CHECK(std::abs(f.imag()) <= 1e-12 * h.L(t));
      if (h.symmetric()) CHECK(testing::rel_err(h.L(-t), h.L(t)) <= 1e-12);
    }
  }
}

TEST_CASE("handle algebra") {
  const auto u = uniform_handle(1.0);
  const auto s = u.scaled(3.0);
  CHECK(s.K(0.7) == doctest::Approx(u.K(2.1)).epsilon(1e-14));
  CHECK(s.variance() == doctest::Approx(3.0));
  const auto sum = u.iid_sum(4);
  CHECK(sum.K(0.9) == doctest::Approx(4.0 * u.K(0.9)).epsilon(1e-14));
  CHECK(sum.variance() == doctest::Approx(4.0 / 3.0));
  const auto z = bernoulli_handle(0.2).standardized();
  CHECK(z.variance() == doctest::Approx(1.0));
  CHECK(z.mean() == doctest::Approx(0.0));
  CHECK(std::abs(z.f(ComplexPoint(1.3, 0.0))) <= 1.0 + 1e-15);
  CHECK(error_of([] { gaussian_handle(1.0).L(40.0); }) == ErrorCode::OverflowGuard);
}

TEST_CASE("sampled density transform") {
  const auto d = sample_on(GridSpec{12.0, 1u << 13}, standard_normal_density);
  const auto h = grid_handle(d);
  for (double t : {-2.0, 0.5, 3.0}) CHECK(std::abs(h.K(t) - 0.5 * t * t) <= 1e-9);
  CHECK(std::abs(h.f(ComplexPoint(1.0, 0.0)).real() - std::exp(-0.5)) <= 1e-9);
  CHECK(h.variance() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(h.symmetric());
  const auto* g = dynamic_cast<const GridTransform*>(&h.impl());
  REQUIRE(g != nullptr);
  CHECK(g->trust_radius() > 3.0);
  CHECK(g->trust_radius() < 12.0);
}
