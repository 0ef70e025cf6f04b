#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "subgauss/charfn.hpp"
#include "subgauss/construct.hpp"
#include "subgauss/grid.hpp"
#include "subgauss/periodic.hpp"
#include "subgauss/transform.hpp"

namespace subgauss {

// A distribution described in JSON. Recognized kinds:
//   gaussian {variance}            bernoulli {p}
//   bernoulli_sum {weights}        uniform {a}      uniform_sum {weights}
//   classL {gamma, zeros}          hermite {d}      sinhc {a, count}
//   quartic {alpha, beta, gamma}   product {zeros, lambda}
//   periodic {family: sin_power {power} | theta {sigma, terms} |
//             coeffs {a0, a, b, period}; c or c_fraction}
//   density {csv}
// A bare {"zeros": [[re, im], ...], "gamma": g} is a zero set. Every spec may
// carry "name", "description" and "non_strict"; other keys are rejected.
struct LoadedSpec {
  std::string name;
  std::string kind;
  std::string description;
  bool non_strict = false;
  TransformHandle handle;
  std::optional<GriddedDensity> density;          // kind density
  std::optional<PeriodicComponent> periodic;      // kind periodic
  std::optional<ProductDistribution> product;     // kind product
  nlohmann::json source;
};

LoadedSpec load_spec(const nlohmann::json& j, const std::string& base_dir = ".");
LoadedSpec load_spec_file(const std::string& path);
nlohmann::json parse_json_file(const std::string& path);

// Zero set schema {"zeros": [[re, im], ...], "gamma": g}; points are mapped to
// their quadrant representatives.
struct ZeroSetSpec {
  ZeroSet zeros;
  double gamma = 0.0;
};
ZeroSetSpec parse_zero_set(const nlohmann::json& j);

// Coefficient file {"a0": .., "a": [..], "b": [..], "period": ..}; c is left 0.
PeriodicComponent parse_periodic_coeffs(const nlohmann::json& j);

// Positive roots of the Hermite polynomial He_{2d}, increasing.
std::vector<double> hermite_positive_roots(int d);

// Density on the default grid for the handle's standard deviation, or the CSV
// samples for density specs.
GriddedDensity spec_density(const LoadedSpec& s, bool standardized);

struct Fixture {
  std::string name;
  nlohmann::json spec;
};

// The example corpus, in a fixed order.
const std::vector<Fixture>& fixture_registry();
const Fixture& find_fixture(const std::string& name);

}  // namespace subgauss
