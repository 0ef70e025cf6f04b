#include "subgauss/spec.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include "subgauss/error.hpp"
#include "subgauss/quartic.hpp"
#include "subgauss/renyi.hpp"

namespace subgauss {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

void allow_keys(const json& j, std::set<std::string> keys) {
  keys.insert({"kind", "name", "description", "non_strict"});
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) invalid("unknown key '" + k + "'");
}

double number(const json& j, const char* key) {
  if (!j.contains(key)) invalid(std::string("missing '") + key + "'");
  if (!j.at(key).is_number()) invalid(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

std::vector<double> numbers(const json& j, const char* key) {
  if (!j.contains(key)) invalid(std::string("missing '") + key + "'");
  const json& a = j.at(key);
  if (!a.is_array()) invalid(std::string("'") + key + "' must be an array");
  std::vector<double> v;
  for (const auto& x : a) {
    if (!x.is_number()) invalid(std::string("'") + key + "' must hold numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<ComplexPoint> complex_points(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) invalid(std::string("'") + key + "' must be an array");
  std::vector<ComplexPoint> pts;
  for (const auto& z : j.at(key)) {
    if (z.is_number()) {
      pts.emplace_back(z.get<double>(), 0.0);
    } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
      pts.emplace_back(z[0].get<double>(), z[1].get<double>());
    } else {
      invalid("zeros must be numbers or [re, im] pairs");
    }
  }
  return pts;
}

PeriodicComponent periodic_from(const json& j) {
  if (!j.contains("family") || !j.at("family").is_string()) invalid("periodic spec needs a 'family'");
  const std::string family = j.at("family").get<std::string>();
  PeriodicComponent p;
  if (family == "sin_power") {
    allow_keys(j, {"family", "power", "c", "c_fraction"});
    p = sin_power_fourier(static_cast<int>(number(j, "power")));
  } else if (family == "theta") {
    allow_keys(j, {"family", "sigma", "terms", "c", "c_fraction"});
    p = theta_component(ThetaComponent{number(j, "sigma")}, static_cast<int>(number_or(j, "terms", 40)));
  } else if (family == "coeffs") {
    json coeffs = j;
    for (const char* k : {"family", "c", "c_fraction"}) coeffs.erase(k);
    p = parse_periodic_coeffs(coeffs);
  } else {
    invalid("unknown periodic family '" + family + "'");
  }
  if (j.contains("c") == j.contains("c_fraction")) invalid("periodic spec needs exactly one of 'c', 'c_fraction'");
  p.c = j.contains("c") ? number(j, "c") : number(j, "c_fraction") * max_admissible_c(p);
  if (std::abs(p.c) > max_admissible_c(p) * (1.0 + 1e-12)) throw Error(ErrorCode::CTooLarge, "c exceeds c_max");
  if (!moment_constraints(p).hold)
    throw Error(ErrorCode::MomentConstraintViolated, "P(0) = P'(0) = P''(0) = 0 does not hold");
  return p;
}

}  // namespace

PeriodicComponent parse_periodic_coeffs(const json& j) {
  if (!j.is_object()) invalid("coefficients must be a JSON object");
  allow_keys(j, {"a0", "a", "b", "period"});
  PeriodicComponent p;
  p.a0 = number_or(j, "a0", 0.0);
  if (j.contains("a")) p.a = numbers(j, "a");
  if (j.contains("b")) p.b = numbers(j, "b");
  p.period = number_or(j, "period", p.period);
  if (!(p.period > 0.0)) invalid("period must be positive");
  return p;
}

std::vector<double> hermite_positive_roots(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be at least 1");
  const int n = 2 * d;
  auto he = [n](double x) {
    double prev = 1.0, cur = x;
    for (int m = 1; m < n; ++m) {
      const double next = x * cur - m * prev;
      prev = cur;
      cur = next;
    }
    return cur;
  };
  // All roots lie below sqrt(4n + 2); d sign changes on (0, bound).
  const double bound = std::sqrt(4.0 * n + 2.0);
  const int scan = 4000 * d;
  std::vector<double> roots;
  double x0 = 0.0, f0 = he(0.0);
  for (int i = 1; i <= scan; ++i) {
    const double x1 = bound * i / scan;
    const double f1 = he(x1);
    if ((f0 < 0.0) != (f1 < 0.0)) roots.push_back(bisect(he, x0, x1));
    x0 = x1;
    f0 = f1;
  }
  if (static_cast<int>(roots.size()) != d) throw Error(ErrorCode::NumericFailure, "Hermite root count mismatch");
  return roots;
}

ZeroSetSpec parse_zero_set(const json& j) {
  if (!j.is_object()) invalid("zero set must be a JSON object");
  allow_keys(j, {"zeros", "gamma"});
  ZeroSetSpec z;
  z.zeros = ZeroSet::canonical(complex_points(j, "zeros"));
  z.gamma = number_or(j, "gamma", 0.0);
  return z;
}

LoadedSpec load_spec(const json& j, const std::string& base_dir) {
  if (!j.is_object()) invalid("spec must be a JSON object");
  LoadedSpec s;
  s.source = j;
  s.kind = j.contains("kind") ? j.at("kind").get<std::string>() : (j.contains("zeros") ? "zero_set" : "");
  s.name = j.value("name", s.kind);
  s.description = j.value("description", "");
  s.non_strict = j.value("non_strict", false);
  const std::string& k = s.kind;

  if (k == "gaussian") {
    allow_keys(j, {"variance"});
    s.handle = gaussian_handle(number_or(j, "variance", 1.0));
  } else if (k == "bernoulli") {
    allow_keys(j, {"p"});
    const double p = number(j, "p");
    s.handle = p == 0.5 ? symmetric_bernoulli_handle() : bernoulli_handle(p);
  } else if (k == "bernoulli_sum") {
    allow_keys(j, {"weights"});
    s.handle = bernoulli_sum_handle(numbers(j, "weights"));
  } else if (k == "uniform") {
    allow_keys(j, {"a"});
    s.handle = uniform_handle(number_or(j, "a", 1.0));
  } else if (k == "uniform_sum") {
    allow_keys(j, {"weights"});
    s.handle = uniform_sum_handle(numbers(j, "weights"));
  } else if (k == "classL") {
    allow_keys(j, {"gamma", "zeros"});
    s.handle = classL_from_real_zeros(number_or(j, "gamma", 0.0), numbers(j, "zeros"));
  } else if (k == "hermite") {
    allow_keys(j, {"d"});
    s.handle = classL_from_real_zeros(1.0, hermite_positive_roots(static_cast<int>(number(j, "d"))));
  } else if (k == "sinhc") {
    allow_keys(j, {"a", "count"});
    s.handle = class_l_handle(sinhc_class_l(number(j, "a"), static_cast<int>(number_or(j, "count", 200))));
  } else if (k == "quartic") {
    allow_keys(j, {"alpha", "beta", "gamma"});
    s.handle = quartic_handle(QuarticParams{number(j, "alpha"), number(j, "beta"), number_or(j, "gamma", 1.0)});
  } else if (k == "zero_set") {
    const ZeroSetSpec z = parse_zero_set(j);
    s.handle = zero_set_handle(z.zeros, z.gamma);
  } else if (k == "product") {
    allow_keys(j, {"zeros", "lambda"});
    const auto built = build_from_zero_set(ZeroSet::canonical(complex_points(j, "zeros")), number(j, "lambda"));
    s.product = built.distribution;
    s.handle = built.handle;
  } else if (k == "periodic") {
    s.periodic = periodic_from(j);
    s.handle = periodic_handle(*s.periodic);
  } else if (k == "density") {
    allow_keys(j, {"csv"});
    if (!j.contains("csv") || !j.at("csv").is_string()) invalid("density spec needs 'csv'");
    std::filesystem::path p = j.at("csv").get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    s.density = read_density_csv_file(p.string());
    s.handle = grid_handle(*s.density);
  } else {
    invalid("unknown spec kind '" + k + "'");
  }
  return s;
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

LoadedSpec load_spec_file(const std::string& path) {
  const auto base = std::filesystem::path(path).parent_path().string();
  return load_spec(parse_json_file(path), base.empty() ? "." : base);
}

GriddedDensity spec_density(const LoadedSpec& s, bool standardized) {
  if (s.density) {
    if (!standardized) return *s.density;
    const GriddedDensity& d = *s.density;
    const double sd = std::sqrt(d.variance());
    std::vector<double> v(d.values().begin(), d.values().end());
    for (double& x : v) x *= sd / d.mass();
    return GriddedDensity((d.x_min() - d.mean()) / sd, d.step() / sd, std::move(v), d.noise_floor() * sd);
  }
  const double sd = standardized ? 1.0 : std::sqrt(s.handle.variance());
  return standardized ? synthesize_standardized(s.handle, default_grid(sd))
                      : synthesize_density(s.handle, default_grid(sd));
}

const std::vector<Fixture>& fixture_registry() {
  static const std::vector<Fixture> registry = [] {
    std::vector<double> harmonic;
    for (int n = 1; n <= 20; ++n) harmonic.push_back(1.0 / n);
    const double b = 1.0 / 3.0;
    return std::vector<Fixture>{
        {"gaussian", {{"kind", "gaussian"}, {"variance", 1.0}, {"description", "standard normal"}}},
        {"rademacher", {{"kind", "bernoulli"}, {"p", 0.5}, {"description", "symmetric Bernoulli on +-1, centered"}}},
        {"bernoulli_harmonic_sum",
         {{"kind", "bernoulli_sum"}, {"weights", harmonic}, {"description", "Bernoulli sum with a_n = 1/n"}}},
        {"uniform", {{"kind", "uniform"}, {"a", 1.0}, {"description", "uniform on [-1, 1]"}}},
        {"uniform_sum",
         {{"kind", "uniform_sum"}, {"weights", {1.0, 0.5, 0.25}}, {"description", "sum of scaled uniforms"}}},
        {"x2_gaussian",
         {{"kind", "classL"}, {"gamma", 1.0}, {"zeros", {1.0}}, {"description", "density x^2 phi(x)"}}},
        {"x4_gaussian", {{"kind", "hermite"}, {"d", 2}, {"description", "density x^4 phi(x) / 3"}}},
        {"quartic_boundary",
         {{"kind", "quartic"},
          {"alpha", std::sqrt(2.0 * b)},
          {"beta", b},
          {"description", "1 - sqrt(2/3) t^2 + t^4/3: zeros on the pi/8 rays"}}},
        {"quartic_non_strict",
         {{"kind", "quartic"},
          {"alpha", 0.3},
          {"beta", 0.1},
          {"non_strict", true},
          {"description", "characteristic but alpha < sqrt(2 beta)"}}},
        {"bernoulli_0_7",
         {{"kind", "bernoulli"}, {"p", 0.7}, {"non_strict", true}, {"description", "asymmetric Bernoulli"}}},
        {"product_cone",
         {{"kind", "product"},
          {"zeros",
           {{std::cos(std::numbers::pi / 10), std::sin(std::numbers::pi / 10)},
            {2.0 * std::cos(std::numbers::pi / 16), 2.0 * std::sin(std::numbers::pi / 16)}}},
          {"lambda", 6.0},
          {"description", "independent sum with zeros at e^{i pi/10} and 2 e^{i pi/16}"}}},
        {"periodic_sin4",
         {{"kind", "periodic"},
          {"family", "sin_power"},
          {"power", 4},
          {"c_fraction", 0.5},
          {"description", "Psi = 1 - c sin^4 t, c = c_max / 2"}}},
        {"periodic_theta",
         {{"kind", "periodic"},
          {"family", "theta"},
          {"sigma", 1.5},
          {"c_fraction", 0.5},
          {"description", "Psi = 1 - c sin^4(t) Q(t) with a Gaussian theta window"}}},
    };
  }();
  return registry;
}

const Fixture& find_fixture(const std::string& name) {
  for (const auto& f : fixture_registry())
    if (f.name == name) return f;
  throw Error(ErrorCode::ConfigInvalid, "unknown fixture '" + name + "'");
}

}  // namespace subgauss
