#include "subgauss/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "subgauss/core.hpp"
#include "subgauss/error.hpp"

namespace subgauss {

GriddedDensity::GriddedDensity(double x_min, double step, std::vector<double> values,
                               double noise_floor)
    : x_min_(x_min), step_(step), values_(std::move(values)), noise_floor_(noise_floor) {
  require_finite(x_min, "grid x_min");
  if (!(step > 0.0) || !std::isfinite(step))
    throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0)
      throw Error(ErrorCode::InvalidArgument, "density values must be finite and nonnegative");
  }
  if (values_.size() < 2) return;
  moments_.mass = trapezoid(values_, step_);
  if (moments_.mass <= 0.0) return;
  double m1 = expect([](double x) { return x; }) / moments_.mass;
  moments_.mean = m1;
  moments_.variance = expect([m1](double x) { return (x - m1) * (x - m1); }) / moments_.mass;
}

GriddedDensity GriddedDensity::sample(const std::function<double(double)>& density, double x_min,
                                      double step, std::size_t points) {
  std::vector<double> v(points);
  for (std::size_t i = 0; i < points; ++i) v[i] = density(x_min + step * static_cast<double>(i));
  return GriddedDensity(x_min, step, std::move(v));
}

double GriddedDensity::expect(const std::function<double(double)>& g) const {
  if (values_.size() < 2) return 0.0;
  double sum = 0.5 * (g(x(0)) * values_.front() + g(x(values_.size() - 1)) * values_.back());
  for (std::size_t i = 1; i + 1 < values_.size(); ++i) sum += g(x(i)) * values_[i];
  return sum * step_;
}

GriddedDensity GriddedDensity::normalized() const {
  if (!(moments_.mass > 0.0)) throw Error(ErrorCode::EmptyGrid, "cannot normalize a massless grid");
  std::vector<double> v(values_);
  for (double& p : v) p /= moments_.mass;
  return GriddedDensity(x_min_, step_, std::move(v), noise_floor_ / moments_.mass);
}

bool GriddedDensity::is_symmetric(double tol) const {
  if (values_.empty()) return false;
  if (std::abs(x_min_ + x_max()) > 1e-9 * step_ * static_cast<double>(values_.size())) return false;
  double peak = *std::max_element(values_.begin(), values_.end());
  const std::size_t n = values_.size();
  for (std::size_t i = 0; i < n / 2; ++i)
    if (std::abs(values_[i] - values_[n - 1 - i]) > tol * peak) return false;
  return true;
}

Moments grid_moments(const GriddedDensity& d) {
  if (d.size() < 2 || !(d.mass() > 0.0))
    throw Error(ErrorCode::EmptyGrid, "grid has no points or no mass");
  return {d.mass(), d.mean(), d.variance()};
}

std::size_t default_grid_intervals() {
  if (const char* env = std::getenv("SUBGAUSS_GRID_POINTS")) {
    char* end = nullptr;
    unsigned long long n = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || n < 16 || (n & (n - 1)) != 0)
      throw Error(ErrorCode::ConfigInvalid,
                  "SUBGAUSS_GRID_POINTS must be a power of two >= 16");
    return static_cast<std::size_t>(n);
  }
  return std::size_t{1} << 14;
}

GridSpec default_grid(double sigma) {
  return GridSpec{std::max(10.0, 8.0 * sigma), default_grid_intervals()};
}

GriddedDensity sample_on(const GridSpec& grid, const std::function<double(double)>& density) {
  std::vector<double> v(grid.points());
  const double h = grid.step();
  const std::size_t mid = grid.intervals / 2;
  for (std::size_t i = 0; i < v.size(); ++i) {
    // Exact zero at the centre and exact mirror points on both sides.
    double x = (static_cast<double>(i) - static_cast<double>(mid)) * h;
    v[i] = density(x);
  }
  return GriddedDensity(-static_cast<double>(mid) * h, h, std::move(v));
}

GriddedDensity read_density_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "density CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,p") throw Error(ErrorCode::ParseError, "density CSV header must be `x,p`");
  std::vector<double> xs, ps;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    double x = 0.0, p = 0.0;
    char comma = 0;
    if (!(ss >> x >> comma >> p) || comma != ',')
      throw Error(ErrorCode::ParseError, "malformed density CSV row " + std::to_string(row));
    xs.push_back(x);
    ps.push_back(p);
  }
  if (xs.size() < 2) throw Error(ErrorCode::EmptyGrid, "density CSV needs at least two rows");
  const double step = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  if (!(step > 0.0)) throw Error(ErrorCode::ParseError, "density CSV rows must increase in x");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    double expected = xs.front() + step * static_cast<double>(i);
    if (std::abs(xs[i] - expected) > 1e-9 * std::max(std::abs(step), std::abs(expected)))
      throw Error(ErrorCode::ParseError, "density CSV spacing is not uniform at row " +
                                             std::to_string(i + 2));
  }
  return GriddedDensity(xs.front(), step, std::move(ps));
}

GriddedDensity read_density_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_density_csv(in);
}

void write_density_csv(std::ostream& out, const GriddedDensity& d) {
  out << "x,p\n";
  char buf[64];
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", d.x(i), d[i]);
    out << buf;
  }
}

}  // namespace subgauss
