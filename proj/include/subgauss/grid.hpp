#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace subgauss {

struct Moments {
  double mass = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

// A density sampled on the uniform grid x_i = x_min + i * step. Values are
// nonnegative. `noise_floor` is the absolute error of each sample (zero for
// densities sampled from a closed form); ratio-type statistics ignore samples
// that are not clearly above it.
class GriddedDensity {
 public:
  GriddedDensity() = default;
  GriddedDensity(double x_min, double step, std::vector<double> values, double noise_floor = 0.0);

  // Samples `density` at `points` points starting at x_min.
  static GriddedDensity sample(const std::function<double(double)>& density, double x_min,
                               double step, std::size_t points);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_min_ + step_ * static_cast<double>(values_.size() - 1); }
  double step() const noexcept { return step_; }
  double x(std::size_t i) const noexcept { return x_min_ + step_ * static_cast<double>(i); }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double noise_floor() const noexcept { return noise_floor_; }

  // Trapezoid-rule moments, computed once at construction.
  double mass() const noexcept { return moments_.mass; }
  double mean() const noexcept { return moments_.mean; }
  double variance() const noexcept { return moments_.variance; }

  // Trapezoid integral of g(x) p(x).
  double expect(const std::function<double(double)>& g) const;

  // Copy scaled to unit mass.
  GriddedDensity normalized() const;

  // True if the grid is symmetric about 0 and p(x) = p(-x) within `tol`
  // relative to the largest value.
  bool is_symmetric(double tol = 1e-9) const;

 private:
  double x_min_ = 0.0;
  double step_ = 1.0;
  std::vector<double> values_;
  double noise_floor_ = 0.0;
  Moments moments_;
};

// Throws EmptyGrid for an empty grid or one without mass.
Moments grid_moments(const GriddedDensity& d);

// Grid layout used when a density is synthesized from a closed form: the
// symmetric grid [-L, L] with L = max(10, 8 sigma) and a power-of-two number of
// intervals (so 0 is a grid point).
struct GridSpec {
  double half_width = 10.0;
  std::size_t intervals = 1u << 14;

  double step() const noexcept { return 2.0 * half_width / static_cast<double>(intervals); }
  std::size_t points() const noexcept { return intervals + 1; }
  double x_min() const noexcept { return -half_width; }
};

// Interval count from SUBGAUSS_GRID_POINTS when set (must be a power of two),
// 2^14 otherwise.
std::size_t default_grid_intervals();
GridSpec default_grid(double sigma);

GriddedDensity sample_on(const GridSpec& grid, const std::function<double(double)>& density);

// CSV with header `x,p`, rows in increasing x with uniform spacing (checked to
// 1e-9 relative on load).
GriddedDensity read_density_csv(std::istream& in);
GriddedDensity read_density_csv_file(const std::string& path);
void write_density_csv(std::ostream& out, const GriddedDensity& d);

}  // namespace subgauss
