#include "subgauss/core.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "subgauss/error.hpp"

namespace subgauss {

bool is_finite(ComplexPoint z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_finite(ComplexPoint z, const char* what) {
  if (!is_finite(z)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not finite");
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not finite");
}

double trapezoid(std::span<const double> values, double step) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * step;
}

namespace {

double safe_eval(const std::function<double(double)>& g, double t) {
  double v = g(t);
  return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
}

constexpr double kInvPhi = 0.6180339887498948482;

Maximum golden(const std::function<double(double)>& g, double a, double b, double width) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = safe_eval(g, c);
  double gd = safe_eval(g, d);
  for (int it = 0; it < 300 && (b - a) > width; ++it) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = safe_eval(g, c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = safe_eval(g, d);
    }
  }
  return gc >= gd ? Maximum{c, gc} : Maximum{d, gd};
}

// Vertex of the parabola through (x-h, x, x+h); keeps the input if the fit is
// not concave or its vertex falls outside the probed window.
Maximum parabolic_polish(const std::function<double(double)>& g, Maximum m, double lo, double hi,
                         double h) {
  for (int it = 0; it < 3; ++it) {
    double xl = m.arg - h, xr = m.arg + h;
    if (xl < lo || xr > hi) break;
    double gl = safe_eval(g, xl), gr = safe_eval(g, xr);
    double curv = gl - 2.0 * m.value + gr;
    if (!(curv < 0.0)) break;
    double shift = 0.5 * h * (gl - gr) / curv;
    if (std::abs(shift) > h) break;
    double x = m.arg + shift;
    double gx = safe_eval(g, x);
    if (gx < m.value) break;
    m = {x, gx};
    if (std::abs(shift) < 1e-3 * h) break;
  }
  return m;
}

}  // namespace

Maximum maximize_1d(const std::function<double(double)>& g, double lo, double hi, double tol,
                    int scan_points) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw Error(ErrorCode::InvalidInterval, "maximize_1d requires finite lo < hi");
  if (scan_points < 3) scan_points = 3;
  const double step = (hi - lo) / (scan_points - 1);
  std::vector<double> xs(scan_points), gs(scan_points);
  for (int i = 0; i < scan_points; ++i) {
    xs[i] = i + 1 == scan_points ? hi : lo + i * step;
    gs[i] = safe_eval(g, xs[i]);
  }

  Maximum best{xs[0], gs[0]};
  for (int i = 1; i < scan_points; ++i)
    if (gs[i] > best.value) best = {xs[i], gs[i]};

  std::vector<int> peaks;
  for (int i = 1; i + 1 < scan_points; ++i)
    if (gs[i] >= gs[i - 1] && gs[i] >= gs[i + 1] && std::isfinite(gs[i])) peaks.push_back(i);
  constexpr std::size_t kMaxRefinements = 16;
  if (peaks.size() > kMaxRefinements) {
    std::partial_sort(peaks.begin(), peaks.begin() + kMaxRefinements, peaks.end(),
                      [&](int a, int b) { return gs[a] > gs[b]; });
    peaks.resize(kMaxRefinements);
  }

  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  const double golden_width = std::max(tol, 1e-6 * scale);
  for (int i : peaks) {
    Maximum m = golden(g, xs[i - 1], xs[i + 1], golden_width);
    m = parabolic_polish(g, m, lo, hi, std::max(golden_width, 1e-4 * scale));
    if (m.value > best.value) best = m;
  }
  return best;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw Error(ErrorCode::InvalidInterval, "bisect: no sign change on the bracket");
  for (int i = 0; i < iterations; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double bisect_predicate(const std::function<bool(double)>& inside, double lo, double hi,
                        int iterations) {
  if (inside(hi)) return hi;
  for (int i = 0; i < iterations; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (inside(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace subgauss
