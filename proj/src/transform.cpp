#include "subgauss/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "subgauss/error.hpp"
#include "subgauss/grid.hpp"

namespace subgauss {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double log_cosh(double x) {
  const double ax = std::abs(x);
  if (ax < 1.0) {
    // cosh x - 1 = 2 sinh^2(x/2), no cancellation near 0
    const double s = std::sinh(0.5 * ax);
    return std::log1p(2.0 * s * s);
  }
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

// log(sinh(x) / x)
double log_sinhc(double x) {
  const double ax = std::abs(x);
  if (ax < 0.1) {
    const double x2 = ax * ax;
    return x2 * (1.0 / 6.0 + x2 * (-1.0 / 180.0 + x2 * (1.0 / 2835.0 + x2 * (-1.0 / 37800.0 + x2 / 467775.0))));
  }
  if (ax < 20.0) return std::log(std::sinh(ax) / ax);
  return ax + std::log1p(-std::exp(-2.0 * ax)) - std::numbers::ln2 - std::log(ax);
}

ComplexPoint sinc(ComplexPoint z) {
  if (std::abs(z) < 1e-4) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

class ScaledTransform final : public Transform {
 public:
  ScaledTransform(std::shared_ptr<const Transform> inner, double lambda)
      : inner_(std::move(inner)), lambda_(lambda) {}
  double log_laplace(double t) const override { return inner_->log_laplace(lambda_ * t); }
  ComplexPoint char_fn(ComplexPoint z) const override { return inner_->char_fn(lambda_ * z); }
  double mean() const override { return lambda_ * inner_->mean(); }
  double variance() const override { return lambda_ * lambda_ * inner_->variance(); }
  bool symmetric() const override { return inner_->symmetric(); }
  std::string describe() const override {
    std::ostringstream os;
    os << lambda_ << " * (" << inner_->describe() << ")";
    return os.str();
  }

 private:
  std::shared_ptr<const Transform> inner_;
  double lambda_;
};

class IidSumTransform final : public Transform {
 public:
  IidSumTransform(std::shared_ptr<const Transform> inner, int n) : inner_(std::move(inner)), n_(n) {}
  double log_laplace(double t) const override { return n_ * inner_->log_laplace(t); }
  ComplexPoint char_fn(ComplexPoint z) const override { return std::pow(inner_->char_fn(z), n_); }
  double mean() const override { return n_ * inner_->mean(); }
  double variance() const override { return n_ * inner_->variance(); }
  bool symmetric() const override { return inner_->symmetric(); }
  std::string describe() const override {
    return "sum of " + std::to_string(n_) + " copies of (" + inner_->describe() + ")";
  }

 private:
  std::shared_ptr<const Transform> inner_;
  int n_;
};

class ShiftedTransform final : public Transform {
 public:
  ShiftedTransform(std::shared_ptr<const Transform> inner, double shift)
      : inner_(std::move(inner)), shift_(shift) {}
  double log_laplace(double t) const override { return inner_->log_laplace(t) + shift_ * t; }
  ComplexPoint char_fn(ComplexPoint z) const override {
    return inner_->char_fn(z) * std::exp(ComplexPoint(0.0, 1.0) * z * shift_);
  }
  double mean() const override { return inner_->mean() + shift_; }
  double variance() const override { return inner_->variance(); }
  bool symmetric() const override { return shift_ == 0.0 && inner_->symmetric(); }
  std::string describe() const override { return inner_->describe(); }

 private:
  std::shared_ptr<const Transform> inner_;
  double shift_;
};

}  // namespace

double TransformHandle::L(double t) const {
  double k = K(t);
  if (k > kOverflowExponent) throw Error(ErrorCode::OverflowGuard, "L(t) exceeds double range");
  return std::exp(k);
}

ComplexPoint TransformHandle::f(ComplexPoint z) const {
  require_finite(z, "transform argument");
  return impl_->char_fn(z);
}

TransformHandle TransformHandle::scaled(double lambda) const {
  require_finite(lambda, "scale factor");
  return TransformHandle(std::make_shared<ScaledTransform>(impl_, lambda));
}

TransformHandle TransformHandle::iid_sum(int n) const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "iid_sum needs n >= 1");
  if (n == 1) return *this;
  return TransformHandle(std::make_shared<IidSumTransform>(impl_, n));
}

TransformHandle TransformHandle::standardized() const {
  double sd = std::sqrt(variance());
  if (!(sd > 0.0)) throw Error(ErrorCode::InvalidArgument, "cannot standardize a degenerate law");
  TransformHandle centered = mean() == 0.0
                                 ? *this
                                 : TransformHandle(std::make_shared<ShiftedTransform>(impl_, -mean()));
  return centered.scaled(1.0 / sd);
}

double EvenPolynomial::laplace_log(double t) const {
  const double u = -t * t;
  double s = 0.0;
  double pw = 1.0;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    pw *= u;
    s += coeffs[k] * pw;
  }
  return s > -1.0 ? std::log1p(s) : kNaN;
}

ComplexPoint EvenPolynomial::at(ComplexPoint u) const {
  ComplexPoint acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * u + coeffs[k];
  return acc;
}

double TrigSeries::P(double s) const {
  double v = a0;
  for (std::size_t k = 0; k < a.size(); ++k) v += a[k] * std::cos((k + 1.0) * s);
  for (std::size_t k = 0; k < b.size(); ++k) v += b[k] * std::sin((k + 1.0) * s);
  return v;
}

double TrigSeries::dP(double s) const {
  double v = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) v -= (k + 1.0) * a[k] * std::sin((k + 1.0) * s);
  for (std::size_t k = 0; k < b.size(); ++k) v += (k + 1.0) * b[k] * std::cos((k + 1.0) * s);
  return v;
}

double TrigSeries::d2P(double s) const {
  double v = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    v -= (k + 1.0) * (k + 1.0) * a[k] * std::cos((k + 1.0) * s);
  for (std::size_t k = 0; k < b.size(); ++k)
    v -= (k + 1.0) * (k + 1.0) * b[k] * std::sin((k + 1.0) * s);
  return v;
}

bool TrigSeries::has_sine_terms() const {
  return std::any_of(b.begin(), b.end(), [](double v) { return v != 0.0; });
}

AnalyticTransform::AnalyticTransform(double gamma, std::vector<EvenPolynomial> factors,
                                     std::optional<TrigSeries> periodic, std::string label)
    : gamma_(gamma), factors_(std::move(factors)), periodic_(std::move(periodic)), label_(std::move(label)) {
  require_finite(gamma, "gaussian coefficient");
  for (const auto& f : factors_) {
    if (f.coeffs.empty() || f.coeffs.front() != 1.0)
      throw Error(ErrorCode::InvalidArgument, "polynomial factors must have constant term 1");
  }
  if (periodic_) {
    if (std::abs(periodic_->c * periodic_->P(0.0)) > 1e-12)
      throw Error(ErrorCode::InvalidArgument, "periodic factor must satisfy P(0) = 0");
    // Rounding in the coefficients leaves P(0) at the 1e-17 level; dividing by
    // Psi(0) keeps L(0) = 1 exact.
    psi0_ = periodic_->psi(0.0);
  }
}

double AnalyticTransform::log_laplace(double t) const {
  double k = 0.5 * gamma_ * t * t;
  for (const auto& f : factors_) k += f.laplace_log(t);
  if (periodic_) {
    double psi = periodic_->psi(t) / psi0_;
    k += psi > 0.0 ? std::log(psi) : kNaN;
  }
  return k;
}

ComplexPoint AnalyticTransform::char_fn(ComplexPoint z) const {
  const ComplexPoint u = z * z;
  ComplexPoint poly = 1.0;
  for (const auto& f : factors_) poly *= f.at(u);

  const ComplexPoint gauss_exp = -0.5 * gamma_ * u;
  if (!periodic_) {
    if (gauss_exp.real() > kOverflowExponent)
      throw Error(ErrorCode::OverflowGuard, "gaussian factor of f(z) overflows");
    return poly * std::exp(gauss_exp);
  }

  // e^{-gamma z^2/2} Psi(iz) expanded into exponentials so that the growth of
  // cosh/sinh is absorbed by the gaussian decay before exponentiating.
  const TrigSeries& s = *periodic_;
  const std::size_t terms = std::max(s.a.size(), s.b.size());
  double max_re = gauss_exp.real();
  for (std::size_t k = 0; k < terms; ++k)
    max_re = std::max(max_re, gauss_exp.real() + std::abs(((k + 1.0) * s.omega * z).real()));
  if (max_re > kOverflowExponent)
    throw Error(ErrorCode::OverflowGuard, "periodic factor of f(z) overflows");

  ComplexPoint acc = (1.0 - s.c * s.a0) * std::exp(gauss_exp);
  const double norm = 1.0 / psi0_;
  const ComplexPoint i(0.0, 1.0);
  for (std::size_t k = 0; k < terms; ++k) {
    const ComplexPoint y = (k + 1.0) * s.omega * z;
    const ComplexPoint ep = std::exp(gauss_exp + y);
    const ComplexPoint em = std::exp(gauss_exp - y);
    if (k < s.a.size()) acc -= s.c * s.a[k] * 0.5 * (ep + em);
    if (k < s.b.size()) acc -= s.c * s.b[k] * i * 0.5 * (ep - em);
  }
  return poly * acc * norm;
}

double AnalyticTransform::mean() const {
  if (!periodic_) return 0.0;
  const TrigSeries& s = *periodic_;
  return -s.c * s.omega * s.dP(0.0) / s.psi(0.0);
}

double AnalyticTransform::variance() const {
  double v = gamma_;
  for (const auto& f : factors_)
    if (f.coeffs.size() > 1) v -= 2.0 * f.coeffs[1];
  if (periodic_) {
    const TrigSeries& s = *periodic_;
    const double psi0 = s.psi(0.0);
    const double d1 = -s.c * s.omega * s.dP(0.0) / psi0;
    const double d2 = -s.c * s.omega * s.omega * s.d2P(0.0) / psi0;
    v += d2 - d1 * d1;
  }
  return v;
}

bool AnalyticTransform::symmetric() const { return !periodic_ || !periodic_->has_sine_terms(); }

BernoulliTransform::BernoulliTransform(double p) : p_(p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::OutOfRange, "Bernoulli p must lie in (0, 1)");
}

double BernoulliTransform::log_laplace(double t) const {
  const double q = 1.0 - p_;
  // p e^{tq} + q e^{-tp}, factored around the dominant exponential.
  if (t >= 0.0) return t * q + std::log1p(q * std::expm1(-t));
  return -t * p_ + std::log1p(p_ * std::expm1(t));
}

ComplexPoint BernoulliTransform::char_fn(ComplexPoint z) const {
  const ComplexPoint i(0.0, 1.0);
  const double q = 1.0 - p_;
  return p_ * std::exp(i * z * q) + q * std::exp(-i * z * p_);
}

std::string BernoulliTransform::describe() const {
  std::ostringstream os;
  os << "centered Bernoulli(p=" << p_ << ")";
  return os.str();
}

SymmetricSumTransform::SymmetricSumTransform(Piece piece, std::vector<double> weights)
    : piece_(piece), weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::InvalidArgument, "empty weight list");
  for (double w : weights_) require_finite(w, "weight");
}

double SymmetricSumTransform::log_laplace(double t) const {
  double k = 0.0;
  for (double w : weights_) k += piece_ == Piece::Sign ? log_cosh(w * t) : log_sinhc(w * t);
  return k;
}

ComplexPoint SymmetricSumTransform::char_fn(ComplexPoint z) const {
  ComplexPoint f = 1.0;
  for (double w : weights_) f *= piece_ == Piece::Sign ? std::cos(w * z) : sinc(w * z);
  return f;
}

double SymmetricSumTransform::variance() const {
  double v = 0.0;
  for (double w : weights_) v += w * w;
  return piece_ == Piece::Sign ? v : v / 3.0;
}

std::string SymmetricSumTransform::describe() const {
  std::ostringstream os;
  os << (piece_ == Piece::Sign ? "Bernoulli" : "uniform") << " sum with " << weights_.size()
     << " terms";
  return os.str();
}

GridTransform::GridTransform(const GriddedDensity& d) {
  Moments m = grid_moments(d);
  mean_ = m.mean;
  variance_ = m.variance;
  symmetric_ = d.is_symmetric();
  const std::size_t n = d.size();
  xs_.resize(n);
  w_.resize(n);
  log_w_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs_[i] = d.x(i);
    double w = d[i] * d.step() * ((i == 0 || i + 1 == n) ? 0.5 : 1.0) / m.mass;
    w_[i] = w;
    log_w_[i] = w > 0.0 ? std::log(w) : -std::numeric_limits<double>::infinity();
  }
  // Trust radius: largest |t| for which the exponentially tilted grid keeps
  // less than 1e-12 of its mass on the boundary samples.
  trust_radius_ = 0.0;
  for (double t = 0.05; t <= 50.0 + 1e-12; t += 0.05) {
    bool ok = true;
    for (double s : {t, -t}) {
      double k = log_laplace(s);
      double edge = std::max(log_w_.front() + s * xs_.front(), log_w_.back() + s * xs_.back());
      if (edge - k > std::log(1e-12)) ok = false;
    }
    if (!ok) break;
    trust_radius_ = t;
  }
}

double GridTransform::log_laplace(double t) const {
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs_.size(); ++i) mx = std::max(mx, log_w_[i] + t * xs_[i]);
  double s = 0.0;
  for (std::size_t i = 0; i < xs_.size(); ++i) s += std::exp(log_w_[i] + t * xs_[i] - mx);
  return mx + std::log(s);
}

ComplexPoint GridTransform::char_fn(ComplexPoint z) const {
  const ComplexPoint i(0.0, 1.0);
  ComplexPoint acc = 0.0;
  for (std::size_t k = 0; k < xs_.size(); ++k)
    if (w_[k] > 0.0) acc += w_[k] * std::exp(i * z * xs_[k]);
  return acc;
}

TransformHandle gaussian_handle(double variance) {
  if (!(variance >= 0.0)) throw Error(ErrorCode::NegativeGamma, "variance must be nonnegative");
  std::ostringstream os;
  os << "N(0, " << variance << ")";
  return TransformHandle(
      std::make_shared<AnalyticTransform>(variance, std::vector<EvenPolynomial>{}, std::nullopt, os.str()));
}

TransformHandle bernoulli_handle(double p) {
  return TransformHandle(std::make_shared<BernoulliTransform>(p));
}

TransformHandle symmetric_bernoulli_handle() { return bernoulli_sum_handle({1.0}); }

TransformHandle bernoulli_sum_handle(std::vector<double> weights) {
  return TransformHandle(
      std::make_shared<SymmetricSumTransform>(SymmetricSumTransform::Piece::Sign, std::move(weights)));
}

TransformHandle uniform_handle(double a) { return uniform_sum_handle({a}); }

TransformHandle uniform_sum_handle(std::vector<double> weights) {
  return TransformHandle(std::make_shared<SymmetricSumTransform>(SymmetricSumTransform::Piece::Uniform,
                                                                 std::move(weights)));
}

TransformHandle grid_handle(const GriddedDensity& d) {
  return TransformHandle(std::make_shared<GridTransform>(d));
}

}  // namespace subgauss
