#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subgauss/core.hpp"

namespace subgauss {

class GriddedDensity;

// Analytic description of a distribution through its transforms:
//   K(t) = log L(t) = log E e^{tX}     (real t, evaluated in log space)
//   f(z) = E e^{izX}                   (complex z; f(t) = L(it) on the reals)
class Transform {
 public:
  virtual ~Transform() = default;

  virtual double log_laplace(double t) const = 0;
  virtual ComplexPoint char_fn(ComplexPoint z) const = 0;
  virtual double mean() const { return 0.0; }
  virtual double variance() const = 0;
  virtual bool symmetric() const = 0;
  virtual std::string describe() const = 0;
};

// Shared immutable handle; cheap to copy.
class TransformHandle {
 public:
  TransformHandle() = default;
  explicit TransformHandle(std::shared_ptr<const Transform> impl) : impl_(std::move(impl)) {}

  double K(double t) const { return impl_->log_laplace(t); }
  double L(double t) const;
  ComplexPoint f(ComplexPoint z) const;
  double mean() const { return impl_->mean(); }
  double variance() const { return impl_->variance(); }
  bool symmetric() const { return impl_->symmetric(); }
  std::string describe() const { return impl_->describe(); }
  bool valid() const noexcept { return static_cast<bool>(impl_); }

  // Handle of lambda * X.
  TransformHandle scaled(double lambda) const;
  // Handle of X_1 + ... + X_n for independent copies.
  TransformHandle iid_sum(int n) const;
  // Handle of (X - mean) / sd.
  TransformHandle standardized() const;

  const Transform& impl() const { return *impl_; }

 private:
  std::shared_ptr<const Transform> impl_;
};

// Even polynomial factor in u = z^2 as it appears in f: q_0 + q_1 u + q_2 u^2 + ...
// with q_0 = 1. Its Laplace counterpart is the same polynomial at u = -t^2.
struct EvenPolynomial {
  std::vector<double> coeffs{1.0};

  double laplace_log(double t) const;         // log of the polynomial at u = -t^2
  ComplexPoint at(ComplexPoint u) const;
};

// Trigonometric series P(s) = a0 + sum_k (a_k cos(k s) + b_k sin(k s)) entering
// Psi(t) = 1 - c P(omega t); a[k-1] holds a_k, b[k-1] holds b_k.
struct TrigSeries {
  double omega = 1.0;
  double a0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  double c = 0.0;

  double P(double s) const;
  double dP(double s) const;
  double d2P(double s) const;
  double psi(double t) const { return 1.0 - c * P(omega * t); }
  bool has_sine_terms() const;
};

// f(z) = e^{-gamma z^2 / 2} * prod_k Q_k(z^2) * Psi(iz)
// covering Gaussian, class-L products, quartic families, products of quartic
// components and the periodic class (with gamma = 1).
class AnalyticTransform final : public Transform {
 public:
  AnalyticTransform(double gamma, std::vector<EvenPolynomial> factors,
                    std::optional<TrigSeries> periodic = std::nullopt, std::string label = "");

  double log_laplace(double t) const override;
  ComplexPoint char_fn(ComplexPoint z) const override;
  double mean() const override;
  double variance() const override;
  bool symmetric() const override;
  std::string describe() const override { return label_; }

  double gamma() const noexcept { return gamma_; }
  const std::vector<EvenPolynomial>& factors() const noexcept { return factors_; }
  const std::optional<TrigSeries>& periodic() const noexcept { return periodic_; }

 private:
  double gamma_;
  std::vector<EvenPolynomial> factors_;
  std::optional<TrigSeries> periodic_;
  double psi0_ = 1.0;
  std::string label_;
};

// Centered Bernoulli: 1 - p with probability p, -p with probability 1 - p.
class BernoulliTransform final : public Transform {
 public:
  explicit BernoulliTransform(double p);
  double log_laplace(double t) const override;
  ComplexPoint char_fn(ComplexPoint z) const override;
  double variance() const override { return p_ * (1.0 - p_); }
  bool symmetric() const override { return p_ == 0.5; }
  std::string describe() const override;

 private:
  double p_;
};

// Weighted sum of independent symmetric pieces: sign variables (cosh) and
// uniforms on [-1, 1] (sinh(x)/x).
class SymmetricSumTransform final : public Transform {
 public:
  enum class Piece { Sign, Uniform };
  SymmetricSumTransform(Piece piece, std::vector<double> weights);
  double log_laplace(double t) const override;
  ComplexPoint char_fn(ComplexPoint z) const override;
  double variance() const override;
  bool symmetric() const override { return true; }
  std::string describe() const override;

 private:
  Piece piece_;
  std::vector<double> weights_;
};

// Numeric Laplace transform of a sampled density (log-sum-exp over the grid).
// Only trustworthy for |t| up to trust_radius(): beyond it the truncated tail
// would dominate.
class GridTransform final : public Transform {
 public:
  explicit GridTransform(const GriddedDensity& d);
  double log_laplace(double t) const override;
  ComplexPoint char_fn(ComplexPoint z) const override;
  double mean() const override { return mean_; }
  double variance() const override { return variance_; }
  bool symmetric() const override { return symmetric_; }
  std::string describe() const override { return "sampled density"; }
  double trust_radius() const noexcept { return trust_radius_; }

 private:
  std::vector<double> xs_;
  std::vector<double> log_w_;  // log(trapezoid weight * p)
  std::vector<double> w_;
  double mean_ = 0.0;
  double variance_ = 0.0;
  bool symmetric_ = false;
  double trust_radius_ = 0.0;
};

TransformHandle gaussian_handle(double variance);
TransformHandle bernoulli_handle(double p);
TransformHandle symmetric_bernoulli_handle();
TransformHandle bernoulli_sum_handle(std::vector<double> weights);
TransformHandle uniform_handle(double a);
TransformHandle uniform_sum_handle(std::vector<double> weights);
TransformHandle grid_handle(const GriddedDensity& d);

}  // namespace subgauss
