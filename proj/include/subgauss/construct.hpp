#pragma once

#include <vector>

#include "subgauss/charfn.hpp"
#include "subgauss/quartic.hpp"
#include "subgauss/transform.hpp"

namespace subgauss {

// Smallest admissible variance multiplier: the per-component condition
// gamma_n >= a_n^2 / a0^2 in the worst case b_n = 0 gives 4 + 1/a0^2.
double lambda_min();

struct ProductComponent {
  ComplexPoint zero;   // quadrant representative z_n
  ComplexPoint w;      // 1 / z_n
  double gamma = 0.0;  // (Lambda - 4) a_n^2 + (Lambda + 4) b_n^2
  QuarticParams params;
  double variance() const { return params.variance(); }  // 4 (a_n^2 - b_n^2) + gamma_n
};

struct ProductDistribution {
  std::vector<ProductComponent> components;
  double lambda = 0.0;
  double total_variance = 0.0;  // equals lambda * sum |w_n|^2
};

struct BuiltProduct {
  ProductDistribution distribution;
  TransformHandle handle;  // f(z) = prod_n f_n(z)
};

// Independent sum X = sum X_n whose characteristic function vanishes exactly at
// the orbits of the given zeros (each inside the cone |Arg z| <= pi/8).
BuiltProduct build_from_zero_set(const ZeroSet& zeros, double lambda);

// Handle of a single component X_n.
TransformHandle component_handle(const ProductComponent& c);

}  // namespace subgauss
