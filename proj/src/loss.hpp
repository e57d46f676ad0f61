#pragma once

#include <span>

#include "linalg.hpp"

namespace lpb {

struct LossSpec {
  double p = 2.0;
  double k = 2.0;

  LossSpec(double p_, double k_);

  // Regime of the scalar/vector uniqueness theorem: p == k in [1, 2].
  bool uniqueness_regime() const { return p == k && p >= 1.0 && p <= 2.0; }
};

// |t|^e * sign(t), with fast paths for the exponents that dominate hot loops.
double signed_pow(double t, double e);

// l_{p,k}(x) = (sum_i |x_i|^k)^{p/k}
double loss_value(std::span<const double> x, const LossSpec& spec);

// gradient p * ||x||_k^{p-k} * (|x_i|^{k-1} sign(x_i))_i, 0 at x = 0.
// For p < k the scale factor is evaluated in log space and clamped to 0
// once ||x||_k underflows.
Vec loss_gradient(std::span<const double> x, const LossSpec& spec);

// Allocation-free form used by quadrature loops (n <= 4).
void loss_gradient_into(const double* x, int n, const LossSpec& spec, double* out);

// Hessian for p, k > 1 away from coordinate kinks.
Mat loss_hessian(std::span<const double> x, const LossSpec& spec);

}  // namespace lpb
