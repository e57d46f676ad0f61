#pragma once

#include <span>
#include <variant>
#include <vector>

#include "linalg.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace lpb {

struct GaussianPrior {
  Vec mean;
  LinearMap cov;  // symmetric positive definite
  GaussianDensity dens;
};

// Tensor-product point masses, n <= 2. Point index is row-major over the
// axes: j = i0 * size1 + i1.
struct GridPrior {
  std::vector<Vec> axes;
  Vec weights;
};

struct AtomicPrior {
  int n = 1;
  int count = 0;
  Vec atoms;  // count*n row-major
  Vec probs;
};

// Density proportional to exp(-(1-a)/a x^2/2) (1 + rho cos(omega x/sqrt(a) + theta)).
struct CosinePrior {
  double a = 0.5;
  double rho = 0.0;
  double theta = 0.0;
  double omega = 0.0;
  double sigma2 = 1.0;  // envelope variance a/(1-a)
  double norm = 1.0;    // closed-form normalization constant
};

class Prior {
 public:
  using Variant = std::variant<GaussianPrior, GridPrior, AtomicPrior, CosinePrior>;

  static Prior gaussian(Vec mean, Mat cov);
  // N(0, (I-A)^{-1} A); requires 0 < A < I.
  static Prior gaussian_for_matrix(const LinearMap& a);
  static Prior atomic(int n, Vec atoms, Vec probs);
  static Prior grid(std::vector<Vec> axes, Vec weights);
  static Prior cosine(double a, double rho, double theta, double omega);

  int dim() const;
  bool is_discrete() const;

  // Normalized density; analytic (gaussian/cosine) priors only.
  double density(std::span<const double> x) const;
  double log_density(std::span<const double> x) const;

  // Point masses of discrete (grid/atomic) priors, flattened count*n.
  void discrete_support(Vec& points, Vec& masses) const;

  // Envelope standard deviation used to size truncation windows; 1 for
  // discrete priors.
  double scale() const;

  const Variant& value() const { return v_; }
  template <class T>
  const T* get_if() const { return std::get_if<T>(&v_); }

 private:
  explicit Prior(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

double cosine_density(const CosinePrior& prior, double x);

// Modulation frequencies omega for which the cosine family induces a linear
// optimal L^p estimator, p > 2: zeros of He_{p-1} for even integer p, located
// by a kernel-transform sign scan on (0, 8] otherwise. Sorted ascending,
// closed under negation, includes 0.
Vec omega_for_p(double p);

void sample_into(const Prior& prior, Rng& rng, double* x);
Vec sample_prior(const Prior& prior, int count, uint64_t seed);

// Total mass under the module's own quadrature (sum of weights for discrete
// priors); used by normalization checks.
double prior_total_mass(const Prior& prior, const QuadratureConfig& cfg);

}  // namespace lpb
