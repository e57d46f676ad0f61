#pragma once

#include <array>
#include <span>
#include <vector>

#include "estimator.hpp"
#include "fourier.hpp"
#include "loss.hpp"
#include "prior.hpp"

namespace lpb {

struct ResidualReport {
  int n = 1;
  std::vector<Vec> y_values;
  std::vector<Vec> residuals;
  Vec norms;
  double max_norm = 0.0;
  QuadratureConfig cfg;
};

// r(y) = E[ l'_{p,k}(X - A y) phi(y - X) ]; identically zero exactly when the
// linear estimator A y is optimal. A must be symmetric positive semidefinite.
ResidualReport orthogonality_residual(const Prior& prior, const LinearMap& a,
                                      const LossSpec& spec,
                                      std::span<const double> ys, int y_count,
                                      const QuadratureConfig& cfg);

// mu(dx) = exp(x'(I-A)x/2) dP_{A^{-1/2}X}(x). Not a probability measure; the
// total mass may exceed 1. Discrete priors map to reweighted atoms, analytic
// priors keep a density formula.
class MuMeasure {
 public:
  MuMeasure(Prior base, LinearMap a);

  int dim() const { return a_.dim(); }
  bool is_discrete() const { return base_.is_discrete(); }
  const Prior& base() const { return base_; }
  const LinearMap& map() const { return a_; }

  const Vec& atoms() const { return atoms_; }    // discrete, count*n
  const Vec& masses() const { return masses_; }  // discrete

  double log_density(std::span<const double> u) const;  // analytic
  double density(std::span<const double> u) const;

  // Grid representation of the analytic density (used by flatness checks).
  void grid_representation(const QuadratureConfig& cfg, Vec& points,
                           Vec& node_masses) const;

 private:
  Prior base_;
  LinearMap a_;
  Mat sqrt_a_;
  Mat residual_form_;  // I - A
  double log_det_sqrt_ = 0.0;
  Vec atoms_;
  Vec masses_;
};

MuMeasure mu_transform(const Prior& prior, const LinearMap& a);

// 0 = integral l'_{p,k}(A^{1/2}(x - y)) phi(y - x) mu(dx) for all y, the
// convolution form of the orthogonality condition. Agrees with
// orthogonality_residual on pass/fail at a shared tolerance.
ResidualReport convolution_residual(const MuMeasure& mu, const LossSpec& spec,
                                    std::span<const double> ys, int y_count,
                                    const QuadratureConfig& cfg);

ResidualReport convolution_residual(const Prior& prior, const LinearMap& a,
                                    const LossSpec& spec,
                                    std::span<const double> ys, int y_count,
                                    const QuadratureConfig& cfg);

struct PolyTerm {
  std::array<int, 2> exponents{};  // exponents[1] is 0 when n == 1
  double coeff = 0.0;
};

struct PolynomialND {
  int n = 1;
  int degree = 0;
  std::vector<PolyTerm> terms;

  // Dense row-major coefficients of size (degree+1)^n; coefficient of
  // x1^i x2^j at index i*(degree+1)+j.
  static PolynomialND from_dense(int n, int degree, std::span<const double> coeffs);
  bool is_constant() const;
};

// E[ f(Z_i) poly(Z - y) ] with f(z) = |z|^{k-1} sign(z); the smooth
// coordinates use Gauss-Hermite quadrature (exact for polynomials), the
// kinked coordinate a singularity-aware kernel integral.
double poly_moment_functional(const PolynomialND& poly, double k, int coord,
                              std::span<const double> y,
                              const QuadratureConfig& cfg);

}  // namespace lpb
