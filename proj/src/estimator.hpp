#pragma once

#include <span>

#include "loss.hpp"
#include "prior.hpp"
#include "quadrature.hpp"

namespace lpb {

// Discrete representation of the conditional law of X given Y = y: weighted
// points with weights proportional to prior mass times phi(y - x),
// renormalized to sum 1.
struct PosteriorGrid {
  int n = 1;
  Vec points;   // count*n row-major
  Vec weights;  // normalized

  int count() const { return static_cast<int>(weights.size()); }
  Vec mean() const;
  Mat covariance() const;
};

PosteriorGrid posterior(const Prior& prior, std::span<const double> y,
                        const QuadratureConfig& cfg);

// argmin_v E[ l_{p,k}(X - v) | Y = y ]. Gaussian-prior grids are centered at
// the closed-form posterior mean; other continuous priors at y.
Vec optimal_estimate(const Prior& prior, std::span<const double> y,
                     const LossSpec& spec, const QuadratureConfig& cfg);

// Solve directly on a posterior representation.
Vec optimal_estimate_from(const PosteriorGrid& post, const LossSpec& spec);

struct LinearFit {
  Mat a;
  double max_deviation = 0.0;
};

// Least-squares fit of optimal_estimate against y over the grid (y_count*n
// row-major), symmetrized before reporting.
LinearFit fit_best_linear(const Prior& prior, const LossSpec& spec,
                          std::span<const double> ys, int y_count,
                          const QuadratureConfig& cfg);

struct RiskEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte Carlo Bayes risk E[l_{p,k}(X - f(Y))]; linear == nullptr selects the
// optimal estimator. Deterministic in seed; samples >= 1000.
RiskEstimate bayes_risk(const Prior& prior, const Mat* linear,
                        const LossSpec& spec, long long samples, uint64_t seed,
                        const QuadratureConfig& cfg);

}  // namespace lpb
