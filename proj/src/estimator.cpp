#include "estimator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "rng.hpp"

namespace lpb {

namespace {

constexpr int kMaxIterations = 10000;

struct GaussianPosterior {
  Vec mean;
  Mat cov;  // equals the gain matrix cov_prior (cov_prior + I)^{-1}
};

GaussianPosterior gaussian_posterior_moments(const GaussianPrior& prior,
                                             std::span<const double> y) {
  const int n = static_cast<int>(prior.mean.size());
  const SymEigen& e = prior.cov.eigen();
  Mat gain(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int l = 0; l < n; ++l) {
        const double lam = e.values[l];
        acc += e.vectors(i, l) * (lam / (1.0 + lam)) * e.vectors(j, l);
      }
      gain(i, j) = gain(j, i) = acc;
    }
  Vec shifted(n);
  for (int i = 0; i < n; ++i) shifted[i] = y[i] - prior.mean[i];
  Vec mean = gain.apply(shifted);
  for (int i = 0; i < n; ++i) mean[i] += prior.mean[i];
  return {std::move(mean), std::move(gain)};
}

// Weighted lower median: smallest value whose cumulative weight reaches 1/2.
double weighted_lower_median(const double* values, int stride, const double* w,
                             int count) {
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return values[static_cast<size_t>(i) * stride] <
           values[static_cast<size_t>(j) * stride];
  });
  double cum = 0.0;
  for (int idx : order) {
    cum += w[idx];
    if (cum >= 0.5 - 1e-14) return values[static_cast<size_t>(idx) * stride];
  }
  return values[static_cast<size_t>(order.back()) * stride];
}

// Root of the increasing scalar gradient of sum_j w_j |v_j - t|^p for p > 1,
// via Newton steps safeguarded by bisection on the bracketing interval.
double scalar_root(const double* values, int stride, const double* w, int count,
                   double p, double start) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int j = 0; j < count; ++j) {
    const double v = values[static_cast<size_t>(j) * stride];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) return lo;

  auto gradient = [&](double t) {
    double g = 0.0;
    for (int j = 0; j < count; ++j)
      g -= w[j] * signed_pow(values[static_cast<size_t>(j) * stride] - t, p - 1.0);
    return p * g;
  };
  auto curvature = [&](double t) {
    double h = 0.0;
    for (int j = 0; j < count; ++j) {
      const double d = std::abs(values[static_cast<size_t>(j) * stride] - t);
      if (d > 1e-300) h += w[j] * std::pow(d, p - 2.0);
    }
    return p * (p - 1.0) * h;
  };

  double t = std::clamp(start, lo, hi);
  double g = gradient(t);
  const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    if (std::abs(g) <= 1e-10) return t;
    if (g > 0.0) hi = t; else lo = t;
    if (hi - lo <= 8.0 * std::numeric_limits<double>::epsilon() * scale) return t;
    const double h = curvature(t);
    double next = t - g / h;
    if (!(h > 1e-12) || !std::isfinite(next) || next <= lo || next >= hi)
      next = 0.5 * (lo + hi);
    if (next == t) return t;
    t = next;
    g = gradient(t);
  }
  fail(Status::NoConvergence,
       "scalar minimizer did not converge after 10000 iterations (last iterate " +
           std::to_string(t) + ", gradient " + std::to_string(g) + ")");
}

Vec weiszfeld(const PosteriorGrid& post) {
  const int n = post.n;
  Vec v = post.mean();
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    double num[4] = {0, 0, 0, 0};
    double den = 0.0;
    int on_node = -1;
    for (int j = 0; j < post.count(); ++j) {
      const double* x = post.points.data() + static_cast<size_t>(j) * n;
      double d2 = 0.0;
      for (int i = 0; i < n; ++i) d2 += (x[i] - v[i]) * (x[i] - v[i]);
      const double d = std::sqrt(d2);
      if (d < 1e-12) {
        on_node = j;
        break;
      }
      const double c = post.weights[j] / d;
      den += c;
      for (int i = 0; i < n; ++i) num[i] += c * x[i];
    }
    if (on_node >= 0) {
      // Classical degeneracy. The node is itself the median when the pull of
      // the remaining mass does not exceed the node's own weight; otherwise
      // restart from a slightly perturbed point.
      const double* xj = post.points.data() + static_cast<size_t>(on_node) * n;
      double pull[4] = {0, 0, 0, 0};
      for (int j = 0; j < post.count(); ++j) {
        if (j == on_node) continue;
        const double* x = post.points.data() + static_cast<size_t>(j) * n;
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) d2 += (x[i] - xj[i]) * (x[i] - xj[i]);
        const double d = std::sqrt(d2);
        if (d < 1e-12) continue;
        for (int i = 0; i < n; ++i) pull[i] += post.weights[j] * (x[i] - xj[i]) / d;
      }
      double pull_norm = 0.0;
      for (int i = 0; i < n; ++i) pull_norm += pull[i] * pull[i];
      if (std::sqrt(pull_norm) <= post.weights[on_node])
        return Vec(xj, xj + n);
      for (int i = 0; i < n; ++i) v[i] = xj[i] + 1e-8;
      continue;
    }
    double step = 0.0, norm = 0.0;
    for (int i = 0; i < n; ++i) {
      const double vn = num[i] / den;
      step += (vn - v[i]) * (vn - v[i]);
      norm += vn * vn;
      v[i] = vn;
    }
    if (std::sqrt(step) <= 1e-13 * (1.0 + std::sqrt(norm))) return v;
  }
  fail(Status::NoConvergence, "spatial median iteration did not converge");
}

double posterior_objective(const PosteriorGrid& post, const LossSpec& spec,
                           const double* v) {
  const int n = post.n;
  double f = 0.0;
  double d[4];
  for (int j = 0; j < post.count(); ++j) {
    const double* x = post.points.data() + static_cast<size_t>(j) * n;
    for (int i = 0; i < n; ++i) d[i] = x[i] - v[i];
    f += post.weights[j] * loss_value(std::span<const double>(d, n), spec);
  }
  return f;
}

void posterior_gradient(const PosteriorGrid& post, const LossSpec& spec,
                        const double* v, double* grad) {
  const int n = post.n;
  double d[4], g[4];
  for (int i = 0; i < n; ++i) grad[i] = 0.0;
  for (int j = 0; j < post.count(); ++j) {
    const double* x = post.points.data() + static_cast<size_t>(j) * n;
    for (int i = 0; i < n; ++i) d[i] = x[i] - v[i];
    loss_gradient_into(d, n, spec, g);
    for (int i = 0; i < n; ++i) grad[i] -= post.weights[j] * g[i];
  }
}

// Damped Newton with Armijo backtracking for the coupled p != k case; falls
// back to a steepest-descent direction when the Hessian degenerates.
Vec descent_minimize(const PosteriorGrid& post, const LossSpec& spec,
                     bool use_newton) {
  const int n = post.n;
  Vec v = post.mean();
  double grad[4], d[4];
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    posterior_gradient(post, spec, v.data(), grad);
    double gnorm = 0.0;
    for (int i = 0; i < n; ++i) gnorm += grad[i] * grad[i];
    gnorm = std::sqrt(gnorm);
    if (gnorm <= 1e-10) return v;

    Vec step(n);
    if (use_newton) {
      Mat h(n, n);
      for (int j = 0; j < post.count(); ++j) {
        const double* x = post.points.data() + static_cast<size_t>(j) * n;
        for (int i = 0; i < n; ++i) d[i] = x[i] - v[i];
        const Mat hj = loss_hessian(std::span<const double>(d, n), spec);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) h(a, b) += post.weights[j] * hj(a, b);
      }
      SymEigen he = sym_eigen(h);
      bool ok = he.values.front() > 1e-12;
      if (ok) {
        for (int a = 0; a < n; ++a) {
          double acc = 0.0;
          for (int l = 0; l < n; ++l) {
            double proj = 0.0;
            for (int b = 0; b < n; ++b) proj += he.vectors(b, l) * grad[b];
            acc += he.vectors(a, l) * proj / he.values[l];
          }
          step[a] = acc;
        }
      } else {
        for (int a = 0; a < n; ++a) step[a] = grad[a];
      }
    } else {
      for (int a = 0; a < n; ++a) step[a] = grad[a];
    }

    double slope = 0.0;
    for (int a = 0; a < n; ++a) slope += grad[a] * step[a];
    const double f0 = posterior_objective(post, spec, v.data());
    double alpha = 1.0;
    Vec trial(n);
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (int a = 0; a < n; ++a) trial[a] = v[a] - alpha * step[a];
      if (posterior_objective(post, spec, trial.data()) <=
          f0 - 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (gnorm <= 1e-8) return v;  // stuck at numerical noise level
      fail(Status::NoConvergence,
           "line search failed (gradient norm " + std::to_string(gnorm) + ")");
    }
    double moved = 0.0;
    for (int a = 0; a < n; ++a) {
      moved += (trial[a] - v[a]) * (trial[a] - v[a]);
      v[a] = trial[a];
    }
    if (std::sqrt(moved) <= 1e-15) return v;
  }
  fail(Status::NoConvergence,
       "posterior minimizer did not converge after 10000 iterations");
}

}  // namespace

Vec PosteriorGrid::mean() const {
  Vec m(n, 0.0);
  for (int j = 0; j < count(); ++j)
    for (int i = 0; i < n; ++i)
      m[i] += weights[j] * points[static_cast<size_t>(j) * n + i];
  return m;
}

Mat PosteriorGrid::covariance() const {
  const Vec m = mean();
  Mat c(n, n);
  for (int j = 0; j < count(); ++j) {
    const double* x = points.data() + static_cast<size_t>(j) * n;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b)
        c(a, b) += weights[j] * (x[a] - m[a]) * (x[b] - m[b]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < a; ++b) c(a, b) = c(b, a);
  return c;
}

PosteriorGrid posterior(const Prior& prior, std::span<const double> y,
                        const QuadratureConfig& cfg) {
  cfg.validate();
  const int n = prior.dim();
  require(static_cast<int>(y.size()) == n, Status::InvalidArgument,
          "posterior: y dimension mismatch");
  for (double v : y)
    require(std::isfinite(v), Status::InvalidArgument, "posterior: y must be finite");

  PosteriorGrid out;
  out.n = n;

  if (prior.is_discrete()) {
    Vec pts, masses;
    prior.discrete_support(pts, masses);
    out.points = std::move(pts);
    out.weights.assign(masses.size(), 0.0);
    double total = 0.0;
    for (size_t j = 0; j < masses.size(); ++j) {
      double d2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double diff = y[i] - out.points[j * n + i];
        d2 += diff * diff;
      }
      const double w = masses[j] * std::exp(-0.5 * d2 - n * kLogSqrt2Pi);
      out.weights[j] = w;
      total += w;
    }
    require(total >= 1e-300, Status::EmptyPosterior,
            "posterior mass underflowed: observation too far from the prior support");
    for (double& w : out.weights) w /= total;
    return out;
  }

  std::vector<Grid1D> grids(n);
  const int m = effective_nodes(n, cfg.nodes_per_dim);
  if (const auto* g = prior.get_if<GaussianPrior>()) {
    // Center at the closed-form posterior mean; the posterior covariance of a
    // unit-noise channel is dominated by I, so half_width needs no scaling.
    const GaussianPosterior gp = gaussian_posterior_moments(*g, y);
    for (int d = 0; d < n; ++d) grids[d] = Grid1D{gp.mean[d], cfg.half_width, m};
  } else {
    const double half = cfg.half_width * std::max(1.0, prior.scale());
    for (int d = 0; d < n; ++d) grids[d] = Grid1D{y[d], half, m};
  }

  size_t count = 1;
  for (int d = 0; d < n; ++d) count *= static_cast<size_t>(grids[d].count);
  out.points.resize(count * n);
  out.weights.assign(count, 0.0);

  double total = 0.0;
  size_t j = 0;
  for_each_tensor_node(grids, [&](std::span<const double> x, double vol) {
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) {
      out.points[j * n + i] = x[i];
      const double diff = y[i] - x[i];
      d2 += diff * diff;
    }
    const double lw = prior.log_density(x) - 0.5 * d2 - n * kLogSqrt2Pi;
    const double w = std::exp(lw) * vol;
    out.weights[j] = w;
    total += w;
    ++j;
  });
  require(total >= 1e-300, Status::EmptyPosterior,
          "posterior mass underflowed on the quadrature window");
  for (double& w : out.weights) w /= total;
  return out;
}

Vec optimal_estimate_from(const PosteriorGrid& post, const LossSpec& spec) {
  const int n = post.n;
  if (spec.p == 2.0 && spec.k == 2.0) return post.mean();

  if (n == 1) {
    if (spec.p == 1.0)
      return {weighted_lower_median(post.points.data(), 1, post.weights.data(),
                                    post.count())};
    const double start = post.mean()[0];
    return {scalar_root(post.points.data(), 1, post.weights.data(), post.count(),
                        spec.p, start)};
  }

  if (spec.p == spec.k) {
    // The objective separates across coordinates.
    const Vec start = post.mean();
    Vec v(n);
    for (int d = 0; d < n; ++d) {
      const double* coord = post.points.data() + d;
      if (spec.p == 1.0)
        v[d] = weighted_lower_median(coord, n, post.weights.data(), post.count());
      else
        v[d] = scalar_root(coord, n, post.weights.data(), post.count(), spec.p,
                           start[d]);
    }
    return v;
  }

  if (spec.p == 1.0 && spec.k == 2.0) return weiszfeld(post);
  const bool newton = spec.p > 1.0 && spec.k > 1.0;
  return descent_minimize(post, spec, newton);
}

Vec optimal_estimate(const Prior& prior, std::span<const double> y,
                     const LossSpec& spec, const QuadratureConfig& cfg) {
  return optimal_estimate_from(posterior(prior, y, cfg), spec);
}

LinearFit fit_best_linear(const Prior& prior, const LossSpec& spec,
                          std::span<const double> ys, int y_count,
                          const QuadratureConfig& cfg) {
  const int n = prior.dim();
  require(y_count >= 1, Status::InvalidArgument, "fit needs at least one y");
  require(static_cast<int>(ys.size()) == y_count * n, Status::InvalidArgument,
          "fit: y buffer size mismatch");

  Mat syy(n, n), sfy(n, n);
  Vec estimates(static_cast<size_t>(y_count) * n);
  for (int j = 0; j < y_count; ++j) {
    std::span<const double> y = ys.subspan(static_cast<size_t>(j) * n, n);
    const Vec f = optimal_estimate(prior, y, spec, cfg);
    for (int a = 0; a < n; ++a) {
      estimates[static_cast<size_t>(j) * n + a] = f[a];
      for (int b = 0; b < n; ++b) {
        syy(a, b) += y[a] * y[b];
        sfy(a, b) += f[a] * y[b];
      }
    }
  }

  const SymEigen se = sym_eigen(syy);
  require(se.values.front() > 1e-10 * std::max(se.values.back(), 1.0),
          Status::RankDeficientGrid,
          "y grid does not span all coordinates");
  const Mat a_raw = sfy * LinearMap(syy).inverse();
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (a_raw(i, j) + a_raw(j, i));

  double max_dev = 0.0;
  for (int j = 0; j < y_count; ++j) {
    std::span<const double> y = ys.subspan(static_cast<size_t>(j) * n, n);
    const Vec ay = a.apply(y);
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double diff = estimates[static_cast<size_t>(j) * n + i] - ay[i];
      d2 += diff * diff;
    }
    max_dev = std::max(max_dev, std::sqrt(d2));
  }
  return {std::move(a), max_dev};
}

RiskEstimate bayes_risk(const Prior& prior, const Mat* linear,
                        const LossSpec& spec, long long samples, uint64_t seed,
                        const QuadratureConfig& cfg) {
  cfg.validate();
  require(samples >= 1000, Status::InvalidArgument,
          "bayes_risk needs at least 1000 samples");
  const int n = prior.dim();
  if (linear != nullptr)
    require(linear->rows() == n && linear->cols() == n, Status::InvalidArgument,
            "bayes_risk: linear map dimension mismatch");

  std::function<void(const double*, double*)> evaluate;
  Vec table;        // n == 1 lookup for the optimal estimator
  double table_lo = 0.0, table_step = 0.0;

  if (linear != nullptr) {
    evaluate = [linear, n](const double* y, double* f) {
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += (*linear)(i, j) * y[j];
        f[i] = acc;
      }
    };
  } else if (const auto* g = prior.get_if<GaussianPrior>();
             g != nullptr && spec.p == 2.0 && spec.k == 2.0) {
    evaluate = [g, n](const double* y, double* f) {
      const GaussianPosterior gp =
          gaussian_posterior_moments(*g, std::span<const double>(y, n));
      for (int i = 0; i < n; ++i) f[i] = gp.mean[i];
    };
  } else if (n == 1) {
    // Precompute the estimator on a y table and interpolate linearly; the
    // grid is wide enough that samples beyond it carry negligible mass.
    double lo = 0.0, hi = 0.0;
    if (prior.is_discrete()) {
      Vec pts, masses;
      prior.discrete_support(pts, masses);
      lo = *std::min_element(pts.begin(), pts.end());
      hi = *std::max_element(pts.begin(), pts.end());
    } else {
      const double r = cfg.half_width * std::max(1.0, prior.scale());
      double center = 0.0;
      if (const auto* gp = prior.get_if<GaussianPrior>()) center = gp->mean[0];
      lo = center - r;
      hi = center + r;
    }
    table_lo = lo - cfg.half_width;
    const double table_hi = hi + cfg.half_width;
    const int table_count = 2001;
    table_step = (table_hi - table_lo) / (table_count - 1);
    table.resize(table_count);
    for (int t = 0; t < table_count; ++t) {
      const double yt = table_lo + t * table_step;
      table[t] = optimal_estimate(prior, std::span<const double>(&yt, 1), spec, cfg)[0];
    }
    evaluate = [this_table = &table, table_lo, table_step](const double* y, double* f) {
      const Vec& tab = *this_table;
      const double pos = (y[0] - table_lo) / table_step;
      if (pos <= 0.0) { f[0] = tab.front(); return; }
      if (pos >= static_cast<double>(tab.size() - 1)) { f[0] = tab.back(); return; }
      const int idx = static_cast<int>(pos);
      const double frac = pos - idx;
      f[0] = tab[idx] * (1.0 - frac) + tab[idx + 1] * frac;
    };
  } else {
    evaluate = [&prior, &spec, &cfg, n](const double* y, double* f) {
      const Vec v = optimal_estimate(prior, std::span<const double>(y, n), spec, cfg);
      for (int i = 0; i < n; ++i) f[i] = v[i];
    };
  }

  Rng rng(seed);
  double x[4], y[4], f[4], d[4];
  double mean = 0.0, m2 = 0.0;
  for (long long s = 0; s < samples; ++s) {
    sample_into(prior, rng, x);
    for (int i = 0; i < n; ++i) y[i] = x[i] + rng.normal();
    evaluate(y, f);
    for (int i = 0; i < n; ++i) d[i] = x[i] - f[i];
    const double loss = loss_value(std::span<const double>(d, n), spec);
    const double delta = loss - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (loss - mean);
  }
  const double variance = m2 / static_cast<double>(samples - 1);
  return {mean, std::sqrt(variance / static_cast<double>(samples))};
}

}  // namespace lpb
