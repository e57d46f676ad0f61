#include "verify.hpp"

#include <cmath>

#include "hermite.hpp"

namespace lpb {

namespace {

double ipow(double x, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= x;
  return r;
}

void check_grid_dim(const Prior& prior) {
  require(prior.is_discrete() || prior.dim() <= 2, Status::DimensionTooLarge,
          "tensor quadrature for continuous priors supports n <= 2");
}

ResidualReport make_report(int n, std::span<const double> ys, int y_count,
                           const QuadratureConfig& cfg) {
  ResidualReport report;
  report.n = n;
  report.cfg = cfg;
  report.y_values.reserve(y_count);
  for (int j = 0; j < y_count; ++j)
    report.y_values.emplace_back(ys.begin() + static_cast<size_t>(j) * n,
                                 ys.begin() + static_cast<size_t>(j + 1) * n);
  report.residuals.resize(y_count);
  report.norms.assign(y_count, 0.0);
  return report;
}

void finalize_report(ResidualReport& report) {
  report.max_norm = 0.0;
  for (size_t j = 0; j < report.residuals.size(); ++j) {
    double n2 = 0.0;
    for (double r : report.residuals[j]) n2 += r * r;
    report.norms[j] = std::sqrt(n2);
    report.max_norm = std::max(report.max_norm, report.norms[j]);
  }
}

}  // namespace

ResidualReport orthogonality_residual(const Prior& prior, const LinearMap& a,
                                      const LossSpec& spec,
                                      std::span<const double> ys, int y_count,
                                      const QuadratureConfig& cfg) {
  cfg.validate();
  const int n = prior.dim();
  require(a.dim() == n, Status::InvalidArgument,
          "orthogonality_residual: matrix dimension mismatch");
  require(a.eigen_floor() >= -1e-12, Status::NotPsd,
          "orthogonality_residual: A must be positive semidefinite");
  require(y_count >= 1 && static_cast<int>(ys.size()) == y_count * n,
          Status::InvalidArgument, "orthogonality_residual: bad y grid");
  check_grid_dim(prior);

  ResidualReport report = make_report(n, ys, y_count, cfg);

  Vec points, masses;
  if (prior.is_discrete()) prior.discrete_support(points, masses);

  double grad[4], t[4];
  for (int j = 0; j < y_count; ++j) {
    std::span<const double> y = ys.subspan(static_cast<size_t>(j) * n, n);
    const Vec center = a.apply(y);
    Vec r(n, 0.0);
    double mass = 0.0;

    if (prior.is_discrete()) {
      const size_t count = masses.size();
      for (size_t idx = 0; idx < count; ++idx) {
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) {
          const double diff = y[i] - points[idx * n + i];
          d2 += diff * diff;
          t[i] = points[idx * n + i] - center[i];
        }
        const double w = masses[idx] * std::exp(-0.5 * d2 - n * kLogSqrt2Pi);
        mass += w;
        loss_gradient_into(t, n, spec, grad);
        for (int i = 0; i < n; ++i) r[i] += w * grad[i];
      }
    } else {
      // Grid centered on the gradient kink x = A y: nodes come in symmetric
      // pairs about the kink, which both resolves the |.|^{k-1} singularity
      // and makes exactly-zero residuals cancel to rounding level.
      const double half = cfg.half_width * std::max(1.0, prior.scale());
      const int m = effective_nodes(n, cfg.nodes_per_dim);
      std::vector<Grid1D> grids(n);
      for (int d = 0; d < n; ++d) grids[d] = Grid1D{center[d], half, m};
      for_each_tensor_node(grids, [&](std::span<const double> x, double vol) {
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) {
          const double diff = y[i] - x[i];
          d2 += diff * diff;
          t[i] = x[i] - center[i];
        }
        const double w =
            std::exp(prior.log_density(x) - 0.5 * d2 - n * kLogSqrt2Pi) * vol;
        if (w == 0.0) return;
        mass += w;
        loss_gradient_into(t, n, spec, grad);
        for (int i = 0; i < n; ++i) r[i] += w * grad[i];
      });
    }

    require(mass >= 1e-300, Status::QuadratureUnderflow,
            "orthogonality_residual: integrand mass underflowed");
    report.residuals[j] = std::move(r);
  }
  finalize_report(report);
  return report;
}

MuMeasure::MuMeasure(Prior base, LinearMap a)
    : base_(std::move(base)), a_(std::move(a)),
      sqrt_a_(Mat::identity(a_.dim())),
      residual_form_(Mat::identity(a_.dim())) {
  const int n = a_.dim();
  require(base_.dim() == n, Status::InvalidArgument,
          "mu_transform: dimension mismatch");
  require(a_.eigen_floor() > 0.0, Status::NotPd,
          "mu_transform: A must be positive definite");
  sqrt_a_ = a_.psd_sqrt();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) residual_form_(i, j) -= a_.entries()(i, j);
  for (double lam : a_.eigen().values) log_det_sqrt_ += 0.5 * std::log(lam);

  if (base_.is_discrete()) {
    Vec points, masses;
    base_.discrete_support(points, masses);
    const size_t count = masses.size();
    // inverse square root from the eigendecomposition of A
    const SymEigen& e = a_.eigen();
    Mat inv_sqrt(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l)
          acc += e.vectors(i, l) * e.vectors(j, l) / std::sqrt(e.values[l]);
        inv_sqrt(i, j) = inv_sqrt(j, i) = acc;
      }
    atoms_.resize(count * n);
    masses_.resize(count);
    for (size_t idx = 0; idx < count; ++idx) {
      double u[4];
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += inv_sqrt(i, l) * points[idx * n + l];
        u[i] = acc;
        atoms_[idx * n + i] = acc;
      }
      double q = 0.0;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) q += u[i] * residual_form_(i, l) * u[l];
      masses_[idx] = masses[idx] * std::exp(0.5 * q);
    }
  }
}

double MuMeasure::log_density(std::span<const double> u) const {
  require(!is_discrete(), Status::InvalidArgument,
          "mu density is undefined for discrete priors");
  const int n = dim();
  double x[4];
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int l = 0; l < n; ++l) acc += sqrt_a_(i, l) * u[l];
    x[i] = acc;
  }
  double q = 0.0;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) q += u[i] * residual_form_(i, l) * u[l];
  return log_det_sqrt_ + base_.log_density(std::span<const double>(x, n)) + 0.5 * q;
}

double MuMeasure::density(std::span<const double> u) const {
  return std::exp(log_density(u));
}

void MuMeasure::grid_representation(const QuadratureConfig& cfg, Vec& points,
                                    Vec& node_masses) const {
  cfg.validate();
  if (is_discrete()) {
    points = atoms_;
    node_masses = masses_;
    return;
  }
  const int n = dim();
  const double scale_u =
      std::max(1.0, base_.scale()) / std::sqrt(a_.eigen_floor());
  const int m = effective_nodes(n, cfg.nodes_per_dim);
  std::vector<Grid1D> grids(n);
  for (int d = 0; d < n; ++d)
    grids[d] = Grid1D{0.0, cfg.half_width * scale_u, m};
  size_t count = 1;
  for (int d = 0; d < n; ++d) count *= static_cast<size_t>(grids[d].count);
  points.resize(count * n);
  node_masses.resize(count);
  size_t j = 0;
  for_each_tensor_node(grids, [&](std::span<const double> u, double vol) {
    for (int i = 0; i < n; ++i) points[j * n + i] = u[i];
    node_masses[j] = density(u) * vol;
    ++j;
  });
}

MuMeasure mu_transform(const Prior& prior, const LinearMap& a) {
  check_grid_dim(prior);
  return MuMeasure(prior, a);
}

ResidualReport convolution_residual(const MuMeasure& mu, const LossSpec& spec,
                                    std::span<const double> ys, int y_count,
                                    const QuadratureConfig& cfg) {
  cfg.validate();
  const int n = mu.dim();
  require(y_count >= 1 && static_cast<int>(ys.size()) == y_count * n,
          Status::InvalidArgument, "convolution_residual: bad y grid");

  ResidualReport report = make_report(n, ys, y_count, cfg);
  const Mat& sqrt_a = mu.map().psd_sqrt();

  double grad[4], t[4], st[4];
  for (int j = 0; j < y_count; ++j) {
    std::span<const double> y = ys.subspan(static_cast<size_t>(j) * n, n);
    Vec r(n, 0.0);
    double mass = 0.0;

    auto accumulate = [&](std::span<const double> u, double w) {
      if (w == 0.0) return;
      mass += w;
      for (int i = 0; i < n; ++i) t[i] = u[i] - y[i];
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += sqrt_a(i, l) * t[l];
        st[i] = acc;
      }
      loss_gradient_into(st, n, spec, grad);
      for (int i = 0; i < n; ++i) r[i] += w * grad[i];
    };

    if (mu.is_discrete()) {
      const Vec& atoms = mu.atoms();
      const Vec& masses = mu.masses();
      for (size_t idx = 0; idx < masses.size(); ++idx) {
        std::span<const double> u(atoms.data() + idx * n, n);
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) d2 += (y[i] - u[i]) * (y[i] - u[i]);
        accumulate(u, masses[idx] * std::exp(-0.5 * d2 - n * kLogSqrt2Pi));
      }
    } else {
      // phi(y - u) localizes the integrand, so center the symmetric grid on
      // y itself (also the kink of the transformed kernel).
      const double half = cfg.half_width * std::max(1.0, mu.base().scale());
      const int m = effective_nodes(n, cfg.nodes_per_dim);
      std::vector<Grid1D> grids(n);
      for (int d = 0; d < n; ++d) grids[d] = Grid1D{y[d], half, m};
      for_each_tensor_node(grids, [&](std::span<const double> u, double vol) {
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) d2 += (y[i] - u[i]) * (y[i] - u[i]);
        const double lw = mu.log_density(u) - 0.5 * d2 - n * kLogSqrt2Pi;
        accumulate(u, std::exp(lw) * vol);
      });
    }

    require(mass >= 1e-300, Status::QuadratureUnderflow,
            "convolution_residual: integrand mass underflowed");
    report.residuals[j] = std::move(r);
  }
  finalize_report(report);
  return report;
}

ResidualReport convolution_residual(const Prior& prior, const LinearMap& a,
                                    const LossSpec& spec,
                                    std::span<const double> ys, int y_count,
                                    const QuadratureConfig& cfg) {
  return convolution_residual(mu_transform(prior, a), spec, ys, y_count, cfg);
}

PolynomialND PolynomialND::from_dense(int n, int degree,
                                      std::span<const double> coeffs) {
  require(n >= 1 && n <= 2, Status::DimensionTooLarge,
          "polynomials support n <= 2");
  require(degree >= 0, Status::InvalidArgument, "negative degree");
  require(degree <= 6, Status::DegreeTooLarge, "polynomial degree exceeds 6");
  const int stride = degree + 1;
  const size_t expected = n == 1 ? static_cast<size_t>(stride)
                                 : static_cast<size_t>(stride) * stride;
  require(coeffs.size() == expected, Status::InvalidArgument,
          "dense coefficient buffer has the wrong size");
  PolynomialND poly;
  poly.n = n;
  poly.degree = degree;
  if (n == 1) {
    for (int i = 0; i <= degree; ++i)
      if (coeffs[i] != 0.0) poly.terms.push_back({{i, 0}, coeffs[i]});
  } else {
    for (int i = 0; i <= degree; ++i)
      for (int j = 0; j <= degree; ++j)
        if (coeffs[static_cast<size_t>(i) * stride + j] != 0.0) {
          require(i + j <= degree, Status::InvalidArgument,
                  "dense coefficients above the stated total degree");
          poly.terms.push_back({{i, j}, coeffs[static_cast<size_t>(i) * stride + j]});
        }
  }
  return poly;
}

bool PolynomialND::is_constant() const {
  for (const PolyTerm& t : terms)
    if ((t.exponents[0] > 0 || t.exponents[1] > 0) && t.coeff != 0.0) return false;
  return true;
}

double poly_moment_functional(const PolynomialND& poly, double k, int coord,
                              std::span<const double> y,
                              const QuadratureConfig& cfg) {
  cfg.validate();
  require(k >= 1.0, Status::InvalidArgument, "poly_moment_functional: k >= 1");
  require(poly.n == static_cast<int>(y.size()), Status::InvalidArgument,
          "poly_moment_functional: dimension mismatch");
  require(coord >= 0 && coord < poly.n, Status::InvalidArgument,
          "poly_moment_functional: coordinate index out of range");
  require(poly.degree <= 6, Status::DegreeTooLarge,
          "poly_moment_functional: degree exceeds 6");

  const int max_deg = poly.degree;
  // Kinked coordinate: E[f(Z)(Z - y_i)^m] via the singularity-aware kernel
  // integral. Smooth coordinate: plain Gauss-Hermite, exact for polynomials.
  Vec kink_moment(max_deg + 1), smooth_moment(max_deg + 1, 0.0);
  const double yi = y[coord];
  for (int m = 0; m <= max_deg; ++m)
    kink_moment[m] = odd_kernel_expectation(
        k, [m, yi](double z) { return ipow(z - yi, m); });

  if (poly.n == 2) {
    const GaussHermite gh = gauss_hermite(16);
    const double yj = y[1 - coord];
    for (int m = 0; m <= max_deg; ++m) {
      double acc = 0.0;
      for (size_t q = 0; q < gh.nodes.size(); ++q)
        acc += gh.weights[q] * ipow(gh.nodes[q] - yj, m);
      smooth_moment[m] = acc;
    }
  }

  double total = 0.0;
  for (const PolyTerm& term : poly.terms) {
    const int ei = term.exponents[coord];
    double value = term.coeff * kink_moment[ei];
    if (poly.n == 2) value *= smooth_moment[term.exponents[1 - coord]];
    total += value;
  }
  return total;
}

}  // namespace lpb
