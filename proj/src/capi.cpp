#include "lpbayes.h"

#include <cstring>
#include <string>

#include "errors.hpp"
#include "estimator.hpp"
#include "fourier.hpp"
#include "hermite.hpp"
#include "linalg.hpp"
#include "loss.hpp"
#include "prior.hpp"
#include "verify.hpp"

struct lpb_prior {
  lpb::Prior impl;
};

namespace {

thread_local std::string g_last_error;

lpb_status to_c(lpb::Status s) { return static_cast<lpb_status>(static_cast<int>(s)); }

template <class F>
lpb_status guarded(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return LPB_OK;
  } catch (const lpb::Error& e) {
    g_last_error = e.what();
    return to_c(e.status());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LPB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return LPB_ERR_INTERNAL;
  }
}

void check_ptr(const void* p, const char* what) {
  lpb::require(p != nullptr, lpb::Status::InvalidArgument,
               std::string(what) + " must not be null");
}

lpb::QuadratureConfig from_c(const lpb_quad_cfg* cfg) {
  if (cfg == nullptr) return {};
  return {cfg->half_width, cfg->nodes_per_dim, cfg->tol};
}

lpb_status residual_common(bool convolution, const lpb_prior* prior,
                           const double* a, double p, double k, int y_count,
                           const double* ys, const lpb_quad_cfg* cfg,
                           double* norms_out, double* max_norm_out) {
  return guarded([&] {
    check_ptr(prior, "prior");
    check_ptr(a, "a");
    check_ptr(ys, "ys");
    check_ptr(max_norm_out, "max_norm_out");
    const int n = prior->impl.dim();
    const lpb::LinearMap map = lpb::linear_map_from(n, a);
    const std::span<const double> yspan(ys, static_cast<size_t>(y_count) * n);
    const lpb::ResidualReport report =
        convolution
            ? lpb::convolution_residual(prior->impl, map, lpb::LossSpec(p, k),
                                        yspan, y_count, from_c(cfg))
            : lpb::orthogonality_residual(prior->impl, map, lpb::LossSpec(p, k),
                                          yspan, y_count, from_c(cfg));
    if (norms_out != nullptr)
      std::memcpy(norms_out, report.norms.data(), sizeof(double) * y_count);
    *max_norm_out = report.max_norm;
  });
}

}  // namespace

extern "C" {

lpb_quad_cfg lpb_quad_cfg_default(void) { return {8.0, 801, 1e-10}; }

const char* lpb_status_name(lpb_status status) {
  return lpb::status_name(static_cast<lpb::Status>(static_cast<int>(status)));
}

const char* lpb_last_error(void) { return g_last_error.c_str(); }

const char* lpb_version(void) { return "1.0.0"; }

/* ---- linear algebra ---- */

lpb_status lpb_matrix_sqrt(int n, const double* a, double* sqrt_out) {
  return guarded([&] {
    check_ptr(a, "a");
    check_ptr(sqrt_out, "sqrt_out");
    const lpb::LinearMap map = lpb::linear_map_from(n, a);
    const lpb::Mat& s = map.psd_sqrt();
    std::memcpy(sqrt_out, s.data().data(), sizeof(double) * n * n);
  });
}

lpb_status lpb_matrix_eigen_floor(int n, const double* a, double* eigen_floor_out) {
  return guarded([&] {
    check_ptr(a, "a");
    check_ptr(eigen_floor_out, "eigen_floor_out");
    *eigen_floor_out = lpb::linear_map_from(n, a).eigen_floor();
  });
}

lpb_status lpb_gaussian_pdf(int n, const double* x, const double* mean,
                            const double* cov, double* density_out) {
  return guarded([&] {
    check_ptr(x, "x");
    check_ptr(mean, "mean");
    check_ptr(cov, "cov");
    check_ptr(density_out, "density_out");
    const lpb::LinearMap map = lpb::linear_map_from(n, cov);
    lpb::require(map.eigen_floor() > 0.0, lpb::Status::SingularCovariance,
                 "covariance must be positive definite");
    const lpb::GaussianDensity dens(lpb::Vec(mean, mean + n), map);
    *density_out = dens.density(std::span<const double>(x, n));
  });
}

/* ---- Hermite polynomials ---- */

lpb_status lpb_hermite_coefficients(int degree, double* coeffs_out) {
  return guarded([&] {
    check_ptr(coeffs_out, "coeffs_out");
    const lpb::HermitePoly poly = lpb::hermite_polynomial(degree);
    std::memcpy(coeffs_out, poly.coeffs.data(), sizeof(double) * poly.coeffs.size());
  });
}

lpb_status lpb_hermite_zeros(int degree, double* zeros_out) {
  return guarded([&] {
    check_ptr(zeros_out, "zeros_out");
    const lpb::Vec z = lpb::hermite_zeros(degree);
    std::memcpy(zeros_out, z.data(), sizeof(double) * z.size());
  });
}

/* ---- loss ---- */

lpb_status lpb_loss_value(int n, const double* x, double p, double k,
                          double* value_out) {
  return guarded([&] {
    check_ptr(x, "x");
    check_ptr(value_out, "value_out");
    lpb::require(n >= 1, lpb::Status::InvalidArgument, "dimension must be >= 1");
    *value_out = lpb::loss_value(std::span<const double>(x, n), lpb::LossSpec(p, k));
  });
}

lpb_status lpb_loss_gradient(int n, const double* x, double p, double k,
                             double* gradient_out) {
  return guarded([&] {
    check_ptr(x, "x");
    check_ptr(gradient_out, "gradient_out");
    lpb::require(n >= 1, lpb::Status::InvalidArgument, "dimension must be >= 1");
    lpb::loss_gradient_into(x, n, lpb::LossSpec(p, k), gradient_out);
  });
}

/* ---- priors ---- */

lpb_status lpb_prior_gaussian(int n, const double* mean, const double* cov,
                              lpb_prior** out) {
  return guarded([&] {
    check_ptr(mean, "mean");
    check_ptr(cov, "cov");
    check_ptr(out, "out");
    lpb::require(n >= 1, lpb::Status::InvalidArgument, "dimension must be >= 1");
    lpb::Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = cov[i * n + j];
    *out = new lpb_prior{lpb::Prior::gaussian(lpb::Vec(mean, mean + n), std::move(m))};
  });
}

lpb_status lpb_prior_gaussian_for_matrix(int n, const double* a, lpb_prior** out) {
  return guarded([&] {
    check_ptr(a, "a");
    check_ptr(out, "out");
    *out = new lpb_prior{lpb::Prior::gaussian_for_matrix(lpb::linear_map_from(n, a))};
  });
}

lpb_status lpb_prior_atomic(int n, int atom_count, const double* atoms,
                            const double* probs, lpb_prior** out) {
  return guarded([&] {
    check_ptr(atoms, "atoms");
    check_ptr(probs, "probs");
    check_ptr(out, "out");
    lpb::require(n >= 1 && atom_count >= 1, lpb::Status::InvalidArgument,
                 "invalid atomic prior shape");
    *out = new lpb_prior{lpb::Prior::atomic(
        n, lpb::Vec(atoms, atoms + static_cast<size_t>(atom_count) * n),
        lpb::Vec(probs, probs + atom_count))};
  });
}

lpb_status lpb_prior_grid(int n, const int* axis_sizes, const double* axes_concat,
                          const double* weights, lpb_prior** out) {
  return guarded([&] {
    check_ptr(axis_sizes, "axis_sizes");
    check_ptr(axes_concat, "axes_concat");
    check_ptr(weights, "weights");
    check_ptr(out, "out");
    lpb::require(n >= 1 && n <= 2, lpb::Status::DimensionTooLarge,
                 "grid priors support n <= 2");
    std::vector<lpb::Vec> axes;
    size_t offset = 0, total = 1;
    for (int d = 0; d < n; ++d) {
      lpb::require(axis_sizes[d] >= 1, lpb::Status::InvalidArgument,
                   "axis sizes must be positive");
      axes.emplace_back(axes_concat + offset, axes_concat + offset + axis_sizes[d]);
      offset += axis_sizes[d];
      total *= axis_sizes[d];
    }
    *out = new lpb_prior{
        lpb::Prior::grid(std::move(axes), lpb::Vec(weights, weights + total))};
  });
}

lpb_status lpb_prior_cosine(double a, double rho, double theta, double omega,
                            lpb_prior** out) {
  return guarded([&] {
    check_ptr(out, "out");
    *out = new lpb_prior{lpb::Prior::cosine(a, rho, theta, omega)};
  });
}

void lpb_prior_free(lpb_prior* prior) { delete prior; }

int lpb_prior_dim(const lpb_prior* prior) {
  return prior == nullptr ? 0 : prior->impl.dim();
}

lpb_status lpb_prior_density(const lpb_prior* prior, const double* x,
                             double* density_out) {
  return guarded([&] {
    check_ptr(prior, "prior");
    check_ptr(x, "x");
    check_ptr(density_out, "density_out");
    *density_out = prior->impl.density(
        std::span<const double>(x, static_cast<size_t>(prior->impl.dim())));
  });
}

lpb_status lpb_prior_sample(const lpb_prior* prior, int count,
                            unsigned long long seed, double* samples_out) {
  return guarded([&] {
    check_ptr(prior, "prior");
    check_ptr(samples_out, "samples_out");
    const lpb::Vec s = lpb::sample_prior(prior->impl, count, seed);
    std::memcpy(samples_out, s.data(), sizeof(double) * s.size());
  });
}

lpb_status lpb_omega_for_p(double p, int capacity, double* omegas_out,
                           int* count_out) {
  return guarded([&] {
    check_ptr(count_out, "count_out");
    const lpb::Vec omegas = lpb::omega_for_p(p);
    *count_out = static_cast<int>(omegas.size());
    if (omegas_out != nullptr) {
      const int write = std::min(capacity, *count_out);
      for (int i = 0; i < write; ++i) omegas_out[i] = omegas[i];
    }
  });
}

/* ---- estimation ---- */

lpb_status lpb_posterior_moments(const lpb_prior* prior, const double* y,
                                 const lpb_quad_cfg* cfg, double* mean_out,
                                 double* cov_out) {
  return guarded([&] {
    check_ptr(prior, "prior");
    check_ptr(y, "y");
    check_ptr(mean_out, "mean_out");
    const int n = prior->impl.dim();
    const lpb::PosteriorGrid post =
        lpb::posterior(prior->impl, std::span<const double>(y, n), from_c(cfg));
    const lpb::Vec m = post.mean();
    std::memcpy(mean_out, m.data(), sizeof(double) * n);
    if (cov_out != nullptr) {
      const lpb::Mat c = post.covariance();
      std::memcpy(cov_out, c.data().data(), sizeof(double) * n * n);
    }
  });
}

lpb_status lpb_optimal_estimate(const lpb_prior* prior, const double* y, double p,
                                double k, const lpb_quad_cfg* cfg,
                                double* estimate_out) {
  return guarded([&] {
    check_ptr(prior, "prior");
    check_ptr(y, "y");
    check_ptr(estimate_out, "estimate_out");
    const int n = prior->impl.dim();
    const lpb::Vec f =
        lpb::optimal_estimate(prior->impl, std::span<const double>(y, n),
                              lpb::LossSpec(p, k), from_c(cfg));
    std::memcpy(estimate_out, f.data(), sizeof(double) * n);
  });
}

lpb_status lpb_fit_best_linear(const lpb_prior* prior, double p, double k,
                               int y_count, const double* ys,
                               const lpb_quad_cfg* cfg, double* a_out,
                               double* max_deviation_out) {
  return guarded([&] {
    check_ptr(prior, "prior");
    check_ptr(ys, "ys");
    check_ptr(a_out, "a_out");
    check_ptr(max_deviation_out, "max_deviation_out");
    const int n = prior->impl.dim();
    const lpb::LinearFit fit = lpb::fit_best_linear(
        prior->impl, lpb::LossSpec(p, k),
        std::span<const double>(ys, static_cast<size_t>(y_count) * n), y_count,
        from_c(cfg));
    std::memcpy(a_out, fit.a.data().data(), sizeof(double) * n * n);
    *max_deviation_out = fit.max_deviation;
  });
}

lpb_status lpb_bayes_risk(const lpb_prior* prior, const double* linear_a,
                          double p, double k, long long samples,
                          unsigned long long seed, const lpb_quad_cfg* cfg,
                          double* risk_out, double* std_error_out) {
  return guarded([&] {
    check_ptr(prior, "prior");
    check_ptr(risk_out, "risk_out");
    check_ptr(std_error_out, "std_error_out");
    const int n = prior->impl.dim();
    lpb::Mat a;
    const lpb::Mat* a_ptr = nullptr;
    if (linear_a != nullptr) {
      a = lpb::Mat(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = linear_a[i * n + j];
      a_ptr = &a;
    }
    const lpb::RiskEstimate r = lpb::bayes_risk(prior->impl, a_ptr,
                                                lpb::LossSpec(p, k), samples,
                                                seed, from_c(cfg));
    *risk_out = r.value;
    *std_error_out = r.std_error;
  });
}

/* ---- verification ---- */

lpb_status lpb_orthogonality_residual(const lpb_prior* prior, const double* a,
                                      double p, double k, int y_count,
                                      const double* ys, const lpb_quad_cfg* cfg,
                                      double* norms_out, double* max_norm_out) {
  return residual_common(false, prior, a, p, k, y_count, ys, cfg, norms_out,
                         max_norm_out);
}

lpb_status lpb_convolution_residual(const lpb_prior* prior, const double* a,
                                    double p, double k, int y_count,
                                    const double* ys, const lpb_quad_cfg* cfg,
                                    double* norms_out, double* max_norm_out) {
  return residual_common(true, prior, a, p, k, y_count, ys, cfg, norms_out,
                         max_norm_out);
}

lpb_status lpb_ft_odd_kernel(double exponent, double omega, double* g_out) {
  return guarded([&] {
    check_ptr(g_out, "g_out");
    *g_out = lpb::ft_odd_kernel(exponent, omega);
  });
}

lpb_status lpb_ft_zero_scan(double exponent, double omega_max, double step,
                            double* min_abs_out, int capacity, double* zeros_out,
                            int* zero_count_out) {
  return guarded([&] {
    check_ptr(min_abs_out, "min_abs_out");
    check_ptr(zero_count_out, "zero_count_out");
    const lpb::FtZeroScan scan = lpb::ft_zero_scan(exponent, omega_max, step);
    *min_abs_out = scan.min_abs;
    *zero_count_out = static_cast<int>(scan.zeros.size());
    if (zeros_out != nullptr) {
      const int write = std::min(capacity, *zero_count_out);
      for (int i = 0; i < write; ++i) zeros_out[i] = scan.zeros[i];
    }
  });
}

lpb_status lpb_poly_moment_functional(int n, int degree, const double* coeffs,
                                      double k, int coord_index, const double* y,
                                      double* value_out) {
  return guarded([&] {
    check_ptr(coeffs, "coeffs");
    check_ptr(y, "y");
    check_ptr(value_out, "value_out");
    const size_t count = n == 1 ? static_cast<size_t>(degree + 1)
                                : static_cast<size_t>(degree + 1) * (degree + 1);
    const lpb::PolynomialND poly = lpb::PolynomialND::from_dense(
        n, degree, std::span<const double>(coeffs, count));
    *value_out = lpb::poly_moment_functional(
        poly, k, coord_index, std::span<const double>(y, n),
        lpb::QuadratureConfig{});
  });
}

}  // extern "C"
