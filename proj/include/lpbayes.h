#ifndef LPBAYES_H
#define LPBAYES_H

/*
 * lpbayes — optimal Bayesian L^p estimation for signals observed through
 * additive standard Gaussian noise (Y = X + Z).
 *
 * The library computes posterior summaries and optimal estimators for the
 * loss l_{p,k}(x) = ||x||_k^p, certifies or refutes linearity of the optimal
 * estimator through an orthogonality residual, constructs the unique Gaussian
 * prior that makes f(y) = A y optimal for 1 <= p = k <= 2, and constructs the
 * cosine-modulated Gaussian priors that do the same for p > 2.
 *
 * All entry points are C functions operating on plain buffers and opaque
 * handles, and return lpb_status. On failure a thread-local message is
 * available from lpb_last_error(). Matrices are dense row-major n*n buffers.
 */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LPB_API __declspec(dllexport)
#else
#define LPB_API __attribute__((visibility("default")))
#endif

typedef enum lpb_status {
  LPB_OK = 0,
  LPB_ERR_INVALID_ARGUMENT = 1,
  LPB_ERR_NOT_SYMMETRIC = 2,
  LPB_ERR_NOT_PSD = 3,
  LPB_ERR_NOT_PD = 4,
  LPB_ERR_SINGULAR_COVARIANCE = 5,
  LPB_ERR_IMPROPER_PRIOR = 6,
  LPB_ERR_DEGREE_TOO_LARGE = 7,
  LPB_ERR_DIMENSION_TOO_LARGE = 8,
  LPB_ERR_EMPTY_POSTERIOR = 9,
  LPB_ERR_QUADRATURE_UNDERFLOW = 10,
  LPB_ERR_NO_ZERO_FOUND = 11,
  LPB_ERR_NO_CONVERGENCE = 12,
  LPB_ERR_RANK_DEFICIENT_GRID = 13,
  LPB_ERR_NORMALIZATION = 14,
  LPB_ERR_IO = 15,
  LPB_ERR_INTERNAL = 16
} lpb_status;

/* Truncation and resolution controls shared by all quadrature-backed
 * operations. nodes_per_dim must be odd (grids always contain their center)
 * and half_width must be at least 6 noise standard deviations. */
typedef struct lpb_quad_cfg {
  double half_width;
  int nodes_per_dim;
  double tol;
} lpb_quad_cfg;

LPB_API lpb_quad_cfg lpb_quad_cfg_default(void); /* {8.0, 801, 1e-10} */

LPB_API const char* lpb_status_name(lpb_status status);
LPB_API const char* lpb_last_error(void);
LPB_API const char* lpb_version(void);

/* ---------------------------------------------------------------------- */
/* Dense symmetric linear algebra                                          */
/* ---------------------------------------------------------------------- */

/* Unique positive semidefinite square root S with S*S = a. */
LPB_API lpb_status lpb_matrix_sqrt(int n, const double* a, double* sqrt_out);

/* Smallest eigenvalue of a symmetric matrix. */
LPB_API lpb_status lpb_matrix_eigen_floor(int n, const double* a,
                                          double* eigen_floor_out);

/* Multivariate normal density at x; cov must be symmetric positive definite. */
LPB_API lpb_status lpb_gaussian_pdf(int n, const double* x, const double* mean,
                                    const double* cov, double* density_out);

/* ---------------------------------------------------------------------- */
/* Probabilist's Hermite polynomials He_m                                  */
/* ---------------------------------------------------------------------- */

/* Coefficients in increasing-power order; coeffs_out holds degree+1 values.
 * Degree is limited to 64. */
LPB_API lpb_status lpb_hermite_coefficients(int degree, double* coeffs_out);

/* All degree real zeros, ascending; zeros_out holds degree values. */
LPB_API lpb_status lpb_hermite_zeros(int degree, double* zeros_out);

/* ---------------------------------------------------------------------- */
/* The loss l_{p,k} and its gradient                                       */
/* ---------------------------------------------------------------------- */

LPB_API lpb_status lpb_loss_value(int n, const double* x, double p, double k,
                                  double* value_out);
LPB_API lpb_status lpb_loss_gradient(int n, const double* x, double p, double k,
                                     double* gradient_out);

/* ---------------------------------------------------------------------- */
/* Priors (opaque handle)                                                  */
/* ---------------------------------------------------------------------- */

typedef struct lpb_prior lpb_prior;

LPB_API lpb_status lpb_prior_gaussian(int n, const double* mean,
                                      const double* cov, lpb_prior** out);

/* The Gaussian prior N(0, (I - A)^{-1} A) that makes f(y) = A y optimal.
 * Requires 0 < A < I in the positive definite order; eigenvalues >= 1 yield
 * LPB_ERR_IMPROPER_PRIOR. */
LPB_API lpb_status lpb_prior_gaussian_for_matrix(int n, const double* a,
                                                 lpb_prior** out);

/* atoms: atom_count*n row-major, probs: atom_count nonnegative, sum 1. */
LPB_API lpb_status lpb_prior_atomic(int n, int atom_count, const double* atoms,
                                    const double* probs, lpb_prior** out);

/* Tensor-product grid of point masses (n <= 2). axes_concat stores the n
 * axis node lists back to back, axis_sizes their lengths; weights has
 * axis_sizes[0]*...*axis_sizes[n-1] entries, row-major, nonnegative, sum 1. */
LPB_API lpb_status lpb_prior_grid(int n, const int* axis_sizes,
                                  const double* axes_concat,
                                  const double* weights, lpb_prior** out);

/* Scalar density proportional to
 *   exp(-(1-a)/a * x^2/2) * (1 + rho*cos(omega*x/sqrt(a) + theta))
 * with 0 < a < 1 and |rho| <= 1. The normalization constant is computed in
 * closed form and cross-checked against quadrature. */
LPB_API lpb_status lpb_prior_cosine(double a, double rho, double theta,
                                    double omega, lpb_prior** out);

LPB_API void lpb_prior_free(lpb_prior* prior);
LPB_API int lpb_prior_dim(const lpb_prior* prior);

/* Density evaluation for gaussian/cosine priors (grid and atomic priors are
 * discrete and have no density). */
LPB_API lpb_status lpb_prior_density(const lpb_prior* prior, const double* x,
                                     double* density_out);

/* count*n samples, deterministic in seed. */
LPB_API lpb_status lpb_prior_sample(const lpb_prior* prior, int count,
                                    unsigned long long seed,
                                    double* samples_out);

/* Modulation frequencies for which the cosine prior family induces a linear
 * optimal L^p estimator, p > 2. For even integer p these are the zeros of
 * He_{p-1}; otherwise they are located by a sign-change scan of the kernel
 * transform on (0, 8]. The list is sorted ascending and closed under
 * negation, always including 0. count_out is always set; at most capacity
 * values are written. */
LPB_API lpb_status lpb_omega_for_p(double p, int capacity, double* omegas_out,
                                   int* count_out);

/* ---------------------------------------------------------------------- */
/* Estimation                                                              */
/* ---------------------------------------------------------------------- */

/* Mean and covariance of the posterior of X given Y = y (cfg may be NULL
 * for defaults). */
LPB_API lpb_status lpb_posterior_moments(const lpb_prior* prior,
                                         const double* y,
                                         const lpb_quad_cfg* cfg,
                                         double* mean_out, double* cov_out);

/* argmin over v of E[ l_{p,k}(X - v) | Y = y ]. */
LPB_API lpb_status lpb_optimal_estimate(const lpb_prior* prior, const double* y,
                                        double p, double k,
                                        const lpb_quad_cfg* cfg,
                                        double* estimate_out);

/* Least-squares fit of the optimal estimator against a linear map over the
 * y grid (y_count*n row-major). Writes the symmetrized fit and the maximum
 * Euclidean deviation over the grid. */
LPB_API lpb_status lpb_fit_best_linear(const lpb_prior* prior, double p,
                                       double k, int y_count, const double* ys,
                                       const lpb_quad_cfg* cfg, double* a_out,
                                       double* max_deviation_out);

/* Monte Carlo Bayes risk E[l_{p,k}(X - f(Y))] with standard error.
 * linear_a selects f(y) = A y; pass NULL for the optimal estimator.
 * samples must be at least 1000; the run is deterministic in seed. */
LPB_API lpb_status lpb_bayes_risk(const lpb_prior* prior,
                                  const double* linear_a, double p, double k,
                                  long long samples, unsigned long long seed,
                                  const lpb_quad_cfg* cfg, double* risk_out,
                                  double* std_error_out);

/* ---------------------------------------------------------------------- */
/* Linearity verification                                                  */
/* ---------------------------------------------------------------------- */

/* Residual r(y) = E[ l'_{p,k}(X - A y) phi(y - X) ] over the y grid
 * (y_count*n row-major). The linear estimator A y is optimal exactly when
 * the residual vanishes for all y. norms_out (y_count, may be NULL) receives
 * per-y Euclidean norms; max_norm_out the maximum. */
LPB_API lpb_status lpb_orthogonality_residual(const lpb_prior* prior,
                                              const double* a, double p,
                                              double k, int y_count,
                                              const double* ys,
                                              const lpb_quad_cfg* cfg,
                                              double* norms_out,
                                              double* max_norm_out);

/* Equivalent convolution form: the orthogonality condition rewritten against
 * the reweighted measure mu(dx) = exp(x'(I-A)x/2) dP_{A^{-1/2}X}(x) with the
 * kernel l'_{p,k}(A^{1/2} t) phi(t). Requires A positive definite. Agrees
 * with lpb_orthogonality_residual on pass/fail at any shared tolerance. */
LPB_API lpb_status lpb_convolution_residual(const lpb_prior* prior,
                                            const double* a, double p, double k,
                                            int y_count, const double* ys,
                                            const lpb_quad_cfg* cfg,
                                            double* norms_out,
                                            double* max_norm_out);

/* g(w) with F{ sign(x)|x|^{e-1} phi0(x) }(w) = -i g(w), computed as
 * 2 * integral_0^inf x^{e-1} phi0(x) sin(w x) dx. */
LPB_API lpb_status lpb_ft_odd_kernel(double exponent, double omega,
                                     double* g_out);

/* Scans |g(w)| exp(w^2/2) on [step, omega_max] for sign changes of g.
 * min_abs_out receives the minimum envelope-normalized magnitude over the
 * punctured grid; detected zeros are polished by bisection. */
LPB_API lpb_status lpb_ft_zero_scan(double exponent, double omega_max,
                                    double step, double* min_abs_out,
                                    int capacity, double* zeros_out,
                                    int* zero_count_out);

/* E[ f(Z_i) poly(Z - y) ] with f(z) = |z|^{k-1} sign(z), Z standard normal
 * of dimension n <= 2, and poly given by dense row-major coefficients of
 * size (degree+1)^n (coefficient of x1^i x2^j at index i*(degree+1)+j).
 * Degree is limited to 6. coord_index is 0-based. */
LPB_API lpb_status lpb_poly_moment_functional(int n, int degree,
                                              const double* coeffs, double k,
                                              int coord_index, const double* y,
                                              double* value_out);

#ifdef __cplusplus
}
#endif

#endif /* LPBAYES_H */
