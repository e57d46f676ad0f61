#include <lpbayes.h>

#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"

namespace {

struct PriorGuard {
  lpb_prior* p = nullptr;
  ~PriorGuard() { lpb_prior_free(p); }
};

}  // namespace

TEST_CASE("c api: version, status names, default config") {
  CHECK(std::string(lpb_version()) == "1.0.0");
  CHECK(std::string(lpb_status_name(LPB_OK)) == "OK");
  CHECK(std::string(lpb_status_name(LPB_ERR_IMPROPER_PRIOR)) == "IMPROPER_PRIOR");
  const lpb_quad_cfg cfg = lpb_quad_cfg_default();
  CHECK(cfg.half_width == 8.0);
  CHECK(cfg.nodes_per_dim == 801);
  CHECK(cfg.tol == 1e-10);
}

TEST_CASE("c api: matrix square root and eigen floor") {
  const double a[4] = {0.5, 0.2, 0.2, 0.4};
  double s[4] = {0, 0, 0, 0};
  REQUIRE(lpb_matrix_sqrt(2, a, s) == LPB_OK);
  double back[4];
  back[0] = s[0] * s[0] + s[1] * s[2];
  back[1] = s[0] * s[1] + s[1] * s[3];
  back[2] = s[2] * s[0] + s[3] * s[2];
  back[3] = s[2] * s[1] + s[3] * s[3];
  for (int i = 0; i < 4; ++i) CHECK(std::abs(back[i] - a[i]) <= 1e-10);

  const double indef[4] = {1.0, 0.0, 0.0, -1.0};
  CHECK(lpb_matrix_sqrt(2, indef, s) == LPB_ERR_NOT_PSD);
  CHECK(std::strlen(lpb_last_error()) > 0);

  double floor = 0.0;
  REQUIRE(lpb_matrix_eigen_floor(2, indef, &floor) == LPB_OK);
  CHECK(floor == doctest::Approx(-1.0).epsilon(1e-12));

  CHECK(lpb_matrix_sqrt(2, nullptr, s) == LPB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: hermite") {
  double coeffs[4];
  REQUIRE(lpb_hermite_coefficients(3, coeffs) == LPB_OK);
  CHECK(coeffs[1] == -3.0);
  CHECK(coeffs[3] == 1.0);

  double zeros[3];
  REQUIRE(lpb_hermite_zeros(3, zeros) == LPB_OK);
  CHECK(zeros[2] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

  CHECK(lpb_hermite_zeros(100, zeros) == LPB_ERR_DEGREE_TOO_LARGE);
}

TEST_CASE("c api: loss") {
  const double x[2] = {3.0, 4.0};
  double v = 0.0;
  REQUIRE(lpb_loss_value(2, x, 2.0, 2.0, &v) == LPB_OK);
  CHECK(v == doctest::Approx(25.0));
  double g[2];
  REQUIRE(lpb_loss_gradient(2, x, 2.0, 2.0, g) == LPB_OK);
  CHECK(g[0] == doctest::Approx(6.0));
  CHECK(g[1] == doctest::Approx(8.0));
  CHECK(lpb_loss_value(2, x, 0.5, 2.0, &v) == LPB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: prior lifecycle, density, sampling") {
  PriorGuard prior;
  const double a = 0.5;
  REQUIRE(lpb_prior_gaussian_for_matrix(1, &a, &prior.p) == LPB_OK);
  CHECK(lpb_prior_dim(prior.p) == 1);

  const double x = 0.0;
  double d = 0.0;
  REQUIRE(lpb_prior_density(prior.p, &x, &d) == LPB_OK);
  CHECK(d == doctest::Approx(0.3989422804014327).epsilon(1e-12));

  double samples[100];
  REQUIRE(lpb_prior_sample(prior.p, 100, 12, samples) == LPB_OK);
  double samples2[100];
  REQUIRE(lpb_prior_sample(prior.p, 100, 12, samples2) == LPB_OK);
  CHECK(std::memcmp(samples, samples2, sizeof(samples)) == 0);

  PriorGuard improper;
  const double one = 1.0;
  CHECK(lpb_prior_gaussian_for_matrix(1, &one, &improper.p) ==
        LPB_ERR_IMPROPER_PRIOR);
  CHECK(improper.p == nullptr);
}

TEST_CASE("c api: grid and cosine priors") {
  PriorGuard grid;
  const int sizes[1] = {3};
  const double axis[3] = {-1.0, 0.0, 1.0};
  const double w[3] = {0.25, 0.5, 0.25};
  REQUIRE(lpb_prior_grid(1, sizes, axis, w, &grid.p) == LPB_OK);

  PriorGuard cosine;
  REQUIRE(lpb_prior_cosine(0.5, 1.0, 0.0, std::sqrt(3.0), &cosine.p) == LPB_OK);
  const double x = 1.0;
  double d = 0.0;
  REQUIRE(lpb_prior_density(cosine.p, &x, &d) == LPB_OK);
  CHECK(d >= 0.0);

  PriorGuard bad;
  CHECK(lpb_prior_cosine(1.5, 1.0, 0.0, 1.0, &bad.p) == LPB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: posterior, estimate, fit, residuals") {
  PriorGuard prior;
  const double a = 0.5;
  REQUIRE(lpb_prior_gaussian_for_matrix(1, &a, &prior.p) == LPB_OK);

  const double y = 2.0;
  double mean = 0.0, cov = 0.0;
  REQUIRE(lpb_posterior_moments(prior.p, &y, nullptr, &mean, &cov) == LPB_OK);
  CHECK(mean == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(cov == doctest::Approx(0.5).epsilon(1e-8));

  double f = 0.0;
  REQUIRE(lpb_optimal_estimate(prior.p, &y, 1.5, 1.5, nullptr, &f) == LPB_OK);
  CHECK(f == doctest::Approx(1.0).epsilon(1e-8));

  double ys[9];
  for (int i = 0; i < 9; ++i) ys[i] = -2.0 + 0.5 * i;
  double afit = 0.0, dev = 0.0;
  REQUIRE(lpb_fit_best_linear(prior.p, 1.5, 1.5, 9, ys, nullptr, &afit, &dev) ==
          LPB_OK);
  CHECK(afit == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(dev <= 1e-6);

  double norms[9];
  double max_norm = 0.0;
  REQUIRE(lpb_orthogonality_residual(prior.p, &a, 1.5, 1.5, 9, ys, nullptr, norms,
                                     &max_norm) == LPB_OK);
  CHECK(max_norm <= 1e-6);
  REQUIRE(lpb_convolution_residual(prior.p, &a, 1.5, 1.5, 9, ys, nullptr, nullptr,
                                   &max_norm) == LPB_OK);
  CHECK(max_norm <= 1e-6);
}

TEST_CASE("c api: risk, kernel transform, frequency list, poly functional") {
  PriorGuard prior;
  const double a = 0.5;
  REQUIRE(lpb_prior_gaussian_for_matrix(1, &a, &prior.p) == LPB_OK);

  double risk = 0.0, se = 0.0;
  REQUIRE(lpb_bayes_risk(prior.p, &a, 2.0, 2.0, 50000, 0, nullptr, &risk, &se) ==
          LPB_OK);
  CHECK(std::abs(risk - 0.5) <= 3.0 * se);

  double g = 0.0;
  REQUIRE(lpb_ft_odd_kernel(2.0, 1.0, &g) == LPB_OK);
  CHECK(g == doctest::Approx(std::exp(-0.5)).epsilon(1e-10));

  double min_abs = 0.0, zeros[8];
  int zc = 0;
  REQUIRE(lpb_ft_zero_scan(4.0, 8.0, 1e-2, &min_abs, 8, zeros, &zc) == LPB_OK);
  REQUIRE(zc == 1);
  CHECK(zeros[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));

  double omegas[8];
  int oc = 0;
  REQUIRE(lpb_omega_for_p(4.0, 8, omegas, &oc) == LPB_OK);
  REQUIRE(oc == 3);
  CHECK(omegas[2] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(lpb_omega_for_p(2.0, 8, omegas, &oc) == LPB_ERR_NO_ZERO_FOUND);

  const double coeffs[2] = {0.0, 1.0};
  const double y0 = 0.0;
  double value = 0.0;
  REQUIRE(lpb_poly_moment_functional(1, 1, coeffs, 2.0, 0, &y0, &value) == LPB_OK);
  CHECK(value == doctest::Approx(1.0).epsilon(1e-10));
}
