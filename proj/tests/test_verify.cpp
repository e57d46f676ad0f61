#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hermite.hpp"
#include "test_util.hpp"
#include "verify.hpp"

using namespace lpb;

namespace {

Mat mat1(double v) {
  Mat m(1, 1);
  m(0, 0) = v;
  return m;
}

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

Vec ygrid_1d(double lo, double hi, double step) {
  Vec ys;
  for (double y = lo; y <= hi + 1e-9; y += step) ys.push_back(y);
  return ys;
}

}  // namespace

TEST_CASE("orthogonality residual: matched Gaussian prior vanishes") {
  const LinearMap a(mat1(0.5));
  const Prior prior = Prior::gaussian_for_matrix(a);
  QuadratureConfig cfg;
  const Vec ys = ygrid_1d(-4.0, 4.0, 0.5);
  const ResidualReport rep = orthogonality_residual(
      prior, a, LossSpec(1.5, 1.5), ys, static_cast<int>(ys.size()), cfg);
  CHECK(rep.max_norm <= 1e-6);
  // max_norm is recomputable from the stored residuals
  double recomputed = 0.0;
  for (const Vec& r : rep.residuals) {
    double n2 = 0.0;
    for (double v : r) n2 += v * v;
    recomputed = std::max(recomputed, std::sqrt(n2));
  }
  CHECK(rep.max_norm == recomputed);
}

TEST_CASE("orthogonality residual: odd integrand against an even measure at A = 0") {
  const Prior prior = Prior::atomic(1, {-1.0, 1.0}, {0.5, 0.5});
  const LinearMap zero(mat1(0.0));
  QuadratureConfig cfg;
  const Vec ys{0.0};
  const ResidualReport rep =
      orthogonality_residual(prior, zero, LossSpec(1.5, 1.5), ys, 1, cfg);
  CHECK(rep.max_norm <= 1e-15);
}

TEST_CASE("orthogonality residual: wrong matrix is detected") {
  const Prior prior = Prior::gaussian_for_matrix(LinearMap(mat1(0.5)));
  const LinearMap wrong(mat1(0.3));
  QuadratureConfig cfg;
  const Vec ys = ygrid_1d(-4.0, 4.0, 0.5);
  const ResidualReport rep = orthogonality_residual(
      prior, wrong, LossSpec(1.5, 1.5), ys, static_cast<int>(ys.size()), cfg);
  CHECK(rep.max_norm > 1e-6);
}

TEST_CASE("orthogonality residual: cosine prior at its designated frequency") {
  const LinearMap a(mat1(0.5));
  QuadratureConfig cfg;
  const Vec ys = ygrid_1d(-4.0, 4.0, 0.5);
  const Prior good = Prior::cosine(0.5, 1.0, 0.0, std::sqrt(3.0));
  CHECK(orthogonality_residual(good, a, LossSpec(4, 4), ys,
                               static_cast<int>(ys.size()), cfg)
            .max_norm <= 1e-6);
  const Prior bad = Prior::cosine(0.5, 1.0, 0.0, 1.0);
  CHECK(orthogonality_residual(bad, a, LossSpec(4, 4), ys,
                               static_cast<int>(ys.size()), cfg)
            .max_norm >= 1e-3);
}

TEST_CASE("every admissible frequency induces linearity across (rho, theta)") {
  const LinearMap a(mat1(0.5));
  QuadratureConfig cfg;
  const Vec ys = ygrid_1d(-4.0, 4.0, 1.0);
  const int yc = static_cast<int>(ys.size());
  for (double p : {3.0, 4.0}) {
    const Vec omegas = omega_for_p(p);
    const LossSpec spec(p, p);
    for (double omega : omegas)
      for (double rho : {0.5, 1.0})
        for (double theta : {0.0, std::numbers::pi / 4.0}) {
          const Prior prior = Prior::cosine(0.5, rho, theta, omega);
          const double resid =
              orthogonality_residual(prior, a, spec, ys, yc, cfg).max_norm;
          CHECK(resid <= 1e-6);
        }
  }
}

TEST_CASE("orthogonality residual rejects an indefinite matrix") {
  const Prior prior = Prior::gaussian_for_matrix(LinearMap(mat1(0.5)));
  QuadratureConfig cfg;
  const Vec ys{0.0};
  CHECK_THROWS_AS(orthogonality_residual(prior, LinearMap(mat1(-0.2)),
                                         LossSpec(2, 2), ys, 1, cfg),
                  Error);
}

TEST_CASE("mu transform: matched Gaussian prior gives a flat measure") {
  const LinearMap a(mat1(0.5));
  const Prior prior = Prior::gaussian_for_matrix(a);
  const MuMeasure mu = mu_transform(prior, a);
  QuadratureConfig cfg;
  Vec points, masses;
  mu.grid_representation(cfg, points, masses);
  REQUIRE(masses.size() == static_cast<size_t>(cfg.nodes_per_dim));
  double lo = masses[0], hi = masses[0];
  for (double m : masses) {
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  CHECK((hi - lo) / hi <= 1e-8);
}

TEST_CASE("mu transform: atom reweighting closed forms") {
  const LinearMap a(mat1(0.5));
  {
    const Prior prior = Prior::atomic(1, {0.0}, {1.0});
    const MuMeasure mu = mu_transform(prior, a);
    REQUIRE(mu.masses().size() == 1);
    CHECK(mu.atoms()[0] == 0.0);
    CHECK(mu.masses()[0] == doctest::Approx(1.0).epsilon(1e-14));
  }
  {
    const Prior prior = Prior::atomic(1, {-1.0, 1.0}, {0.5, 0.5});
    const MuMeasure mu = mu_transform(prior, a);
    const double u = std::sqrt(2.0);
    const double mass = 0.5 * std::exp(0.5 * (1.0 - 0.5) * u * u);
    CHECK(mu.atoms()[0] == doctest::Approx(-u).epsilon(1e-14));
    CHECK(mu.atoms()[1] == doctest::Approx(u).epsilon(1e-14));
    CHECK(mu.masses()[0] == doctest::Approx(mass).epsilon(1e-13));
    CHECK(mu.masses()[1] == doctest::Approx(mass).epsilon(1e-13));
    // total mass exceeds 1: mu is not a probability measure
    CHECK(mu.masses()[0] + mu.masses()[1] > 1.0);
  }
  CHECK_THROWS_AS(mu_transform(Prior::atomic(1, {0.0}, {1.0}), LinearMap(mat1(0.0))),
                  Error);
}

TEST_CASE("convolution residual agrees with the orthogonality residual") {
  QuadratureConfig cfg;
  const Vec ys = ygrid_1d(-4.0, 4.0, 0.5);
  const int yc = static_cast<int>(ys.size());
  const LinearMap a(mat1(0.5));

  struct Config {
    Prior prior;
    double p;
    bool expect_pass;
  };
  const Config configs[] = {
      {Prior::gaussian_for_matrix(a), 1.5, true},
      {Prior::gaussian_for_matrix(a), 1.0, true},
      {Prior::cosine(0.5, 1.0, 0.0, std::sqrt(3.0)), 4.0, true},
      {Prior::cosine(0.5, 1.0, 0.0, 1.0), 4.0, false},
      {Prior::gaussian(Vec{1.0}, mat1(1.0)), 1.5, false},  // shifted mean
  };
  for (const Config& c : configs) {
    const LossSpec spec(c.p, c.p);
    const double orth = orthogonality_residual(c.prior, a, spec, ys, yc, cfg).max_norm;
    const double conv = convolution_residual(c.prior, a, spec, ys, yc, cfg).max_norm;
    CHECK((orth <= 1e-6) == c.expect_pass);
    CHECK((conv <= 1e-6) == c.expect_pass);
  }
}

TEST_CASE("convolution residual: 2-D Gaussian case, both forms vanish") {
  const LinearMap a(mat2(0.5, 0.2, 0.2, 0.4));
  const Prior prior = Prior::gaussian_for_matrix(a);
  QuadratureConfig cfg;
  cfg.nodes_per_dim = 301;
  Vec ys;
  for (double u = -2.0; u <= 2.01; u += 1.0)
    for (double v = -2.0; v <= 2.01; v += 1.0) {
      ys.push_back(u);
      ys.push_back(v);
    }
  const int yc = static_cast<int>(ys.size() / 2);
  const LossSpec spec(2, 2);
  CHECK(orthogonality_residual(prior, a, spec, ys, yc, cfg).max_norm <= 1e-5);
  CHECK(convolution_residual(prior, a, spec, ys, yc, cfg).max_norm <= 1e-5);
}

TEST_CASE("ft_odd_kernel: closed forms") {
  CHECK(ft_odd_kernel(1.7, 0.0) == 0.0);
  CHECK(std::abs(ft_odd_kernel(4.0, std::sqrt(3.0))) <= 1e-9);
  // exponent 1 kernel: transform of x phi0(x) gives g(w) = w exp(-w^2/2)
  CHECK(ft_odd_kernel(2.0, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-10));
  CHECK(ft_odd_kernel(2.0, 2.5) ==
        doctest::Approx(2.5 * std::exp(-0.5 * 6.25)).epsilon(1e-10));
}

TEST_CASE("ft_odd_kernel: oddness in omega") {
  for (double e : {1.0, 1.5, 3.0, 4.0}) {
    for (double w : {0.3, 1.1, 2.7, 5.0}) {
      CHECK(ft_odd_kernel(e, -w) == doctest::Approx(-ft_odd_kernel(e, w)).epsilon(1e-12));
    }
  }
}

TEST_CASE("ft_odd_kernel: even-p Hermite identity on a grid") {
  for (int p : {2, 4, 6}) {
    for (double w = 0.25; w <= 6.0; w += 0.25) {
      const double lhs = std::abs(ft_odd_kernel(p, w));
      const double rhs = std::abs(hermite_value(p - 1, w)) * std::exp(-0.5 * w * w);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
  }
}

TEST_CASE("ft_zero_scan: zero-free for k in [1,2], detects the p=4 zero") {
  for (double k : {1.0, 1.5, 2.0}) {
    const FtZeroScan scan = ft_zero_scan(k, 8.0, 1e-2);
    CHECK(scan.zeros.empty());
    CHECK(scan.min_abs > 0.0);
  }
  const FtZeroScan scan4 = ft_zero_scan(4.0, 8.0, 1e-2);
  REQUIRE(scan4.zeros.size() == 1);
  CHECK(scan4.zeros[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));

  CHECK_THROWS_AS(ft_zero_scan(2.0, 3.0, 1e-2), Error);   // omega_max too small
  CHECK_THROWS_AS(ft_zero_scan(2.0, 8.0, 0.1), Error);    // step too coarse
}

TEST_CASE("poly moment functional: constants vanish identically") {
  QuadratureConfig cfg;
  const PolynomialND c = PolynomialND::from_dense(1, 0, Vec{3.7});
  CHECK(c.is_constant());
  for (double k : {1.0, 1.5, 2.0})
    for (double y = -2.0; y <= 2.0; y += 0.5) {
      const double v = poly_moment_functional(c, k, 0, std::span<const double>(&y, 1), cfg);
      CHECK(std::abs(v) <= 1e-12);
    }
}

TEST_CASE("poly moment functional: first moment at k = 2") {
  QuadratureConfig cfg;
  // poly(x) = x, y = 0, k = 2: E[Z * Z] = 1
  const PolynomialND x1 = PolynomialND::from_dense(1, 1, Vec{0.0, 1.0});
  const double zero = 0.0;
  CHECK(poly_moment_functional(x1, 2.0, 0, std::span<const double>(&zero, 1), cfg) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // 2-D: poly(x) = x1 * x2^2 (total degree 3) at y = 0: E[Z1^2] E[Z2^2] = 1
  Vec dense(16, 0.0);
  dense[1 * 4 + 2] = 1.0;
  const PolynomialND x12 = PolynomialND::from_dense(2, 3, dense);
  const double y2[2] = {0.0, 0.0};
  CHECK(poly_moment_functional(x12, 2.0, 0, std::span<const double>(y2, 2), cfg) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("poly moment functional: k = 2 cross-check against Gaussian moments") {
  QuadratureConfig cfg;
  // E[Z (Z - y)^m] = sum_j C(m,j) (-y)^{m-j} E[Z^{j+1}]
  for (int m = 0; m <= 4; ++m) {
    Vec dense(5, 0.0);
    dense[m] = 1.0;
    const PolynomialND poly = PolynomialND::from_dense(1, 4, dense);
    for (double y : {-1.5, 0.0, 0.8}) {
      double expect = 0.0;
      double binom = 1.0;
      for (int j = 0; j <= m; ++j) {
        expect += binom * std::pow(-y, m - j) * testutil::gaussian_moment(j + 1);
        binom = binom * (m - j) / (j + 1.0);
      }
      const double got =
          poly_moment_functional(poly, 2.0, 0, std::span<const double>(&y, 1), cfg);
      CHECK(got == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("poly moment functional: nonconstant cubic has a witness point") {
  QuadratureConfig cfg;
  const PolynomialND cubic =
      PolynomialND::from_dense(1, 3, Vec{0.2, -0.4, 1.1, 0.6});
  double best = 0.0;
  for (double y = -2.0; y <= 2.0; y += 0.5) {
    const double v =
        poly_moment_functional(cubic, 1.5, 0, std::span<const double>(&y, 1), cfg);
    best = std::max(best, std::abs(v));
  }
  CHECK(best > 1e-8);
}

TEST_CASE("poly moment functional: degree guard") {
  CHECK_THROWS_AS(PolynomialND::from_dense(1, 7, Vec(8, 1.0)), Error);
  try {
    PolynomialND::from_dense(1, 7, Vec(8, 1.0));
  } catch (const Error& e) {
    CHECK(e.status() == Status::DegreeTooLarge);
  }
}
