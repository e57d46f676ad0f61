#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace lpb {

namespace {

GaussLegendre compute_gauss_legendre(int n) {
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  require(n >= 1 && n <= 256, Status::InvalidArgument,
          "gauss_legendre: order out of range");
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double odd_weight_integral(double kexp, const std::function<double(double)>& g) {
  require(std::isfinite(kexp) && kexp >= 1.0 - 1e-12, Status::InvalidArgument,
          "odd_weight_integral: exponent must be >= 1");
  const auto& gl = gauss_legendre(24);
  auto diff = [&](double z) { return g(z) - g(-z); };

  // z in [0, 1] with z = u^2; integrand 2 u^{2k-1} diff(u^2) phi0(u^2).
  auto first = [&](double u) {
    const double z = u * u;
    return 2.0 * std::pow(u, 2.0 * kexp - 1.0) * diff(z) * std_normal_pdf(z);
  };
  double s = gl_panels(first, 0.0, 1.0, 0.25, gl);

  auto rest = [&](double z) {
    return std::pow(z, kexp - 1.0) * diff(z) * std_normal_pdf(z);
  };
  s += gl_panels(rest, 1.0, 12.0, 1.0, gl);
  return s;
}

double odd_kernel_expectation(double kexp, const std::function<double(double)>& g) {
  return odd_weight_integral(kexp, g);
}

int effective_nodes(int dim, int requested) {
  static constexpr int caps[5] = {0, 200001, 1501, 101, 41};
  require(dim >= 1 && dim <= 4, Status::DimensionTooLarge,
          "tensor quadrature supports dimensions 1 through 4");
  int m = std::min(requested, caps[dim]);
  if (m % 2 == 0) --m;
  return std::max(m, 3);
}

}  // namespace lpb
