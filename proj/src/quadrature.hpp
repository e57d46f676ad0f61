#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace lpb {

struct QuadratureConfig {
  double half_width = 8.0;
  int nodes_per_dim = 801;
  double tol = 1e-10;

  void validate() const {
    require(std::isfinite(half_width) && half_width >= 6.0,
            Status::InvalidArgument, "quadrature half_width must be >= 6");
    require(nodes_per_dim >= 3 && nodes_per_dim % 2 == 1,
            Status::InvalidArgument, "nodes_per_dim must be odd and >= 3");
    require(std::isfinite(tol) && tol > 0.0, Status::InvalidArgument,
            "quadrature tol must be positive");
  }
};

struct GaussLegendre {
  Vec nodes;    // ascending on [-1, 1]
  Vec weights;
};

const GaussLegendre& gauss_legendre(int n);

template <class F>
double gl_panel(F&& f, double a, double b, const GaussLegendre& gl) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (size_t i = 0; i < gl.nodes.size(); ++i)
    s += gl.weights[i] * f(mid + half * gl.nodes[i]);
  return s * half;
}

// Uniform panel subdivision with at most max_len per panel.
template <class F>
double gl_panels(F&& f, double a, double b, double max_len, const GaussLegendre& gl) {
  if (b <= a) return 0.0;
  const int count = std::max(1, static_cast<int>(std::ceil((b - a) / max_len)));
  const double len = (b - a) / count;
  double s = 0.0;
  for (int i = 0; i < count; ++i) s += gl_panel(f, a + i * len, a + (i + 1) * len, gl);
  return s;
}

// integral_0^inf z^{kexp-1} (g(z) - g(-z)) phi0(z) dz for kexp >= 1.
// The substitution z = u^2 on [0, 1] removes the |z|^{kexp-1} endpoint
// singularity; the smooth remainder is integrated on unit panels up to 12.
double odd_weight_integral(double kexp, const std::function<double(double)>& g);

// E[ f(Z) g(Z) ] with f(z) = |z|^{k-1} sign(z) and Z standard normal.
double odd_kernel_expectation(double kexp, const std::function<double(double)>& g);

// Symmetric uniform grid: count odd, node(i) = center + (i - count/2) * step.
struct Grid1D {
  double center = 0.0;
  double half_width = 0.0;
  int count = 1;

  double step() const { return count > 1 ? 2.0 * half_width / (count - 1) : 0.0; }
  double node(int i) const { return center + (i - count / 2) * step(); }
};

// Caps keep tensor grids affordable; per-dimension requests above the cap are
// reduced (result stays odd).
int effective_nodes(int dim, int requested);

// Iterates all tensor nodes of up to 4 stacked 1-D grids, passing the node
// coordinates and the cell volume (product of steps).
template <class F>
void for_each_tensor_node(std::span<const Grid1D> grids, F&& f) {
  const int n = static_cast<int>(grids.size());
  std::array<int, 4> idx{};
  std::array<double, 4> x{};
  double vol = 1.0;
  for (int d = 0; d < n; ++d) vol *= grids[d].step();
  for (;;) {
    for (int d = 0; d < n; ++d) x[d] = grids[d].node(idx[d]);
    f(std::span<const double>(x.data(), n), vol);
    int d = n - 1;
    while (d >= 0 && ++idx[d] == grids[d].count) idx[d--] = 0;
    if (d < 0) break;
  }
}

}  // namespace lpb
