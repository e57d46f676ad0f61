#include "hermite.hpp"

#include <cmath>

namespace lpb {

namespace {

void check_degree(int m, int lo) {
  require(m >= lo, Status::InvalidArgument, "hermite: degree out of range");
  require(m <= kMaxHermiteDegree, Status::DegreeTooLarge,
          "hermite: degree exceeds 64");
}

}  // namespace

double hermite_value(int m, double x) {
  check_degree(m, 0);
  if (m == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int j = 1; j < m; ++j) {
    const double next = x * cur - j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_derivative(int m, double x) {
  check_degree(m, 0);
  if (m == 0) return 0.0;
  return m * hermite_value(m - 1, x);
}

double HermitePoly::eval(double x) const {
  double r = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
  return r;
}

HermitePoly hermite_polynomial(int m) {
  check_degree(m, 0);
  Vec prev{1.0};
  if (m == 0) return {0, prev};
  Vec cur{0.0, 1.0};
  for (int j = 1; j < m; ++j) {
    Vec next(j + 2, 0.0);
    for (size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (size_t i = 0; i < prev.size(); ++i) next[i] -= j * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {m, cur};
}

Vec hermite_zeros(int m) {
  check_degree(m, 1);
  if (m == 1) return {0.0};

  Mat jacobi(m, m);
  for (int j = 1; j < m; ++j)
    jacobi(j - 1, j) = jacobi(j, j - 1) = std::sqrt(static_cast<double>(j));
  Vec z = sym_eigen(jacobi).values;

  for (double& zi : z) {
    const double d = hermite_derivative(m, zi);
    if (d != 0.0) zi -= hermite_value(m, zi) / d;
  }
  // Enforce exact negation pairing (the spectrum is symmetric about 0).
  for (int i = 0; i < m / 2; ++i) {
    const double s = 0.5 * (z[m - 1 - i] - z[i]);
    z[i] = -s;
    z[m - 1 - i] = s;
  }
  if (m % 2 == 1) z[m / 2] = 0.0;
  return z;
}

GaussHermite gauss_hermite(int m) {
  check_degree(m, 1);
  GaussHermite gh;
  if (m == 1) {
    gh.nodes = {0.0};
    gh.weights = {1.0};
    return gh;
  }
  Mat jacobi(m, m);
  for (int j = 1; j < m; ++j)
    jacobi(j - 1, j) = jacobi(j, j - 1) = std::sqrt(static_cast<double>(j));
  const SymEigen e = sym_eigen(jacobi);
  gh.nodes = e.values;
  gh.weights.resize(m);
  // Golub-Welsch: weight = mu0 * (first eigenvector component)^2, mu0 = 1
  // for the normalized Gaussian weight.
  for (int i = 0; i < m; ++i) gh.weights[i] = e.vectors(0, i) * e.vectors(0, i);
  return gh;
}

}  // namespace lpb
