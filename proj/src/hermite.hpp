#pragma once

#include "linalg.hpp"

namespace lpb {

inline constexpr int kMaxHermiteDegree = 64;

// He_m(x) by the three-term recurrence He_{m+1} = x He_m - m He_{m-1}.
double hermite_value(int m, double x);

// He_m'(x) = m He_{m-1}(x).
double hermite_derivative(int m, double x);

struct HermitePoly {
  int degree = 0;
  Vec coeffs;  // increasing powers, leading coefficient exactly 1
  double eval(double x) const;
};

HermitePoly hermite_polynomial(int m);

// All m real zeros, ascending, exactly closed under negation. Computed as
// eigenvalues of the symmetric tridiagonal Jacobi matrix (diagonal 0,
// off-diagonal sqrt(j)), then polished with one Newton step.
Vec hermite_zeros(int m);

// Gauss-Hermite rule for the standard normal weight phi0; weights sum to 1.
struct GaussHermite {
  Vec nodes;
  Vec weights;
};

GaussHermite gauss_hermite(int m);

}  // namespace lpb
