#pragma once

#include "linalg.hpp"

namespace lpb {

// g(w) with F{ sign(x)|x|^{e-1} phi0(x) }(w) = -i g(w) under the convention
// F{h}(w) = integral h(x) exp(-i w x) dx; equivalently
// g(w) = 2 integral_0^inf x^{e-1} phi0(x) sin(w x) dx.
double ft_odd_kernel(double exponent, double omega);

// g(w) * exp(w^2 / 2): removes the Gaussian envelope so magnitudes stay
// comparable across the scan window (for even integer e this equals a
// constant times He_{e-1}(w) up to sign).
double ft_odd_kernel_scaled(double exponent, double omega);

struct FtZeroScan {
  double min_abs = 0.0;  // minimum of the envelope-normalized |g| on the grid
  Vec zeros;             // sign-change locations, bisection-polished
};

// Scans [step, omega_max]; requires omega_max >= 4 and 0 < step <= 1e-2.
FtZeroScan ft_zero_scan(double exponent, double omega_max, double step);

}  // namespace lpb
