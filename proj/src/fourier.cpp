#include "fourier.hpp"

#include <cmath>
#include <numbers>

#include "quadrature.hpp"

namespace lpb {

namespace {

// Half-period panels keep at most ~pi of phase per Gauss-Legendre panel so
// the oscillatory factor stays easy to interpolate.
double tail_panel_length(double omega) {
  const double aw = std::max(std::abs(omega), 1e-9);
  return std::min(1.0, std::numbers::pi / aw);
}

}  // namespace

double ft_odd_kernel(double exponent, double omega) {
  require(std::isfinite(exponent) && exponent >= 1.0 - 1e-12,
          Status::InvalidArgument, "ft_odd_kernel: exponent must be >= 1");
  require(std::isfinite(omega), Status::InvalidArgument,
          "ft_odd_kernel: omega must be finite");
  if (omega == 0.0) return 0.0;

  const auto& gl = gauss_legendre(24);
  const double aw = std::abs(omega);

  // x in [0, 1] with x = u^2: the substitution turns the x^{e-1} endpoint
  // behavior into u^{2e-1}, which Gauss-Legendre resolves cleanly.
  auto head = [&](double u) {
    const double x = u * u;
    return 2.0 * std::pow(u, 2.0 * exponent - 1.0) * std_normal_pdf(x) *
           std::sin(omega * x);
  };
  const double head_len = 1.0 / std::max(4.0, std::ceil(2.0 * aw / std::numbers::pi));
  double s = gl_panels(head, 0.0, 1.0, head_len, gl);

  auto tail = [&](double x) {
    return std::pow(x, exponent - 1.0) * std_normal_pdf(x) * std::sin(omega * x);
  };
  s += gl_panels(tail, 1.0, 12.0, tail_panel_length(omega), gl);
  return 2.0 * s;
}

double ft_odd_kernel_scaled(double exponent, double omega) {
  return ft_odd_kernel(exponent, omega) * std::exp(0.5 * omega * omega);
}

FtZeroScan ft_zero_scan(double exponent, double omega_max, double step) {
  require(std::isfinite(omega_max) && omega_max >= 4.0, Status::InvalidArgument,
          "ft_zero_scan: omega_max must be >= 4");
  require(std::isfinite(step) && step > 0.0 && step <= 1e-2,
          Status::InvalidArgument, "ft_zero_scan: step must be in (0, 1e-2]");

  const int count = static_cast<int>(std::floor(omega_max / step + 1e-9));
  FtZeroScan result;
  result.min_abs = std::numeric_limits<double>::infinity();

  auto scaled = [&](double w) { return ft_odd_kernel_scaled(exponent, w); };

  double prev_w = step;
  double prev_g = scaled(prev_w);
  result.min_abs = std::abs(prev_g);
  if (prev_g == 0.0) result.zeros.push_back(prev_w);

  for (int i = 2; i <= count; ++i) {
    const double w = i * step;
    const double gv = scaled(w);
    result.min_abs = std::min(result.min_abs, std::abs(gv));
    if (gv == 0.0) {
      result.zeros.push_back(w);
    } else if (prev_g != 0.0 && ((gv < 0.0) != (prev_g < 0.0))) {
      double lo = prev_w, hi = w, glo = prev_g;
      for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = scaled(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      result.zeros.push_back(0.5 * (lo + hi));
    }
    prev_w = w;
    prev_g = gv;
  }
  return result;
}

}  // namespace lpb
