#include "loss.hpp"

#include <cmath>

namespace lpb {

LossSpec::LossSpec(double p_, double k_) : p(p_), k(k_) {
  require(std::isfinite(p) && std::isfinite(k) && p >= 1.0 && k >= 1.0,
          Status::InvalidArgument, "loss exponents must satisfy p, k >= 1");
}

double signed_pow(double t, double e) {
  if (t == 0.0) return 0.0;
  const double a = std::abs(t);
  double r;
  if (e == 0.0) r = 1.0;
  else if (e == 1.0) r = a;
  else if (e == 0.5) r = std::sqrt(a);
  else if (e == 0.25) r = std::sqrt(std::sqrt(a));
  else if (e == 2.0) r = a * a;
  else if (e == 3.0) r = a * a * a;
  else if (e == 1.5) r = a * std::sqrt(a);
  else if (e == 5.0) { const double s = a * a; r = s * s * a; }
  else r = std::pow(a, e);
  return t < 0.0 ? -r : r;
}

double loss_value(std::span<const double> x, const LossSpec& spec) {
  double s = 0.0;
  for (double xi : x) s += std::pow(std::abs(xi), spec.k);
  if (s == 0.0) return 0.0;
  if (spec.p == spec.k) return s;
  return std::exp(spec.p / spec.k * std::log(s));
}

void loss_gradient_into(const double* x, int n, const LossSpec& spec, double* out) {
  const double p = spec.p, k = spec.k;
  if (p == k) {
    const double e = p - 1.0;
    for (int i = 0; i < n; ++i) out[i] = p * signed_pow(x[i], e);
    return;
  }
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::pow(std::abs(x[i]), k);
  if (s < 1e-300) {
    for (int i = 0; i < n; ++i) out[i] = 0.0;
    return;
  }
  const double log_scale = (p - k) / k * std::log(s);
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0.0) {
      out[i] = 0.0;
      continue;
    }
    const double g = p * std::exp(log_scale + (k - 1.0) * std::log(std::abs(x[i])));
    out[i] = x[i] < 0.0 ? -g : g;
  }
}

Vec loss_gradient(std::span<const double> x, const LossSpec& spec) {
  Vec g(x.size());
  loss_gradient_into(x.data(), static_cast<int>(x.size()), spec, g.data());
  return g;
}

Mat loss_hessian(std::span<const double> x, const LossSpec& spec) {
  const int n = static_cast<int>(x.size());
  const double p = spec.p, k = spec.k;
  require(p > 1.0 && k > 1.0, Status::InvalidArgument,
          "loss_hessian requires p, k > 1");
  Mat h(n, n);
  double s = 0.0;
  for (double xi : x) s += std::pow(std::abs(xi), k);
  if (s < 1e-300) return h;

  const double s1 = std::exp((p / k - 1.0) * std::log(s));  // S^{p/k - 1}
  const double s2 = std::exp((p / k - 2.0) * std::log(s));  // S^{p/k - 2}
  for (int i = 0; i < n; ++i) {
    const double ai = std::abs(x[i]);
    const double di = signed_pow(x[i], k - 1.0);
    for (int j = i; j < n; ++j) {
      const double dj = signed_pow(x[j], k - 1.0);
      double v = p * (p - k) * s2 * di * dj;
      if (i == j) {
        const double curv = ai > 1e-300 ? std::pow(ai, k - 2.0) : 0.0;
        v += p * (k - 1.0) * s1 * curv;
      }
      h(i, j) = h(j, i) = v;
    }
  }
  return h;
}

}  // namespace lpb
