#include "prior.hpp"

#include <algorithm>
#include <cmath>

#include "fourier.hpp"
#include "hermite.hpp"

namespace lpb {

namespace {

constexpr int kMaxDim = 4;
constexpr double kOmegaScanMax = 8.0;
constexpr double kOmegaScanStep = 1e-3;

void check_probabilities(const Vec& probs) {
  double total = 0.0;
  for (double w : probs) {
    require(std::isfinite(w) && w >= 0.0, Status::InvalidArgument,
            "probability weights must be nonnegative");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-10, Status::InvalidArgument,
          "probability weights must sum to 1 within 1e-10");
}

double cosine_closed_form_norm(double a, double rho, double theta, double omega) {
  const double c = (1.0 - a) / a;
  const double damp = std::exp(-omega * omega / (2.0 * c * a));
  return std::sqrt(2.0 * std::numbers::pi / c) * (1.0 + rho * damp * std::cos(theta));
}

}  // namespace

Prior Prior::gaussian(Vec mean, Mat cov) {
  const int n = static_cast<int>(mean.size());
  require(n >= 1 && n <= kMaxDim, Status::DimensionTooLarge,
          "gaussian prior supports dimensions 1 through 4");
  require(cov.rows() == n && cov.cols() == n, Status::InvalidArgument,
          "mean/covariance dimension mismatch");
  LinearMap map(std::move(cov));
  require(map.eigen_floor() > 0.0, Status::SingularCovariance,
          "gaussian prior covariance must be positive definite");
  GaussianDensity dens(mean, map);
  return Prior(GaussianPrior{std::move(mean), std::move(map), std::move(dens)});
}

Prior Prior::gaussian_for_matrix(const LinearMap& a) {
  const int n = a.dim();
  require(n <= kMaxDim, Status::DimensionTooLarge,
          "gaussian prior supports dimensions 1 through 4");
  require(a.eigen_floor() > 0.0, Status::NotPd,
          "linear map must be positive definite");
  require(a.eigen_ceiling() < 1.0 - 1e-12, Status::ImproperPrior,
          "no proper prior exists: the linear map has an eigenvalue >= 1");
  // covariance (I - A)^{-1} A = V diag(lambda/(1-lambda)) V'
  const SymEigen& e = a.eigen();
  Mat cov(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int l = 0; l < n; ++l) {
        const double lam = e.values[l];
        acc += e.vectors(i, l) * (lam / (1.0 - lam)) * e.vectors(j, l);
      }
      cov(i, j) = cov(j, i) = acc;
    }
  return gaussian(Vec(n, 0.0), std::move(cov));
}

Prior Prior::atomic(int n, Vec atoms, Vec probs) {
  require(n >= 1 && n <= kMaxDim, Status::DimensionTooLarge,
          "atomic prior supports dimensions 1 through 4");
  const int count = static_cast<int>(probs.size());
  require(count >= 1, Status::InvalidArgument, "atomic prior needs atoms");
  require(atoms.size() == static_cast<size_t>(count) * n, Status::InvalidArgument,
          "atom coordinate buffer has the wrong size");
  for (double v : atoms)
    require(std::isfinite(v), Status::InvalidArgument, "atom coordinates must be finite");
  check_probabilities(probs);
  return Prior(AtomicPrior{n, count, std::move(atoms), std::move(probs)});
}

Prior Prior::grid(std::vector<Vec> axes, Vec weights) {
  const int n = static_cast<int>(axes.size());
  require(n >= 1 && n <= 2, Status::DimensionTooLarge,
          "grid prior supports dimensions 1 and 2");
  size_t total = 1;
  for (const Vec& axis : axes) {
    require(!axis.empty(), Status::InvalidArgument, "grid axis must be nonempty");
    for (double v : axis)
      require(std::isfinite(v), Status::InvalidArgument, "grid nodes must be finite");
    total *= axis.size();
  }
  require(weights.size() == total, Status::InvalidArgument,
          "grid weight count does not match the node count");
  check_probabilities(weights);
  return Prior(GridPrior{std::move(axes), std::move(weights)});
}

Prior Prior::cosine(double a, double rho, double theta, double omega) {
  require(std::isfinite(a) && a > 0.0 && a < 1.0, Status::InvalidArgument,
          "cosine prior requires 0 < a < 1");
  require(std::isfinite(rho) && std::abs(rho) <= 1.0, Status::InvalidArgument,
          "cosine prior requires |rho| <= 1");
  require(std::isfinite(theta) && std::isfinite(omega), Status::InvalidArgument,
          "cosine prior parameters must be finite");

  CosinePrior p;
  p.a = a;
  p.rho = rho;
  p.theta = theta;
  p.omega = omega;
  p.sigma2 = a / (1.0 - a);
  p.norm = cosine_closed_form_norm(a, rho, theta, omega);
  require(p.norm > 1e-12, Status::Normalization,
          "cosine prior degenerates to the zero function");

  // Closed-form constants are always cross-checked against quadrature; a
  // mismatch beyond 1e-8 is a hard error.
  const double sigma = std::sqrt(p.sigma2);
  const double c = (1.0 - a) / a;
  const auto& gl = gauss_legendre(24);
  const double radius = 10.0 * std::max(1.0, sigma);
  auto unnormalized = [&](double x) {
    return std::exp(-0.5 * c * x * x) *
           (1.0 + rho * std::cos(omega * x / std::sqrt(a) + theta));
  };
  const double quad = gl_panels(unnormalized, -radius, radius,
                                0.25 * std::min(1.0, sigma), gl);
  require(std::abs(quad - p.norm) <= 1e-8 * std::max(1.0, p.norm),
          Status::Normalization,
          "cosine prior normalization mismatch between closed form and quadrature");
  return Prior(CosinePrior{p});
}

int Prior::dim() const {
  if (const auto* g = get_if<GaussianPrior>()) return static_cast<int>(g->mean.size());
  if (const auto* g = get_if<GridPrior>()) return static_cast<int>(g->axes.size());
  if (const auto* a = get_if<AtomicPrior>()) return a->n;
  return 1;
}

bool Prior::is_discrete() const {
  return std::holds_alternative<GridPrior>(v_) || std::holds_alternative<AtomicPrior>(v_);
}

double cosine_density(const CosinePrior& prior, double x) {
  const double c = (1.0 - prior.a) / prior.a;
  return std::exp(-0.5 * c * x * x) *
         (1.0 + prior.rho * std::cos(prior.omega * x / std::sqrt(prior.a) + prior.theta)) /
         prior.norm;
}

double Prior::density(std::span<const double> x) const {
  require(static_cast<int>(x.size()) == dim(), Status::InvalidArgument,
          "density: dimension mismatch");
  if (const auto* g = get_if<GaussianPrior>()) return g->dens.density(x);
  if (const auto* c = get_if<CosinePrior>()) return cosine_density(*c, x[0]);
  fail(Status::InvalidArgument, "density is undefined for discrete priors");
}

double Prior::log_density(std::span<const double> x) const {
  if (const auto* g = get_if<GaussianPrior>()) return g->dens.log_density(x);
  return std::log(density(x));
}

void Prior::discrete_support(Vec& points, Vec& masses) const {
  if (const auto* a = get_if<AtomicPrior>()) {
    points = a->atoms;
    masses = a->probs;
    return;
  }
  const auto* g = get_if<GridPrior>();
  require(g != nullptr, Status::InvalidArgument,
          "discrete_support: prior is not discrete");
  const int n = static_cast<int>(g->axes.size());
  const size_t count = g->weights.size();
  points.resize(count * n);
  masses = g->weights;
  if (n == 1) {
    std::copy(g->axes[0].begin(), g->axes[0].end(), points.begin());
    return;
  }
  const size_t s1 = g->axes[1].size();
  for (size_t i0 = 0; i0 < g->axes[0].size(); ++i0)
    for (size_t i1 = 0; i1 < s1; ++i1) {
      const size_t j = i0 * s1 + i1;
      points[2 * j] = g->axes[0][i0];
      points[2 * j + 1] = g->axes[1][i1];
    }
}

double Prior::scale() const {
  if (const auto* g = get_if<GaussianPrior>())
    return std::sqrt(g->cov.eigen_ceiling());
  if (const auto* c = get_if<CosinePrior>()) return std::sqrt(c->sigma2);
  return 1.0;
}

Vec omega_for_p(double p) {
  require(std::isfinite(p), Status::InvalidArgument, "omega_for_p: p must be finite");
  require(p > 2.0, Status::NoZeroFound,
          "omega_for_p is defined for p > 2 only (He_1 leaves only the "
          "degenerate Gaussian frequency 0)");

  const double rounded = std::round(p);
  const bool even_integer =
      std::abs(p - rounded) <= 1e-12 && static_cast<long long>(rounded) % 2 == 0;
  if (even_integer) return hermite_zeros(static_cast<int>(rounded) - 1);

  const FtZeroScan scan = ft_zero_scan(p, kOmegaScanMax, kOmegaScanStep);
  Vec positive;
  for (double z : scan.zeros) {
    require(std::abs(ft_odd_kernel(p, z)) <= 1e-9, Status::NoZeroFound,
            "kernel transform zero failed to polish below 1e-9");
    positive.push_back(z);
  }
  require(!positive.empty(), Status::NoZeroFound,
          "no kernel transform sign change detected on (0, 8]");

  Vec all;
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) all.push_back(-*it);
  all.push_back(0.0);
  for (double z : positive) all.push_back(z);
  return all;
}

void sample_into(const Prior& prior, Rng& rng, double* x) {
  if (const auto* g = prior.get_if<GaussianPrior>()) {
    const int n = static_cast<int>(g->mean.size());
    const Mat& s = g->cov.psd_sqrt();
    double z[kMaxDim];
    for (int i = 0; i < n; ++i) z[i] = rng.normal();
    for (int i = 0; i < n; ++i) {
      double acc = g->mean[i];
      for (int j = 0; j < n; ++j) acc += s(i, j) * z[j];
      x[i] = acc;
    }
    return;
  }
  if (const auto* c = prior.get_if<CosinePrior>()) {
    const double sigma = std::sqrt(c->sigma2);
    const double b = c->omega / std::sqrt(c->a);
    for (;;) {  // rejection against the Gaussian envelope
      const double cand = sigma * rng.normal();
      const double accept = 0.5 * (1.0 + c->rho * std::cos(b * cand + c->theta));
      if (rng.uniform() < accept) {
        x[0] = cand;
        return;
      }
    }
  }
  // Discrete variants: inverse CDF over the cumulative weights.
  Vec points, masses;
  prior.discrete_support(points, masses);
  const int n = prior.dim();
  const double u = rng.uniform();
  double cum = 0.0;
  size_t pick = masses.size() - 1;
  for (size_t j = 0; j < masses.size(); ++j) {
    cum += masses[j];
    if (u < cum) {
      pick = j;
      break;
    }
  }
  for (int i = 0; i < n; ++i) x[i] = points[pick * n + i];
}

Vec sample_prior(const Prior& prior, int count, uint64_t seed) {
  require(count >= 1, Status::InvalidArgument, "sample count must be >= 1");
  const int n = prior.dim();
  Vec out(static_cast<size_t>(count) * n);
  Rng rng(seed);
  for (int s = 0; s < count; ++s) sample_into(prior, rng, out.data() + static_cast<size_t>(s) * n);
  return out;
}

double prior_total_mass(const Prior& prior, const QuadratureConfig& cfg) {
  cfg.validate();
  if (prior.is_discrete()) {
    Vec points, masses;
    prior.discrete_support(points, masses);
    double total = 0.0;
    for (double m : masses) total += m;
    return total;
  }
  const int n = prior.dim();
  const double half = cfg.half_width * std::max(1.0, prior.scale());
  Vec center(n, 0.0);
  if (const auto* g = prior.get_if<GaussianPrior>()) center = g->mean;
  std::vector<Grid1D> grids(n);
  for (int d = 0; d < n; ++d)
    grids[d] = Grid1D{center[d], half, effective_nodes(n, cfg.nodes_per_dim)};
  double total = 0.0;
  for_each_tensor_node(grids, [&](std::span<const double> x, double vol) {
    total += prior.density(x) * vol;
  });
  return total;
}

}  // namespace lpb
