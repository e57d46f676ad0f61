#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lpb {

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Mat::apply(std::span<const double> x) const {
  require(static_cast<int>(x.size()) == cols_, Status::InvalidArgument,
          "matrix-vector dimension mismatch");
  Vec y(rows_, 0.0);
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Mat operator*(const Mat& a, const Mat& b) {
  require(a.cols() == b.rows(), Status::InvalidArgument,
          "matrix product dimension mismatch");
  Mat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
    }
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), Status::InvalidArgument,
          "matrix difference dimension mismatch");
  Mat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

double max_abs(const Mat& m) {
  double r = 0.0;
  for (double v : m.data()) r = std::max(r, std::abs(v));
  return r;
}

bool nearly_symmetric(const Mat& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(max_abs(m), 1e-30);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > rel_tol * scale) return false;
  return true;
}

SymEigen sym_eigen(Mat a) {
  const int n = a.rows();
  require(n >= 1 && a.cols() == n, Status::InvalidArgument,
          "sym_eigen: square matrix required");
  Mat v = Mat::identity(n);

  double fro2 = 0.0;
  for (double x : a.data()) fro2 += x * x;
  const double off_target = 1e-26 * std::max(fro2, 1e-300);

  auto off2 = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return s;
  };

  for (int sweep = 0; sweep < 100 && off2() > off_target; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = a(p, i) = c * aip - s * aiq;
          a(i, q) = a(q, i) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i) < a(j, j); });

  SymEigen e;
  e.values.resize(n);
  e.vectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    e.values[j] = a(order[j], order[j]);
    for (int i = 0; i < n; ++i) e.vectors(i, j) = v(i, order[j]);
  }
  return e;
}

LinearMap::LinearMap(Mat entries, double sym_rel_tol) : entries_(std::move(entries)) {
  require(entries_.rows() >= 1 && entries_.rows() == entries_.cols(),
          Status::InvalidArgument, "LinearMap: square matrix required");
  require(nearly_symmetric(entries_, sym_rel_tol), Status::NotSymmetric,
          "LinearMap: matrix is not symmetric within tolerance");
  eig_ = sym_eigen(entries_);
  if (eigen_floor() >= -1e-12) {
    const int n = dim();
    Mat s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) {
          const double lam = std::max(eig_.values[l], 0.0);
          acc += eig_.vectors(i, l) * std::sqrt(lam) * eig_.vectors(j, l);
        }
        s(i, j) = s(j, i) = acc;
      }
    sqrt_ = std::move(s);
  }
}

const Mat& LinearMap::psd_sqrt() const {
  require(sqrt_.has_value(), Status::NotPsd,
          "matrix square root requires a positive semidefinite matrix");
  return *sqrt_;
}

Mat LinearMap::inverse() const {
  const int n = dim();
  const double scale = std::max(std::abs(eigen_ceiling()), 1e-300);
  Mat inv(n, n);
  for (int l = 0; l < n; ++l)
    require(std::abs(eig_.values[l]) > 1e-14 * scale, Status::SingularCovariance,
            "matrix is numerically singular");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int l = 0; l < n; ++l)
        acc += eig_.vectors(i, l) * eig_.vectors(j, l) / eig_.values[l];
      inv(i, j) = inv(j, i) = acc;
    }
  return inv;
}

LinearMap linear_map_from(int n, const double* entries) {
  require(n >= 1 && entries != nullptr, Status::InvalidArgument,
          "matrix entries required");
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = entries[i * n + j];
  return LinearMap(std::move(m));
}

GaussianDensity::GaussianDensity(Vec mean, const LinearMap& cov)
    : mean_(std::move(mean)) {
  require(cov.dim() == static_cast<int>(mean_.size()), Status::InvalidArgument,
          "mean/covariance dimension mismatch");
  require(cov.eigen_floor() > 0.0, Status::SingularCovariance,
          "covariance must be positive definite");
  vectors_ = cov.eigen().vectors;
  const int n = cov.dim();
  inv_values_.resize(n);
  double log_det = 0.0;
  for (int i = 0; i < n; ++i) {
    inv_values_[i] = 1.0 / cov.eigen().values[i];
    log_det += std::log(cov.eigen().values[i]);
  }
  log_norm_ = -0.5 * log_det - n * kLogSqrt2Pi;
}

double GaussianDensity::log_density(std::span<const double> x) const {
  const int n = dim();
  double q = 0.0;
  for (int l = 0; l < n; ++l) {
    double t = 0.0;
    for (int i = 0; i < n; ++i) t += vectors_(i, l) * (x[i] - mean_[i]);
    q += t * t * inv_values_[l];
  }
  return log_norm_ - 0.5 * q;
}

double GaussianDensity::density(std::span<const double> x) const {
  return std::exp(log_density(x));
}

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_normal_log_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

double std_normal_pdf_nd(std::span<const double> x) {
  double q = 0.0;
  for (double v : x) q += v * v;
  return std::exp(-0.5 * q - x.size() * kLogSqrt2Pi);
}

}  // namespace lpb
