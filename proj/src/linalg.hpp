#pragma once

#include <optional>
#include <span>
#include <vector>

#include "errors.hpp"

namespace lpb {

using Vec = std::vector<double>;

class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  const Vec& data() const { return a_; }
  Vec& data() { return a_; }

  Mat transposed() const;
  Vec apply(std::span<const double> x) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  Vec a_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
double max_abs(const Mat& m);

struct SymEigen {
  Vec values;   // ascending
  Mat vectors;  // column i pairs with values[i]
};

// Cyclic Jacobi rotations; adequate for the small dense matrices used here.
SymEigen sym_eigen(Mat a);

bool nearly_symmetric(const Mat& m, double rel_tol = 1e-12);

// Symmetric matrix with cached spectral decomposition and, when the matrix is
// positive semidefinite, its unique PSD square root.
class LinearMap {
 public:
  explicit LinearMap(Mat entries, double sym_rel_tol = 1e-12);

  int dim() const { return entries_.rows(); }
  const Mat& entries() const { return entries_; }
  const SymEigen& eigen() const { return eig_; }
  double eigen_floor() const { return eig_.values.front(); }
  double eigen_ceiling() const { return eig_.values.back(); }

  const Mat& psd_sqrt() const;  // throws NotPsd when eigen_floor < -1e-12
  Mat inverse() const;          // throws SingularCovariance near singularity
  Vec apply(std::span<const double> x) const { return entries_.apply(x); }

 private:
  Mat entries_;
  SymEigen eig_;
  std::optional<Mat> sqrt_;
};

LinearMap linear_map_from(int n, const double* entries);

// N(mean, cov) with cov symmetric positive definite.
class GaussianDensity {
 public:
  GaussianDensity(Vec mean, const LinearMap& cov);

  int dim() const { return static_cast<int>(mean_.size()); }
  const Vec& mean() const { return mean_; }
  double log_density(std::span<const double> x) const;
  double density(std::span<const double> x) const;

 private:
  Vec mean_;
  Mat vectors_;
  Vec inv_values_;
  double log_norm_;
};

inline constexpr double kInvSqrt2Pi = 0.3989422804014327;
inline constexpr double kLogSqrt2Pi = 0.9189385332046727;

double std_normal_pdf(double x);
double std_normal_log_pdf(double x);
double std_normal_pdf_nd(std::span<const double> x);

}  // namespace lpb
