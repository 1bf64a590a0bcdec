#pragma once

#include <array>

#include "nodsbm/core.hpp"

namespace nodsbm {

/// Eigen-decomposition of a symmetric matrix. Values ascend; column j of
/// `vectors` is the unit eigenvector for values(j), signed so its entry of
/// largest magnitude is positive (first such entry on ties).
struct EigenPairs {
  Vec values;
  Mat vectors;

  Eigen::Index size() const { return values.size(); }
  /// k-th largest (k = 0 is the maximum).
  double largest(Eigen::Index k = 0) const { return values(size() - 1 - k); }
  auto largest_vector(Eigen::Index k = 0) const { return vectors.col(size() - 1 - k); }
};

/// Throws NotSymmetric if max|M - M^T| exceeds 1e-12 max(1, max|M|).
void require_symmetric(const Mat& m);

EigenPairs sym_eig(const Mat& m);
/// Ascending eigenvalues only.
Vec sym_eigenvalues(const Mat& m);
/// Largest singular value.
double spectral_norm(const Mat& m);

/// Flips `v` so its entry of largest magnitude is positive.
void canonicalize_sign(Eigen::Ref<Vec> v);

/// Moore-Penrose pseudo-inverse via SVD; singular values below
/// max(rows, cols) * eps * sigma_max are dropped.
Mat pseudo_inverse(const Mat& x);
/// Descending singular values.
Vec singular_values(const Mat& x);

/// Y X^+ : the minimum-norm solution of  A X = Y.
Mat least_squares_min_norm(const Mat& y, const Mat& x);

struct KMeans1d {
  Labels labels;                // 1 = cluster holding the smallest value
  std::array<double, 2> centers{};
  double within_ss = 0.0;
  bool degenerate = false;      // all values equal; every label is 1
};

/// Globally optimal two-means on the real line by scanning every split of
/// the sorted values. The first minimal split wins ties.
KMeans1d kmeans_two_1d(const Vec& values);

}  // namespace nodsbm
