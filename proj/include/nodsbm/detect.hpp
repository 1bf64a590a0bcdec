#pragma once

#include <optional>
#include <string_view>

#include "nodsbm/core.hpp"
#include "nodsbm/dynamics.hpp"

namespace nodsbm {

enum class DetectionMethod { SingleEquilibrium, MultiEquilibria, CovarianceSpectral };

std::string_view to_string(DetectionMethod method);

struct CommunityEstimate {
  Labels labels;
  DetectionMethod method = DetectionMethod::SingleEquilibrium;
  bool degenerate = false;

  // diagnostics; which ones are set depends on the method
  std::optional<std::array<double, 2>> centers;
  std::optional<Vec> top_eigenvalues;  // descending, at most three
  std::optional<double> eigen_gap;     // second minus third largest
  std::optional<double> sigma_min;     // smallest singular value of X
};

/// Input-equilibrium pairs: column k of X is the equilibrium reached under
/// input column k of B. `params` must be the model that produced them.
struct PairSet {
  Mat X;
  Mat B;
  ModelParams params;

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index m() const { return X.cols(); }
};

/// Two-means on the entries of a single nonzero equilibrium.
CommunityEstimate detect_single(const Equilibrium& equilibrium);

/// Column k:  (S^-1((d x_k - b_k) / u) - alpha x_k) / gamma, which equals
/// A x_k at an exact equilibrium. DomainError carries the offending (i, k).
Mat invert_pairs(const PairSet& pairs, RangePolicy policy = RangePolicy::Strict);

/// Symmetrized minimum-norm solution of A X = Y.
Mat estimate_adjacency(const Mat& x, const Mat& y);

/// Fixed-point inversion, adjacency estimate, then two-means on the
/// eigenvector of the second largest eigenvalue of the estimate.
CommunityEstimate detect_multi(const PairSet& pairs,
                               RangePolicy policy = RangePolicy::Strict);

/// Spectral clustering on the second eigenvector of the sample covariance
/// (1/m) sum (x_k - mean)(x_k - mean)^T.
CommunityEstimate detect_covariance_baseline(const Mat& x);

/// Fraction of agreeing labels, maximized over the global label flip.
double accuracy(const Labels& truth, const Labels& estimate);

}  // namespace nodsbm
