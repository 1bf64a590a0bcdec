#include "nodsbm/detect.hpp"

#include <string>

#include "nodsbm/spectral.hpp"

namespace nodsbm {

std::string_view to_string(DetectionMethod method) {
  switch (method) {
    case DetectionMethod::SingleEquilibrium: return "single";
    case DetectionMethod::MultiEquilibria: return "multi";
    case DetectionMethod::CovarianceSpectral: return "covariance";
  }
  return "unknown";
}

namespace {

CommunityEstimate cluster_vector(const Vec& v, DetectionMethod method) {
  const KMeans1d km = kmeans_two_1d(v);
  CommunityEstimate est;
  est.labels = km.labels;
  est.method = method;
  est.degenerate = km.degenerate;
  est.centers = km.centers;
  return est;
}

// Eigenvector of the second largest eigenvalue, plus spectrum diagnostics.
CommunityEstimate second_eigenvector_split(const Mat& m, DetectionMethod method) {
  const EigenPairs eig = sym_eig(m);
  const Eigen::Index n = eig.size();
  const Eigen::Index top = std::min<Eigen::Index>(3, n);
  Vec values(top);
  for (Eigen::Index k = 0; k < top; ++k) values(k) = eig.largest(k);

  CommunityEstimate est = cluster_vector(eig.largest_vector(1), method);
  est.top_eigenvalues = values;
  if (top >= 3) est.eigen_gap = values(1) - values(2);
  return est;
}

}  // namespace

CommunityEstimate detect_single(const Equilibrium& equilibrium) {
  if (!equilibrium.converged)
    throw std::invalid_argument("detect_single: equilibrium did not converge");
  if (equilibrium.state.size() < 2)
    throw std::invalid_argument("detect_single: need at least two agents");
  if (equilibrium.state.lpNorm<Eigen::Infinity>() < kNeutralThreshold)
    throw NeutralState("equilibrium is the neutral state");
  return cluster_vector(equilibrium.state, DetectionMethod::SingleEquilibrium);
}

Mat invert_pairs(const PairSet& pairs, RangePolicy policy) {
  const auto& p = pairs.params;
  p.validate();
  if (pairs.B.rows() != pairs.X.rows() || pairs.B.cols() != pairs.X.cols())
    throw LengthMismatch("invert_pairs: X and B shapes differ");
  if (!(p.u > 0.0)) throw std::invalid_argument("invert_pairs: need u > 0");

  Mat y(pairs.n(), pairs.m());
  for (Eigen::Index k = 0; k < pairs.m(); ++k) {
    for (Eigen::Index i = 0; i < pairs.n(); ++i) {
      const double x = pairs.X(i, k);
      const double arg = (p.d * x - pairs.B(i, k)) / p.u;
      double s_inv;
      try {
        s_inv = saturate_inverse(p.saturation, arg, policy);
      } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " at row " + std::to_string(i) +
                              ", column " + std::to_string(k),
                          static_cast<long>(i), static_cast<long>(k));
      }
      y(i, k) = (s_inv - p.alpha * x) / p.gamma;
    }
  }
  return y;
}

Mat estimate_adjacency(const Mat& x, const Mat& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw LengthMismatch("estimate_adjacency: X and Y shapes differ");
  const Mat a_tilde = least_squares_min_norm(y, x);
  Mat a_hat = 0.5 * (a_tilde + a_tilde.transpose());
  return a_hat;
}

CommunityEstimate detect_multi(const PairSet& pairs, RangePolicy policy) {
  if (pairs.m() < 1) throw std::invalid_argument("detect_multi: need m >= 1");
  if (pairs.n() < 2) throw std::invalid_argument("detect_multi: need n >= 2");
  const Mat y = invert_pairs(pairs, policy);
  const Mat a_hat = estimate_adjacency(pairs.X, y);
  CommunityEstimate est =
      second_eigenvector_split(a_hat, DetectionMethod::MultiEquilibria);
  const Vec sv = singular_values(pairs.X);
  est.sigma_min = sv(sv.size() - 1);
  return est;
}

CommunityEstimate detect_covariance_baseline(const Mat& x) {
  if (x.cols() < 2) throw std::invalid_argument("covariance baseline: need m >= 2");
  if (x.rows() < 2) throw std::invalid_argument("covariance baseline: need n >= 2");
  const Vec mean = x.rowwise().mean();
  const Mat centered = x.colwise() - mean;
  const Mat cov = centered * centered.transpose() / static_cast<double>(x.cols());
  if (cov.cwiseAbs().maxCoeff() == 0.0) {
    CommunityEstimate est;
    est.labels.assign(x.rows(), 1);
    est.method = DetectionMethod::CovarianceSpectral;
    est.degenerate = true;
    return est;
  }
  return second_eigenvector_split(cov, DetectionMethod::CovarianceSpectral);
}

double accuracy(const Labels& truth, const Labels& estimate) {
  if (truth.size() != estimate.size())
    throw LengthMismatch("accuracy: label vectors differ in length");
  if (truth.empty()) throw std::invalid_argument("accuracy: empty labels");
  std::size_t same = 0, flipped = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] != 1 && truth[i] != 2)
      throw std::invalid_argument("accuracy: truth labels must be 1 or 2");
    if (estimate[i] != 1 && estimate[i] != 2)
      throw std::invalid_argument("accuracy: estimate labels must be 1 or 2");
    same += truth[i] == estimate[i];
    flipped += truth[i] == 3 - estimate[i];
  }
  return static_cast<double>(std::max(same, flipped)) /
         static_cast<double>(truth.size());
}

}  // namespace nodsbm
