#include "nodsbm/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <limits>
#include <numeric>

namespace nodsbm {

void require_symmetric(const Mat& m) {
  if (m.rows() != m.cols()) throw NotSymmetric("matrix is not square");
  if (m.size() == 0) return;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw NotSymmetric("matrix is not symmetric");
}

void canonicalize_sign(Eigen::Ref<Vec> v) {
  if (v.size() == 0) return;
  const double peak = v.cwiseAbs().maxCoeff();
  // near-ties resolve to the lowest index
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= peak * (1.0 - 1e-9)) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

EigenPairs sym_eig(const Mat& m) {
  require_symmetric(m);
  if (m.rows() == 0) throw std::invalid_argument("sym_eig: empty matrix");
  const Mat sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw Error("sym_eig: eigensolver did not converge");
  EigenPairs out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j)
    canonicalize_sign(out.vectors.col(j));
  return out;
}

Vec sym_eigenvalues(const Mat& m) {
  require_symmetric(m);
  if (m.rows() == 0) throw std::invalid_argument("sym_eigenvalues: empty matrix");
  const Mat sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error("sym_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && (m - m.transpose()).cwiseAbs().maxCoeff() == 0.0)
    return sym_eigenvalues(m).cwiseAbs().maxCoeff();
  return singular_values(m)(0);
}

Vec singular_values(const Mat& x) {
  if (x.size() == 0) return Vec();
  Eigen::BDCSVD<Mat> svd(x);
  return svd.singularValues();
}

Mat pseudo_inverse(const Mat& x) {
  if (x.size() == 0) return Mat::Zero(x.cols(), x.rows());
  Eigen::BDCSVD<Mat> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  const double tau = static_cast<double>(std::max(x.rows(), x.cols())) *
                     std::numeric_limits<double>::epsilon() * s(0);
  Vec inv = Vec::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tau && s(i) > 0.0) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Mat least_squares_min_norm(const Mat& y, const Mat& x) {
  if (y.cols() != x.cols())
    throw LengthMismatch("least squares: Y and X need the same column count");
  if (x.cols() < 1) throw std::invalid_argument("least squares: need m >= 1");
  return y * pseudo_inverse(x);
}

KMeans1d kmeans_two_1d(const Vec& values) {
  const auto n = values.size();
  if (n < 2) throw std::invalid_argument("kmeans_two_1d: need n >= 2");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return values(a) < values(b); });

  KMeans1d out;
  out.labels.assign(n, 1);
  if (values(order.front()) == values(order.back())) {
    out.degenerate = true;
    out.centers = {values(0), values(0)};
    return out;
  }

  // centre on the mean so the prefix-sum SSE formula stays well conditioned
  const double mean = values.mean();
  std::vector<double> s1(n + 1, 0.0), s2(n + 1, 0.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double v = values(order[k]) - mean;
    s1[k + 1] = s1[k] + v;
    s2[k + 1] = s2[k] + v * v;
  }
  auto sse = [&](Eigen::Index lo, Eigen::Index hi) {  // [lo, hi)
    const double cnt = static_cast<double>(hi - lo);
    const double s = s1[hi] - s1[lo];
    return std::max(0.0, (s2[hi] - s2[lo]) - s * s / cnt);
  };

  Eigen::Index best_split = 1;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 1; k < n; ++k) {
    // splits inside a run of equal values are not partitions of the line
    if (values(order[k]) == values(order[k - 1])) continue;
    const double cost = sse(0, k) + sse(k, n);
    if (cost < best) {
      best = cost;
      best_split = k;
    }
  }
  for (Eigen::Index k = best_split; k < n; ++k) out.labels[order[k]] = 2;
  out.within_ss = best;
  out.centers = {mean + s1[best_split] / static_cast<double>(best_split),
                 mean + (s1[n] - s1[best_split]) /
                            static_cast<double>(n - best_split)};
  return out;
}

}  // namespace nodsbm
