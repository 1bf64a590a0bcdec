#include "nodsbm/theory.hpp"

#include <cmath>

namespace nodsbm {

ExpectedSpectrum expected_spectrum(const SbmParams& params) {
  params.validate();
  const double n1 = params.n1, n2 = params.n2;
  const double l11 = params.ell(0, 0), l12 = params.ell(0, 1),
               l22 = params.ell(1, 1);
  ExpectedSpectrum s;
  if (params.is_symmetric()) {
    const double n = params.n();
    s.lambda_max_bar = (l11 + l12) * n / 2.0;
    s.lambda_minus_bar = (l11 - l12) * n / 2.0;
    s.w1 = s.w2 = 1.0 / std::sqrt(n);
    return s;
  }
  const double a = l11 * n1, d = l22 * n2;
  const double root = std::sqrt((a - d) * (a - d) + 4.0 * n1 * n2 * l12 * l12);
  s.lambda_max_bar = 0.5 * ((a + d) + root);
  s.lambda_minus_bar = 0.5 * ((a + d) - root);

  if (l12 == 0.0) {
    // decoupled blocks; the larger one carries the Perron vector
    if (a >= d) s.w1 = 1.0 / std::sqrt(n1);
    else s.w2 = 1.0 / std::sqrt(n2);
    return s;
  }
  // first block row: (a - lambda) w1 + l12 n2 w2 = 0, with
  // lambda - a = ((d - a) + root) / 2 evaluated without cancellation
  const double gap = (d - a) >= 0.0 ? 0.5 * ((d - a) + root)
                                    : 2.0 * n1 * n2 * l12 * l12 / ((a - d) + root);
  const double v1 = l12 * n2, v2 = gap;
  const double norm = std::sqrt(n1 * v1 * v1 + n2 * v2 * v2);
  s.w1 = v1 / norm;
  s.w2 = v2 / norm;
  return s;
}

Mat corrected_expected_matrix(const SbmParams& params) {
  params.validate();
  const int n = params.n();
  Mat m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = params.link(i, j);
  return m;
}

SpectrumBounds expected_adjacency_extremes(const SbmParams& params) {
  params.validate();
  // block-constant subspace: [[l11 (n1-1), l12 n2], [l12 n1, l22 (n2-1)]];
  // its complement carries -l11 (n1-1 times) and -l22 (n2-1 times)
  const double n1 = params.n1, n2 = params.n2;
  const double l11 = params.ell(0, 0), l12 = params.ell(0, 1),
               l22 = params.ell(1, 1);
  const double a = l11 * (n1 - 1), d = l22 * (n2 - 1);
  const double root = std::sqrt((a - d) * (a - d) + 4.0 * n1 * n2 * l12 * l12);
  SpectrumBounds b;
  b.lambda_max = 0.5 * ((a + d) + root);
  b.lambda_min = 0.5 * ((a + d) - root);
  if (params.n1 > 1) b.lambda_min = std::min(b.lambda_min, -l11);
  if (params.n2 > 1) b.lambda_min = std::min(b.lambda_min, -l22);
  return b;
}

DavisKahanReport davis_kahan_check(const Graph& graph, const SbmParams& params) {
  if (graph.n != params.n())
    throw LengthMismatch("davis_kahan_check: graph size differs from params");
  const Mat expected = expected_adjacency(params);
  const EigenPairs bar = sym_eig(expected);
  const Eigen::Index n = bar.size();

  DavisKahanReport r;
  r.delta = n > 1 ? bar.largest(0) - bar.largest(1) : 0.0;
  if (!(r.delta > 1e-12 * std::max(1.0, std::abs(bar.largest(0)))))
    throw ZeroGap("lambda_max of the expected adjacency is not simple");

  const Mat a = graph.dense();
  const EigenPairs sample = sym_eig(a);
  const Vec w = sample.largest_vector(0);
  const Vec w_bar = bar.largest_vector(0);
  r.lhs = std::min((w - w_bar).norm(), (w + w_bar).norm());
  r.deviation = spectral_norm(a - expected);
  r.rhs = std::pow(2.0, 1.5) * r.deviation / r.delta;
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  // rounding slack: lhs is computed from two eigensolves
  r.holds = r.lhs <= r.rhs + 1e-10;
  return r;
}

double concentration_ratio(const Graph& graph, const SbmParams& params) {
  if (graph.n < 2) throw std::invalid_argument("concentration_ratio: need n >= 2");
  if (graph.n != params.n())
    throw LengthMismatch("concentration_ratio: graph size differs from params");
  const double deviation = spectral_norm(graph.dense() - expected_adjacency(params));
  if (deviation == 0.0) return 0.0;
  return deviation / std::sqrt(max_expected_degree(params) * std::log(graph.n));
}

double alignment_check(const Equilibrium& equilibrium, const EigenPairs& spectrum,
                       const ModelParams& params) {
  const double norm = equilibrium.state.norm();
  if (equilibrium.state.lpNorm<Eigen::Infinity>() < kNeutralThreshold || norm == 0.0)
    throw NeutralState("alignment_check: equilibrium is the neutral state");
  const Vec w = params.gamma > 0.0 ? Vec(spectrum.largest_vector(0))
                                   : Vec(spectrum.vectors.col(0));
  return std::abs(equilibrium.state.dot(w)) / norm;
}

double alignment_check(const Equilibrium& equilibrium, const Graph& graph,
                       const ModelParams& params) {
  return alignment_check(equilibrium, sym_eig(graph.dense()), params);
}

double c_of_u(const Equilibrium& equilibrium, const EigenPairs& spectrum) {
  return equilibrium.state.dot(spectrum.largest_vector(0));
}

double c_of_u(const Equilibrium& equilibrium, const Graph& graph) {
  return c_of_u(equilibrium, sym_eig(graph.dense()));
}

}  // namespace nodsbm
