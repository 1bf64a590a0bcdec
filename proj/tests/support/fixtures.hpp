#pragma once

#include <random>

#include "nodsbm/detect.hpp"
#include "nodsbm/dynamics.hpp"
#include "nodsbm/graphgen.hpp"
#include "nodsbm/spectral.hpp"

namespace fixtures {

using namespace nodsbm;

// m equilibria under i.i.d. standard Gaussian inputs, each integrated from
// x0 = 0 and Newton-polished.
inline PairSet gaussian_pairs(const Graph& g, const ModelParams& p, int m,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  PairSet pairs{Mat(g.n, m), Mat(g.n, m), p};
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < g.n; ++i) pairs.B(i, k) = normal(rng);
    const auto eq = integrate_to_equilibrium(Vec::Zero(g.n), p, g, pairs.B.col(k));
    pairs.X.col(k) = eq.state;
  }
  return pairs;
}

// Inputs that make columns of X exact equilibria of the (possibly weighted)
// symmetric matrix `a`: b = d x - u S(alpha x + gamma a x).
inline Mat inputs_for(const Mat& a, const Mat& x, const ModelParams& p) {
  const Mat z = p.alpha * x + p.gamma * a * x;
  return p.d * x - p.u * z.unaryExpr([&](double v) { return saturate(p.saturation, v); });
}

inline Labels block_labels(int n, int n1) {
  Labels l(n);
  for (int i = 0; i < n; ++i) l[i] = i < n1 ? 1 : 2;
  return l;
}

// Fixed connected graph for the equilibrium alignment checks.
struct AlignmentSetup {
  Graph graph;
  EigenPairs spectrum;
  ModelParams params;
  double u1;
};

inline AlignmentSetup alignment_setup() {
  const auto sbm = SbmParams::symmetric(50, 0.3, 0.1);
  std::uint64_t seed = 7;
  Graph g = sample_sbm(sbm, seed);
  while (!is_connected(g)) g = sample_sbm(sbm, ++seed);
  AlignmentSetup s{g, sym_eig(g.dense()), {}, 0.0};
  s.params.gamma = 1.0 / max_expected_degree(sbm);
  s.u1 = bifurcation_threshold(s.spectrum.values(0), s.spectrum.largest(), s.params);
  return s;
}

inline Equilibrium equilibrium_at(const AlignmentSetup& s, double offset, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  Vec x0(s.graph.n);
  for (auto& v : x0) v = u(rng);
  ModelParams p = s.params;
  p.u = s.u1 + offset;
  return integrate_to_equilibrium(x0, p, s.graph, Vec::Zero(s.graph.n));
}

}  // namespace fixtures
