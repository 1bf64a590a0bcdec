#pragma once

#include <Eigen/SparseCore>

#include <cstdint>
#include <iosfwd>

#include "nodsbm/core.hpp"

namespace nodsbm {

using SparseMat = Eigen::SparseMatrix<double>;

/// Two-community stochastic block model. Agents 0..n1-1 carry label 1, the
/// remaining n2 agents label 2.
struct SbmParams {
  int n1 = 1;
  int n2 = 1;
  Eigen::Matrix2d ell = Eigen::Matrix2d::Zero();

  static SbmParams make(int n1, int n2, double ell11, double ell12,
                        double ell22);
  /// Symmetric SBM with n/2 agents per community.
  static SbmParams symmetric(int n, double ell_s, double ell_d);

  int n() const { return n1 + n2; }
  bool is_symmetric() const { return n1 == n2 && ell(0, 0) == ell(1, 1); }
  int community(int i) const { return i < n1 ? 1 : 2; }
  double link(int i, int j) const {
    return ell(community(i) - 1, community(j) - 1);
  }

  /// Throws std::invalid_argument on sizes < 1, probabilities outside
  /// [0, 1] or an asymmetric ell.
  void validate() const;
};

/// Simple undirected graph with its ground-truth community split.
struct Graph {
  int n = 0;
  int n1 = 0;
  SparseMat adjacency;

  Mat dense() const { return Mat(adjacency); }
  Labels labels() const;
  long edge_count() const { return adjacency.nonZeros() / 2; }
};

/// Builds a graph from 0-indexed undirected edges; rejects self-loops and
/// out-of-range endpoints. Duplicate edges collapse.
Graph graph_from_edges(int n, int n1,
                       const std::vector<std::pair<int, int>>& edges);

/// Each unordered pair {i, j} is visited in lexicographic order; pair p uses
/// draw p of a counter-based stream keyed by `seed`.
Graph sample_sbm(const SbmParams& params, std::uint64_t seed);

/// E{A}: ell by block off the diagonal, zero on the diagonal.
Mat expected_adjacency(const SbmParams& params);

/// Delta = max_c ell_cc (n_c - 1) + ell_cc' n_c'.
double max_expected_degree(const SbmParams& params);

bool is_connected(const Graph& graph);

struct AssumptionReport {
  bool connectivity = false;   // every ell_ij >= c_conn log n / n
  bool dissortativity = false; // ell_d >= c_dis sqrt(ell_s log n); vacuous unless assortative SSBM
  bool applies_dis = false;    // whether the second condition was in force
};

AssumptionReport check_assumptions(const SbmParams& params, double c_conn = 1.0,
                                   double c_dis = 1.0);

/// `# n=<n> n1=<n1>` followed by one `i j` line per edge, i < j.
void write_edge_list(std::ostream& out, const Graph& graph);
Graph read_edge_list(std::istream& in);

}  // namespace nodsbm
