#include "nodsbm/graphgen.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

#include "nodsbm/rng.hpp"

namespace nodsbm {

SbmParams SbmParams::make(int n1, int n2, double ell11, double ell12,
                          double ell22) {
  SbmParams p;
  p.n1 = n1;
  p.n2 = n2;
  p.ell << ell11, ell12, ell12, ell22;
  p.validate();
  return p;
}

SbmParams SbmParams::symmetric(int n, double ell_s, double ell_d) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("symmetric SBM needs an even n >= 2");
  return make(n / 2, n / 2, ell_s, ell_d, ell_s);
}

void SbmParams::validate() const {
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("community sizes must be positive");
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      if (!(ell(r, c) >= 0.0 && ell(r, c) <= 1.0))
        throw std::invalid_argument("link probabilities must lie in [0, 1]");
  if (ell(0, 1) != ell(1, 0))
    throw std::invalid_argument("link probability matrix must be symmetric");
}

Labels Graph::labels() const {
  Labels out(n);
  for (int i = 0; i < n; ++i) out[i] = i < n1 ? 1 : 2;
  return out;
}

namespace {

Graph from_triplets(int n, int n1, std::vector<Eigen::Triplet<double>>& trip) {
  Graph g;
  g.n = n;
  g.n1 = n1;
  g.adjacency.resize(n, n);
  // duplicates are summed by setFromTriplets; clamp back to 1 below
  g.adjacency.setFromTriplets(trip.begin(), trip.end());
  for (int k = 0; k < g.adjacency.outerSize(); ++k)
    for (SparseMat::InnerIterator it(g.adjacency, k); it; ++it)
      it.valueRef() = 1.0;
  g.adjacency.makeCompressed();
  return g;
}

}  // namespace

Graph graph_from_edges(int n, int n1,
                       const std::vector<std::pair<int, int>>& edges) {
  if (n < 1 || n1 < 0 || n1 > n)
    throw std::invalid_argument("invalid graph size");
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * edges.size());
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (i == j) throw std::invalid_argument("self-loops are not allowed");
    trip.emplace_back(i, j, 1.0);
    trip.emplace_back(j, i, 1.0);
  }
  return from_triplets(n, n1, trip);
}

Graph sample_sbm(const SbmParams& params, std::uint64_t seed) {
  params.validate();
  const int n = params.n();
  const CounterStream stream(seed, /*stream=*/0x6772617068ULL);
  std::vector<Eigen::Triplet<double>> trip;
  std::uint64_t pair = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++pair) {
      if (stream.uniform(pair) < params.link(i, j)) {
        trip.emplace_back(i, j, 1.0);
        trip.emplace_back(j, i, 1.0);
      }
    }
  }
  return from_triplets(n, params.n1, trip);
}

Mat expected_adjacency(const SbmParams& params) {
  params.validate();
  const int n = params.n();
  Mat a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = i == j ? 0.0 : params.link(i, j);
  return a;
}

double max_expected_degree(const SbmParams& params) {
  params.validate();
  const auto& l = params.ell;
  const double d1 = l(0, 0) * (params.n1 - 1) + l(0, 1) * params.n2;
  const double d2 = l(1, 1) * (params.n2 - 1) + l(1, 0) * params.n1;
  return std::max(d1, d2);
}

bool is_connected(const Graph& graph) {
  if (graph.n <= 1) return true;
  std::vector<char> seen(graph.n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (SparseMat::InnerIterator it(graph.adjacency, v); it; ++it) {
      const auto w = static_cast<int>(it.row());
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == graph.n;
}

AssumptionReport check_assumptions(const SbmParams& params, double c_conn,
                                   double c_dis) {
  if (!(c_conn > 0.0) || !(c_dis > 0.0))
    throw std::invalid_argument("surrogate constants must be positive");
  params.validate();
  const double n = params.n();
  const double log_n = std::log(n);
  AssumptionReport r;
  r.connectivity = (params.ell.array() >= c_conn * log_n / n).all();
  const double ls = params.ell(0, 0), ld = params.ell(0, 1);
  r.applies_dis = params.is_symmetric() && ls > ld;
  r.dissortativity = !r.applies_dis || ld >= c_dis * std::sqrt(ls * log_n);
  return r;
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  out << "# n=" << graph.n << " n1=" << graph.n1 << '\n';
  for (int j = 0; j < graph.adjacency.outerSize(); ++j)
    for (SparseMat::InnerIterator it(graph.adjacency, j); it; ++it)
      if (it.row() < j) out << it.row() << ' ' << j << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  int n = -1, n1 = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string tok;
      while (hs >> tok) {
        if (tok.rfind("n=", 0) == 0) n = std::stoi(tok.substr(2));
        if (tok.rfind("n1=", 0) == 0) n1 = std::stoi(tok.substr(3));
      }
      continue;
    }
    std::istringstream ls(line);
    int i, j;
    if (!(ls >> i >> j))
      throw std::invalid_argument("malformed edge line: " + line);
    edges.emplace_back(i, j);
  }
  if (n < 1 || n1 < 0) throw std::invalid_argument("missing '# n= n1=' header");
  return graph_from_edges(n, n1, edges);
}

}  // namespace nodsbm
