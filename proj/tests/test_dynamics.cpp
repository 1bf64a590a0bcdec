#include <doctest.h>

#include <cmath>
#include <random>

#include "nodsbm/dynamics.hpp"
#include "nodsbm/spectral.hpp"
#include "nodsbm/theory.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace nodsbm;

namespace {

Vec random_vec(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

}  // namespace

TEST_CASE("rhs at trivial points") {
  const Graph k3 = oracle::complete_graph(3);
  ModelParams p;
  p.u = 0.7;
  CHECK(rhs(Vec::Zero(3), p, k3, Vec::Zero(3)).cwiseAbs().maxCoeff() == 0.0);

  const Graph single = graph_from_edges(1, 1, {});
  ModelParams damp_only;
  damp_only.u = 0.0;
  const Vec out = rhs(Vec::Constant(1, 3.0), damp_only, single, Vec::Constant(1, 2.0));
  CHECK(out(0) == -1.0);
}

TEST_CASE("compact form matches the per-agent sum") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = trial < 4 ? 3 : 2 + trial % 19;
    const Graph g = trial < 4 ? oracle::complete_graph(3) : oracle::connected_graph(n, 0.4, rng);
    ModelParams p;
    p.d = 0.5 + trial * 0.05;
    p.u = 0.3 + 0.02 * trial;
    p.alpha = trial % 3 * 0.5;
    p.gamma = trial % 2 ? 0.3 : -0.7;
    p.saturation = oracle::all_saturations()[trial % 4];
    const Vec x = random_vec(n, rng), b = random_vec(n, rng);
    const Vec want = oracle::agent_form_rhs(x, p, g.dense(), b);
    CHECK((rhs(x, p, g, b) - want).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("origin stays put without input") {
  const Graph g = oracle::path_graph(6);
  ModelParams p;
  p.u = 2.0;
  const auto eq = integrate_to_equilibrium(Vec::Zero(6), p, g, Vec::Zero(6));
  CHECK(eq.converged);
  CHECK(eq.residual_inf == 0.0);
  CHECK(eq.state.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("below threshold the neutral state attracts") {
  const auto r = props::below_threshold_stability();
  INFO(r.detail);
  CHECK(r.ok);
}

TEST_CASE("above threshold with positive influence: one sign") {
  const auto r = props::above_threshold_same_sign();
  INFO(r.detail);
  CHECK(r.ok);
}

TEST_CASE("above threshold with negative influence: both signs") {
  const auto r = props::above_threshold_mixed_sign();
  INFO(r.detail);
  CHECK(r.ok);
}

TEST_CASE("converged equilibria pass an independent residual check") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 12; ++trial) {
    const Graph g = oracle::connected_graph(15, 0.3, rng);
    ModelParams p;
    p.gamma = trial % 2 ? 0.2 : -0.2;
    p.u = 0.4 + 0.1 * trial;
    p.saturation = oracle::all_saturations()[trial % 4];
    const Vec b = trial % 3 ? random_vec(15, rng) : Vec::Zero(15);
    const auto eq = integrate_to_equilibrium(random_vec(15, rng, 1e-3), p, g, b);
    REQUIRE(eq.converged);
    const Vec r = oracle::agent_form_rhs(eq.state, p, g.dense(), b);
    CHECK(r.lpNorm<Eigen::Infinity>() <= EquilibriumControls{}.ode.steady_tol);
  }
}

TEST_CASE("stall exit reaches the same equilibrium as the full horizon") {
  const auto params = SbmParams::make(60, 20, 0.1, 0.05, 0.4);
  const Graph g = sample_sbm(params, 17);
  ModelParams p;
  p.gamma = 1.0 / max_expected_degree(params);
  const auto ext = expected_adjacency_extremes(params);
  p.u = bifurcation_threshold(ext.lambda_min, ext.lambda_max, p) + 0.02;
  std::mt19937_64 rng(4);
  const Vec x0 = random_vec(g.n, rng, 1e-3);

  EquilibriumControls full;
  full.ode.stall_steps = 0;
  full.ode.t_max = 2e4;
  const auto a = integrate_to_equilibrium(x0, p, g, Vec::Zero(g.n));
  const auto b = integrate_to_equilibrium(x0, p, g, Vec::Zero(g.n), full);
  CHECK(a.converged);
  CHECK(b.converged);
  CHECK(a.elapsed_model_time < b.elapsed_model_time);
  CHECK((a.state - b.state).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("Newton leaves an exact equilibrium alone") {
  const Graph g = oracle::path_graph(4);
  ModelParams p;
  p.u = 3.0;
  const auto eq = newton_refine(Vec::Zero(4), p, g, Vec::Zero(4), 1e-12, 20);
  CHECK(eq.newton_iterations == 0);
  CHECK(eq.converged);
  CHECK(eq.state == Vec::Zero(4));
}

TEST_CASE("Newton polishes an ODE endpoint quadratically") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 6; ++trial) {
    const Graph g = oracle::connected_graph(20, 0.25, rng);
    ModelParams p;
    p.gamma = 0.25;
    p.u = 0.8;
    p.saturation = oracle::all_saturations()[trial % 4];
    const Vec b = random_vec(20, rng);
    OdeControls loose;
    loose.steady_tol = 1e-8;
    loose.stall_steps = 0;
    auto f = [&](const Vec& y, Vec& out) { out = rhs(y, p, g, b); };
    const auto run = integrate_until_steady<double>(f, Vec::Zero(20), loose);
    REQUIRE(run.steady);
    const double r0 = run.dy.lpNorm<Eigen::Infinity>();
    CHECK(r0 <= 1e-8);

    const auto one = newton_refine(run.y, p, g, b, 0.0, 1);
    CHECK(one.residual_inf <= 100 * r0 * r0 + 1e-15);  // quadratic, not linear
    const auto eq = newton_refine(run.y, p, g, b, 1e-12, 20);
    CHECK(eq.converged);
    CHECK(eq.residual_inf <= 1e-12);
    CHECK(eq.newton_iterations <= 5);
  }
}

TEST_CASE("Newton with a tiny budget returns the best iterate") {
  const Graph g = oracle::complete_graph(5);
  ModelParams p;
  p.u = 2.0;
  p.gamma = 0.5;
  const Vec far = Vec::LinSpaced(5, -40.0, 60.0);
  const double start = residual_inf(far, p, g, Vec::Zero(5));
  const auto eq = newton_refine(far, p, g, Vec::Zero(5), 1e-12, 1);
  CHECK_FALSE(eq.converged);
  CHECK(eq.newton_iterations <= 1);
  CHECK(eq.residual_inf <= start);
  CHECK(eq.residual_inf == doctest::Approx(residual_inf(eq.state, p, g, Vec::Zero(5))));
}

TEST_CASE("horizon exhausted without polish reports nonconvergence") {
  const Graph g = oracle::complete_graph(6);
  ModelParams p;
  p.u = 1.0;
  p.gamma = 0.3;
  EquilibriumControls c;
  c.ode.t_max = 0.5;
  c.newton_max_iter = 0;
  const auto eq = integrate_to_equilibrium(Vec::Constant(6, 0.3), p, g, Vec::Zero(6), c);
  CHECK_FALSE(eq.converged);
  CHECK(eq.elapsed_model_time == doctest::Approx(0.5));
  CHECK(eq.residual_inf > c.ode.steady_tol);
  CHECK(eq.ode_steps > 0);
}

TEST_CASE("bifurcation thresholds") {
  ModelParams p;  // d = alpha = gamma = 1
  CHECK(bifurcation_threshold(oracle::complete_graph(2).dense(), p) == doctest::Approx(0.5));

  ModelParams neg;
  neg.gamma = -0.25;
  CHECK(bifurcation_threshold(oracle::complete_graph(3).dense(), neg) == doctest::Approx(0.8));

  ModelParams bad;
  bad.alpha = -2.0;  // alpha + gamma * lambda_max < 0
  CHECK_THROWS_AS(bifurcation_threshold(oracle::complete_graph(2).dense(), bad), InvalidRegime);
  CHECK_THROWS_AS(bifurcation_threshold(-3.0, 1.0, bad), InvalidRegime);
}

TEST_CASE("expected-matrix thresholds use the closed-form spectra") {
  const auto params = SbmParams::symmetric(200, 0.3, 0.05);
  const double delta = max_expected_degree(params);
  ModelParams p;
  p.gamma = 1.0 / delta;
  const auto es = expected_spectrum(params);
  CHECK(bifurcation_threshold(corrected_expected_matrix(params), p) ==
        doctest::Approx(1.0 / (1.0 + es.lambda_max_bar / delta)).epsilon(1e-12));
  const auto ext = expected_adjacency_extremes(params);
  CHECK(bifurcation_threshold(expected_adjacency(params), p) ==
        doctest::Approx(1.0 / (1.0 + ext.lambda_max / delta)).epsilon(1e-12));
}

TEST_CASE("parameter and size validation") {
  ModelParams p;
  p.d = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.u = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.gamma = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.alpha = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK_THROWS_AS(integrate_to_equilibrium(Vec::Zero(3), ModelParams{}, oracle::path_graph(4),
                                           Vec::Zero(4)),
                  LengthMismatch);
}
