#include "nodsbm/dynamics.hpp"

#include <Eigen/SparseLU>

#include <cmath>

#include "nodsbm/spectral.hpp"

namespace nodsbm {

void ModelParams::validate() const {
  if (!(d > 0.0)) throw std::invalid_argument("damping d must be positive");
  if (!(u >= 0.0)) throw std::invalid_argument("attention u must be >= 0");
  if (!(alpha >= 0.0)) throw std::invalid_argument("self weight must be >= 0");
  if (gamma == 0.0 || std::isnan(gamma))
    throw std::invalid_argument("influence weight must be nonzero");
}

Vec rhs(const Vec& x, const ModelParams& params, const Graph& graph,
        const Vec& b) {
  if (x.size() != graph.n || b.size() != graph.n)
    throw LengthMismatch("rhs: state/input size does not match the graph");
  Vec out(graph.n);
  rhs_into(x, params, graph.adjacency, b, out);
  return out;
}

double residual_inf(const Vec& x, const ModelParams& params, const Graph& graph,
                    const Vec& b) {
  return graph.n == 0 ? 0.0 : rhs(x, params, graph, b).lpNorm<Eigen::Infinity>();
}

namespace {

SparseMat jacobian(const Vec& x, const ModelParams& p, const Graph& g) {
  const int n = g.n;
  SparseMat eye(n, n);
  eye.setIdentity();
  SparseMat coupling = p.gamma * g.adjacency + p.alpha * eye;
  const Vec z = coupling * x;
  const Vec gain = p.u * saturate_slope(p.saturation, z.array()).matrix();
  SparseMat jac = gain.asDiagonal() * coupling;
  jac -= p.d * eye;
  jac.makeCompressed();
  return jac;
}

}  // namespace

Equilibrium newton_refine(const Vec& x, const ModelParams& params,
                          const Graph& graph, const Vec& b, double tol,
                          int max_iter) {
  Equilibrium eq;
  eq.state = x;
  Vec r = rhs(x, params, graph, b);
  eq.residual_inf = graph.n == 0 ? 0.0 : r.lpNorm<Eigen::Infinity>();

  Eigen::SparseLU<SparseMat> lu;
  bool analyzed = false;
  while (eq.residual_inf > tol && eq.newton_iterations < max_iter) {
    const SparseMat jac = jacobian(eq.state, params, graph);
    if (!analyzed) {
      lu.analyzePattern(jac);
      analyzed = true;
    }
    lu.factorize(jac);
    if (lu.info() != Eigen::Success)
      throw SingularJacobian("Newton: Jacobian factorization failed");
    const Vec step = lu.solve(-r);
    if (lu.info() != Eigen::Success || !step.allFinite())
      throw SingularJacobian("Newton: Jacobian solve failed");

    ++eq.newton_iterations;
    bool improved = false;
    for (double t = 1.0; t >= 1.0 / 1024; t *= 0.5) {
      Vec trial = eq.state + t * step;
      Vec r_trial = rhs(trial, params, graph, b);
      const double res = r_trial.lpNorm<Eigen::Infinity>();
      if (res < eq.residual_inf) {
        eq.state = std::move(trial);
        r = std::move(r_trial);
        eq.residual_inf = res;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  eq.converged = eq.residual_inf <= tol;
  return eq;
}

Equilibrium integrate_to_equilibrium(const Vec& x0, const ModelParams& params,
                                     const Graph& graph, const Vec& b,
                                     const EquilibriumControls& controls) {
  params.validate();
  if (x0.size() != graph.n || b.size() != graph.n)
    throw LengthMismatch("integrate: state/input size does not match the graph");

  auto f = [&](const Vec& y, Vec& out) {
    rhs_into(y, params, graph.adjacency, b, out);
  };
  const auto run = integrate_until_steady<double>(f, x0, controls.ode);

  Equilibrium eq;
  try {
    eq = newton_refine(run.y, params, graph, b, controls.newton_tol,
                       controls.newton_max_iter);
  } catch (const SingularJacobian&) {
    eq.state = run.y;
    eq.residual_inf = graph.n == 0 ? 0.0 : run.dy.lpNorm<Eigen::Infinity>();
  }
  eq.elapsed_model_time = run.t;
  eq.ode_steps = run.accepted + run.rejected;
  eq.converged = eq.residual_inf <= controls.ode.steady_tol;
  return eq;
}

double bifurcation_threshold(double lambda_min, double lambda_max,
                             const ModelParams& params) {
  const double lambda = params.gamma > 0.0 ? lambda_max : lambda_min;
  const double denom = params.alpha + params.gamma * lambda;
  if (!(denom > 0.0))
    throw InvalidRegime("alpha + gamma*lambda must be positive");
  return params.d / denom;
}

double bifurcation_threshold(const Mat& symmetric, const ModelParams& params) {
  const Vec values = sym_eigenvalues(symmetric);
  return bifurcation_threshold(values(0), values(values.size() - 1), params);
}

}  // namespace nodsbm
