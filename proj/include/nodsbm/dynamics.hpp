#pragma once

#include "nodsbm/core.hpp"
#include "nodsbm/graphgen.hpp"
#include "nodsbm/ode.hpp"
#include "nodsbm/saturation.hpp"

namespace nodsbm {

/// Homogeneous parameters of  x' = -d x + u S(alpha x + gamma A x) + b.
struct ModelParams {
  double d = 1.0;      // damping
  double u = 0.0;      // attention
  double alpha = 1.0;  // self weight
  double gamma = 1.0;  // influence weight
  Saturation saturation = Saturation::TanH;

  /// Throws std::invalid_argument unless d > 0, u >= 0, alpha >= 0 and
  /// gamma != 0.
  void validate() const;
};

/// States with ||x||_inf below this are treated as the neutral state.
inline constexpr double kNeutralThreshold = 1e-6;

struct Equilibrium {
  Vec state;
  double residual_inf = 0.0;
  bool converged = false;
  double elapsed_model_time = 0.0;
  long ode_steps = 0;
  int newton_iterations = 0;
};

struct EquilibriumControls {
  OdeControls ode;
  double newton_tol = 1e-12;
  int newton_max_iter = 20;
};

/// -d x + u S(alpha x + gamma A x) + b, written into `out`.
template <typename DerivedX, typename DerivedB, typename DerivedOut>
void rhs_into(const Eigen::MatrixBase<DerivedX>& x, const ModelParams& p,
              const SparseMat& adjacency, const Eigen::MatrixBase<DerivedB>& b,
              Eigen::MatrixBase<DerivedOut>& out) {
  Vec z = p.gamma * (adjacency * x);
  z += p.alpha * x;
  out.derived() = -p.d * x + p.u * saturate(p.saturation, z.array()).matrix() + b;
}

Vec rhs(const Vec& x, const ModelParams& params, const Graph& graph,
        const Vec& b);

/// ||rhs(x)||_inf.
double residual_inf(const Vec& x, const ModelParams& params, const Graph& graph,
                    const Vec& b);

/// Damped Newton on rhs(x) = 0 with the analytic Jacobian
///   -d I + u diag(S'(alpha x + gamma A x)) (alpha I + gamma A).
/// Returns as soon as the residual is <= tol; otherwise the best iterate
/// with converged = false. Throws SingularJacobian if the sparse LU fails.
Equilibrium newton_refine(const Vec& x, const ModelParams& params,
                          const Graph& graph, const Vec& b, double tol,
                          int max_iter);

/// Runs Dormand-Prince to steady state from x0, then polishes with Newton
/// (falling back to the ODE endpoint if the Jacobian is singular).
/// `converged` reports final residual <= controls.ode.steady_tol.
Equilibrium integrate_to_equilibrium(const Vec& x0, const ModelParams& params,
                                     const Graph& graph, const Vec& b,
                                     const EquilibriumControls& controls = {});

/// d / (alpha + gamma lambda) with lambda = lambda_max for gamma > 0 and
/// lambda_min for gamma < 0. Throws InvalidRegime if the denominator is not
/// positive.
double bifurcation_threshold(double lambda_min, double lambda_max,
                             const ModelParams& params);
double bifurcation_threshold(const Mat& symmetric, const ModelParams& params);

}  // namespace nodsbm
