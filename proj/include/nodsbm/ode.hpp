#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

namespace nodsbm {

struct OdeControls {
  double rtol = 1e-9;
  double atol = 1e-9;
  double initial_step = 1e-3;
  /// Stop once ||f(y)||_inf falls to this level.
  double steady_tol = 1e-10;
  double t_max = 1e5;
  long max_steps = 20'000'000;
  /// Stall exit: stop early once ||f|| is below stall_residual and has not
  /// improved by 10% for stall_steps accepted steps (0 disables). With
  /// rtol ~ 1e-9 the step size settles on the stability boundary and the
  /// residual floors a little above 1e-10; Newton finishes from there.
  double stall_residual = 1e-8;
  long stall_steps = 200;
};

template <typename Scalar>
struct SteadyRun {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> y;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> dy;  // f(y)
  double t = 0.0;
  long accepted = 0;
  long rejected = 0;
  bool steady = false;
  bool stalled = false;
};

/// Integrates y' = f(y) with the embedded Dormand-Prince 5(4) pair and PI
/// step-size control until ||f(y)||_inf <= steady_tol or t reaches t_max.
/// `f(y, out)` writes the right-hand side into `out`.
template <typename Scalar, typename Rhs>
SteadyRun<Scalar> integrate_until_steady(
    Rhs&& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y0,
    const OdeControls& ctl) {
  using V = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  constexpr Scalar c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr Scalar a21 = 1.0 / 5;
  constexpr Scalar a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr Scalar a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr Scalar a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr Scalar a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr Scalar a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr Scalar e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2, (void)c3, (void)c4, (void)c5;  // autonomous system

  constexpr double safe = 0.9, beta = 0.04;
  constexpr double fac_min = 0.2, fac_max = 10.0;
  const double expo1 = 0.2 - beta * 0.75;

  const auto n = y0.size();
  SteadyRun<Scalar> run;
  run.y = y0;
  run.dy.resize(n);
  f(run.y, run.dy);
  if (n == 0 || run.dy.template lpNorm<Eigen::Infinity>() <= ctl.steady_tol) {
    run.steady = true;
    return run;
  }

  V k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ys(n), ynew(n), err(n);
  V& k1 = run.dy;
  double h = ctl.initial_step;
  double fac_old = 1e-4;
  bool last_rejected = false;
  double best = run.dy.template lpNorm<Eigen::Infinity>();
  long best_at = 0;

  while (run.t < ctl.t_max && run.accepted + run.rejected < ctl.max_steps) {
    h = std::min(h, ctl.t_max - run.t);
    ys = run.y + h * a21 * k1;
    f(ys, k2);
    ys = run.y + h * (a31 * k1 + a32 * k2);
    f(ys, k3);
    ys = run.y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    f(ys, k4);
    ys = run.y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(ys, k5);
    ys = run.y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(ys, k6);
    ynew = run.y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    f(ynew, k7);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const auto scale = (ctl.atol + ctl.rtol * run.y.cwiseAbs()
                                       .cwiseMax(ynew.cwiseAbs())
                                       .array());
    const double e = std::sqrt((err.array() / scale).square().mean());

    const double fac11 = std::pow(e, expo1);
    if (e <= 1.0) {
      double fac = fac11 / std::pow(fac_old, beta);
      fac = std::clamp(fac / safe, 1.0 / fac_max, 1.0 / fac_min);
      double h_next = h / fac;
      if (last_rejected) h_next = std::min(h_next, h);
      fac_old = std::max(e, 1e-4);
      run.t += h;
      run.y.swap(ynew);
      k1.swap(k7);
      ++run.accepted;
      last_rejected = false;
      h = h_next;
      const double res = k1.template lpNorm<Eigen::Infinity>();
      if (res <= ctl.steady_tol) {
        run.steady = true;
        break;
      }
      if (res < 0.9 * best) {
        best = res;
        best_at = run.accepted;
      }
      if (ctl.stall_steps > 0 && best <= ctl.stall_residual &&
          run.accepted - best_at >= ctl.stall_steps) {
        run.stalled = true;
        break;
      }
    } else {
      h /= std::min(1.0 / fac_min, fac11 / safe);
      ++run.rejected;
      last_rejected = true;
    }
  }
  return run;
}

}  // namespace nodsbm
