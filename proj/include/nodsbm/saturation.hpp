#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <type_traits>

#include "nodsbm/core.hpp"

namespace nodsbm {

/// Odd saturating nonlinearities with S(0) = 0, S'(0) = 1 and range (-1, 1).
enum class Saturation {
  TanH,        // tanh(z)
  Algebraic1,  // z / (1 + |z|)
  Algebraic2,  // z / sqrt(1 + z^2)
  ErfScaled,   // erf(sqrt(pi) z / 2)
};

std::string_view to_string(Saturation kind);
/// Accepts the names produced by to_string (case-insensitive).
Saturation parse_saturation(std::string_view name);

namespace detail {

template <typename Scalar>
Scalar erf_scale() {
  return std::sqrt(std::numbers::pi_v<Scalar>) / Scalar(2);
}

// Inverse error function: rational initial guess refined by Halley steps on
// erf(x) - y.
template <typename Scalar>
Scalar erfinv(Scalar y) {
  using std::abs, std::exp, std::log, std::sqrt;
  const Scalar a = abs(y);
  Scalar w = -log((Scalar(1) - a) * (Scalar(1) + a));
  Scalar x;
  if (w < Scalar(5)) {
    w -= Scalar(2.5);
    Scalar p = Scalar(2.81022636e-08);
    p = Scalar(3.43273939e-07) + p * w;
    p = Scalar(-3.5233877e-06) + p * w;
    p = Scalar(-4.39150654e-06) + p * w;
    p = Scalar(0.00021858087) + p * w;
    p = Scalar(-0.00125372503) + p * w;
    p = Scalar(-0.00417768164) + p * w;
    p = Scalar(0.246640727) + p * w;
    p = Scalar(1.50140941) + p * w;
    x = p * a;
  } else {
    w = sqrt(w) - Scalar(3);
    Scalar p = Scalar(-0.000200214257);
    p = Scalar(0.000100950558) + p * w;
    p = Scalar(0.00134934322) + p * w;
    p = Scalar(-0.00367342844) + p * w;
    p = Scalar(0.00573950773) + p * w;
    p = Scalar(-0.0076224613) + p * w;
    p = Scalar(0.00943887047) + p * w;
    p = Scalar(1.00167406) + p * w;
    p = Scalar(2.83297682) + p * w;
    x = p * a;
  }
  const Scalar two_over_sqrt_pi = Scalar(2) / sqrt(std::numbers::pi_v<Scalar>);
  for (int it = 0; it < 4; ++it) {
    const Scalar f = std::erf(x) - a;
    const Scalar df = two_over_sqrt_pi * exp(-x * x);
    if (df == Scalar(0)) break;
    const Scalar step = f / df;
    x -= step / (Scalar(1) + x * step);  // Halley: f'' / f' = -2x
  }
  return std::copysign(x, y);
}

}  // namespace detail

template <typename Scalar>
  requires std::is_floating_point_v<Scalar>
Scalar saturate(Saturation kind, Scalar z) {
  using std::abs, std::sqrt;
  const Scalar a = abs(z);
  Scalar s;
  switch (kind) {
    case Saturation::TanH: s = std::tanh(a); break;
    case Saturation::Algebraic1: s = a / (Scalar(1) + a); break;
    case Saturation::Algebraic2: s = a / sqrt(Scalar(1) + a * a); break;
    case Saturation::ErfScaled: s = std::erf(detail::erf_scale<Scalar>() * a); break;
    default: s = Scalar(0);
  }
  return std::copysign(s, z);
}

/// S'(z).
template <typename Scalar>
  requires std::is_floating_point_v<Scalar>
Scalar saturate_slope(Saturation kind, Scalar z) {
  using std::abs, std::sqrt;
  const Scalar a = abs(z);
  switch (kind) {
    case Saturation::TanH: {
      const Scalar t = std::tanh(a);
      return Scalar(1) - t * t;
    }
    case Saturation::Algebraic1: {
      const Scalar q = Scalar(1) + a;
      return Scalar(1) / (q * q);
    }
    case Saturation::Algebraic2: {
      const Scalar q = Scalar(1) + a * a;
      return Scalar(1) / (q * sqrt(q));
    }
    case Saturation::ErfScaled:
      return std::exp(-std::numbers::pi_v<Scalar> * a * a / Scalar(4));
    default:
      return Scalar(0);
  }
}

/// What saturate_inverse does with |y| >= 1.
enum class RangePolicy { Strict, Clamp };

inline constexpr double kInverseClampMargin = 1e-12;

template <typename Scalar>
  requires std::is_floating_point_v<Scalar>
Scalar saturate_inverse(Saturation kind, Scalar y,
                        RangePolicy policy = RangePolicy::Strict) {
  using std::abs, std::sqrt;
  if (!(abs(y) < Scalar(1))) {
    if (policy == RangePolicy::Strict || std::isnan(y))
      throw DomainError("saturation inverse needs |y| < 1, got " +
                        std::to_string(static_cast<double>(y)));
    y = std::copysign(Scalar(1) - Scalar(kInverseClampMargin), y);
  }
  const Scalar a = abs(y);
  Scalar z;
  switch (kind) {
    case Saturation::TanH: z = std::atanh(a); break;
    case Saturation::Algebraic1: z = a / (Scalar(1) - a); break;
    case Saturation::Algebraic2: z = a / sqrt((Scalar(1) - a) * (Scalar(1) + a)); break;
    case Saturation::ErfScaled: z = detail::erfinv(a) / detail::erf_scale<Scalar>(); break;
    default: z = Scalar(0);
  }
  return std::copysign(z, y);
}

/// Elementwise S over an Eigen expression.
template <typename Derived>
auto saturate(Saturation kind, const Eigen::ArrayBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  return z.unaryExpr([kind](Scalar v) { return saturate(kind, v); });
}

template <typename Derived>
auto saturate_slope(Saturation kind, const Eigen::ArrayBase<Derived>& z) {
  using Scalar = typename Derived::Scalar;
  return z.unaryExpr([kind](Scalar v) { return saturate_slope(kind, v); });
}

}  // namespace nodsbm
