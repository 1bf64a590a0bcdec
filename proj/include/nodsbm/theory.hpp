#pragma once

#include "nodsbm/core.hpp"
#include "nodsbm/dynamics.hpp"
#include "nodsbm/graphgen.hpp"
#include "nodsbm/spectral.hpp"

namespace nodsbm {

/// Nonzero spectrum of E{A} + diag(ell11 I_n1, ell22 I_n2). The Perron
/// eigenvector is block constant, [w1 1_n1; w2 1_n2], with n1 w1^2 + n2 w2^2 = 1.
struct ExpectedSpectrum {
  double lambda_max_bar = 0.0;
  double lambda_minus_bar = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
};

ExpectedSpectrum expected_spectrum(const SbmParams& params);

/// E{A} + diag(ell11 I_n1, ell22 I_n2), the rank-two block matrix.
Mat corrected_expected_matrix(const SbmParams& params);

/// Extreme eigenvalues of E{A} itself (zero diagonal), in closed form.
struct SpectrumBounds {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};
SpectrumBounds expected_adjacency_extremes(const SbmParams& params);

struct DavisKahanReport {
  double lhs = 0.0;        // min over sign of ||w_max(A) - s w_max(E{A})||
  double rhs = 0.0;        // 2^{3/2} ||A - E{A}|| / delta
  double delta = 0.0;      // gap below lambda_max(E{A})
  double deviation = 0.0;  // ||A - E{A}||_2
  double ratio = 0.0;      // lhs / rhs, 0 when both vanish
  bool holds = false;
};

/// Throws ZeroGap if lambda_max(E{A}) is not simple.
DavisKahanReport davis_kahan_check(const Graph& graph, const SbmParams& params);

/// ||A - E{A}||_2 / sqrt(Delta log n).
double concentration_ratio(const Graph& graph, const SbmParams& params);

/// |<x/||x||, w>| with w the unit eigenvector of lambda_max(A) (gamma > 0)
/// or lambda_min(A) (gamma < 0). Throws NeutralState for a zero state.
double alignment_check(const Equilibrium& equilibrium, const Graph& graph,
                       const ModelParams& params);
double alignment_check(const Equilibrium& equilibrium, const EigenPairs& spectrum,
                       const ModelParams& params);

/// Signed projection <x*, w_max(A)>.
double c_of_u(const Equilibrium& equilibrium, const Graph& graph);
double c_of_u(const Equilibrium& equilibrium, const EigenPairs& spectrum);

}  // namespace nodsbm
