#pragma once

#include "sdmbc/prob.hpp"

namespace sdmbc {

/// Closed forms for the three-bit-input channel of build_dueck_bc under
/// Hamming distortion and symmetric i.i.d. states P(S_k = 1) = ps1.

/// Regime of the state law: 1 when p1 <= p0, 2 when p0 < p1 <= p0(1+p0),
/// 3 when p1 > p0(1+p0).
int dueck_regime(double ps1);

/// Distortion floor as a function of the input coupling beta = Pr[X1 != X2]:
/// (1-beta)/2 * min{p1, p0(1+p0)} + beta/2 * p1 * (p0 + min{p0, p1}).
double dueck_distortion_floor(double ps1, double beta);

/// Smallest achievable distortion over beta (regime-dependent endpoint).
double dueck_min_distortion(double ps1);

/// Conditional expected distortion d'_k((x1,x2), z) of the optimal estimator,
/// by the per-feedback-symbol case analysis. z components are the two noisy
/// output bits.
double dueck_cond_distortion(double ps1, int k, bool x_equal, int z1, int z2);

/// P(Z = (z1,z2) | x1, x2), which depends on the inputs only through
/// the pattern x1 == x2.
double dueck_feedback_prob(double ps1, bool x_equal, int z1, int z2);

/// Largest sum rate the outer bound admits at symmetric distortion D.
/// Throws std::domain_error below the minimum distortion.
double dueck_outer_sum_rate(double ps1, double distortion);

/// Largest sum rate of the inner bound at symmetric distortion D; the inner
/// maximization over the time-sharing fraction is solved by golden-section
/// search to 1e-9.
double dueck_inner_sum_rate(double ps1, double distortion);

/// Sum-rate value of the third-regime inner bound for given (beta, gamma):
/// 1 + gamma * p1 * (Hb(beta/gamma) - p0), defined for 0 <= beta <= gamma.
double dueck_inner_sum_rate_at(double ps1, double beta, double gamma);

/// Golden-section maximization of a unimodal function on [lo, hi].
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-9);

}  // namespace sdmbc
