#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sdmbc/dueck.hpp"
#include "sdmbc/estimation.hpp"

namespace sdmbc {

/// One rate-distortion operating point (rates in bits per channel use).
struct RegionPoint {
    double r1 = 0.0, r2 = 0.0, d1 = 0.0, d2 = 0.0;
};

/// a dominates b: rates no smaller, distortions no larger, one strict (beyond eps).
bool dominates(const RegionPoint& a, const RegionPoint& b, double eps = 0.0);

/// Mutually non-dominated points, ordered lexicographically by
/// (-R1, -R2, D1, D2). Exact duplicates are collapsed.
struct ParetoSet {
    std::vector<RegionPoint> points;
};

/// eps > 0 also drops near-ties: points beaten somewhere by more than eps and
/// nowhere better by more than eps. The grid sweeps clean with eps = 1e-9 so
/// floating-point noise cannot keep exactly-tied mirror points alive.
ParetoSet pareto_frontier(std::vector<RegionPoint> points, double eps = 0.0);         // OpenMP
ParetoSet pareto_frontier_serial(std::vector<RegionPoint> points, double eps = 0.0);  // reference

/// Enumerates the lattice {a / resolution : sum a = resolution} over `cells`
/// coordinates and calls fn with each pmf. Returns the number of points.
size_t for_each_simplex_point(int cells, int resolution,
                              const std::function<void(const std::vector<double>&)>& fn);
size_t simplex_point_count(int cells, int resolution);

/// Region corner of the multiplicative-state channel for parameters
/// (p, r): rates (q Hb(p) r, gamma q Hb(p) (1-r)) at the minimum distortions
/// ((1-p) min{q,1-q}, (1-p) min{gamma q, 1 - gamma q}).
RegionPoint multiplicative_corner(double q, double gamma, double p, double r);

/// Same for the flipping-input channel: distortions
/// ((1-p) min{q(1-gamma), 1-q}, p q min{gamma, 1-gamma}).
RegionPoint flipping_corner(double q, double gamma, double p, double r);

/// Superposition region of a physically degraded channel: sweeps the joint
/// auxiliary/input law over a simplex lattice with |U| = u_card, scoring each
/// point with R1 = I(U;Y1|S1), R2 = I(X;Y2|S2,U) and the distortions of the
/// optimal estimator, and keeps the Pareto frontier. Throws when the lattice
/// exceeds max_points.
ParetoSet degraded_region(const SdmbcSpec& spec, const DistortionMeasure& d, int u_card,
                          int grid_res, size_t max_points = 2'000'000);  // OpenMP
ParetoSet degraded_region_serial(const SdmbcSpec& spec, const DistortionMeasure& d, int u_card,
                                 int grid_res, size_t max_points = 2'000'000);

/// Auxiliaries for the general outer bound: an input law plus one
/// auxiliary-channel kernel per receiver.
struct OuterAux {
    Pmf px;
    Kernel u1_given_x, u2_given_x;  // input shape {nx}, output shape {nu}
};

/// The four outer-bound information quantities plus the estimator distortions.
struct OuterEval {
    double r1_cap, sum_cap_u1, sum_cap_u2, r2_cap;
    double d1, d2;
    double sum_cap() const { return std::min(sum_cap_u1, sum_cap_u2); }
    std::vector<RegionPoint> corners() const;
};

OuterEval outer_bound_eval(const SdmbcSpec& spec, const DistortionMeasure& d, const OuterAux& aux);

/// Envelope over a lattice of (P_X, P_{U1|X}, P_{U2|X}) with |U_k| = u_card.
ParetoSet outer_bound_envelope(const SdmbcSpec& spec, const DistortionMeasure& d, int u_card,
                               int grid_res, size_t max_points = 2'000'000);  // OpenMP

/// Auxiliaries for the general inner bound: a joint law over (U0,U1,U2,X) and
/// a processing kernel producing (V0,V1,V2) from (U0,U1,U2,Z).
struct InnerAux {
    LabeledJoint aux_input;  // variables named U0, U1, U2, X
    std::vector<int> v_sizes;
    Kernel v_given_uz;  // input shape {nu0, nu1, nu2, nz}, output shape v_sizes
};

struct InnerEval {
    double r1_cap, r2_cap, sum_cap;  // clamped at 0
    double d1, d2;
    std::vector<RegionPoint> corners() const;
};

InnerEval inner_bound_eval(const SdmbcSpec& spec, const DistortionMeasure& d, const InnerAux& aux);

/// Inner-bound presets for the three-bit channel. which = 1 or 2 selects
/// whose noisy output bit feeds the decoded side information; beta_prime is
/// the input coupling Pr[X1 != X2].
InnerAux dueck_feedback_aux(int which, double beta_prime);
/// Plain preset: no feedback processing, common bit carries the messages.
InnerAux dueck_plain_aux(double beta_prime);

/// Outer-bound region of the three-bit channel for fixed scalar parameters.
struct DueckOuterParams {
    double p, q_aux, beta;
};
RegionPoint dueck_outer_corner(double ps1, const DueckOuterParams& params);
ParetoSet dueck_outer_region(double ps1, int grid_res = 21);

/// Inner-bound region of the three-bit channel, dispatched on the state-law
/// regime. In regime 1 the region is the full product C x D.
struct DueckInnerParams {
    double beta = 0.0, gamma_ts = 1.0;
};
struct DueckInnerResult {
    int regime;
    bool product_structure;  // true in regime 1: region = C x D
    double d_min;
    std::vector<RegionPoint> corners;
};
DueckInnerResult dueck_inner_region(double ps1, const DueckInnerParams& params);

/// Two-mode baseline that separates sensing from communication.
/// For the multiplicative channel the communication mode uses time share r
/// between the receivers; points are (R1, R2, D1, D2).
ParetoSet resource_splitting_multiplicative(double q, double gamma, double r);
/// For the three-bit channel the trade is sum rate vs symmetric distortion;
/// points are encoded as (r1 = sum rate, r2 = 0, d1 = d2 = D).
ParetoSet resource_splitting_dueck(double ps1);

/// Coordinate-wise convex combination; weights must lie on the simplex.
RegionPoint time_share(const std::vector<RegionPoint>& points, const std::vector<double>& weights);

}  // namespace sdmbc
