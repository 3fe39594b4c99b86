#pragma once

#include <cstdint>
#include <vector>

#include "sdmbc/estimation.hpp"

namespace sdmbc {

/// Simulation setup: i.i.d. rounds of (X, S1, S2) -> (Y1, Y2, Z) with the
/// estimator applied per round. input_law may be any pmf over the input
/// alphabet (use dueck_coupled_input for coupled three-bit inputs).
struct SimConfig {
    uint64_t n = 1;
    uint64_t seed = 0;
    Pmf input_law;
};

struct ReceiverStats {
    double mean = 0.0;
    double std_error = 0.0;
};

struct SimResult {
    uint64_t n = 0;
    uint64_t seed = 0;
    ReceiverStats receiver1, receiver2;
    std::vector<uint64_t> input_counts;          // per x
    std::vector<uint64_t> feedback_counts;       // per (x*nz + z)
    int nx = 0, nz = 0;
};

/// Seeded i.i.d. simulation. Rounds draw from per-round SplitMix64 substreams
/// keyed by (seed, round index), so the result is bit-identical for a given
/// (spec, cfg) regardless of thread count. Standard errors are the plug-in
/// estimates from the per-round distortion samples.
SimResult simulate(const SdmbcSpec& spec, const EstimatorTable& estimator,
                   const DistortionMeasure& d, const SimConfig& cfg);  // OpenMP over blocks
SimResult simulate_serial(const SdmbcSpec& spec, const EstimatorTable& estimator,
                          const DistortionMeasure& d, const SimConfig& cfg);

struct FeedbackStats {
    int nx = 0, nz = 0;
    std::vector<uint64_t> input_counts;   // per x
    std::vector<double> freq;             // empirical P(z | x), per (x*nz + z)
    std::vector<double> std_error;        // binomial plug-in, per (x*nz + z)
};

/// Empirical conditional feedback frequencies P(Z = z | X = x).
FeedbackStats simulate_feedback_stats(const SdmbcSpec& spec, const SimConfig& cfg);

}  // namespace sdmbc
