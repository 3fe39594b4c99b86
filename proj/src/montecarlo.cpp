#include "sdmbc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdmbc {

namespace {

constexpr uint64_t kBlock = 1u << 14;  // rounds per reduction block, fixed

inline uint64_t fmix64(uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

// Per-round SplitMix64 substream: the initial state is a hash of the seed and
// the round index, successive draws advance the usual SplitMix64 increment.
struct RoundRng {
    uint64_t state;
    RoundRng(uint64_t seed, uint64_t round) : state(fmix64(seed ^ fmix64(round + 1))) {}
    double next_unit() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D49BB133111EB2ULL;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }
};

struct CdfTables {
    std::vector<double> input;                 // cumulative over x
    std::vector<double> state;                 // cumulative over (s1,s2)
    std::vector<std::vector<double>> channel;  // cumulative per transition row
};

int draw_index(const std::vector<double>& cdf, double u) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) return static_cast<int>(cdf.size()) - 1;
    return static_cast<int>(it - cdf.begin());
}

CdfTables build_cdfs(const SdmbcSpec& spec, const Pmf& input_law) {
    CdfTables t;
    auto cumulate = [](const std::vector<double>& p) {
        std::vector<double> c(p.size());
        double acc = 0.0;
        for (size_t i = 0; i < p.size(); ++i) {
            acc += p[i];
            c[i] = acc;
        }
        if (!c.empty()) c.back() = std::max(c.back(), 1.0);  // guard against rounding
        return c;
    };
    t.input = cumulate(input_law.probs());
    t.state = cumulate(spec.state_law.probs());
    t.channel.resize(static_cast<size_t>(spec.transition.input_size()));
    for (int r = 0; r < spec.transition.input_size(); ++r) {
        auto row = spec.transition.row(r);
        t.channel[static_cast<size_t>(r)] = cumulate(std::vector<double>(row.begin(), row.end()));
    }
    return t;
}

struct BlockSums {
    double d1 = 0.0, d1_sq = 0.0, d2 = 0.0, d2_sq = 0.0;
    std::vector<uint64_t> input_counts, feedback_counts;
};

SimResult simulate_impl(const SdmbcSpec& spec, const EstimatorTable& estimator,
                        const DistortionMeasure& d, const SimConfig& cfg, bool parallel) {
    if (cfg.n < 1) throw std::invalid_argument("simulate: n must be >= 1");
    if (cfg.input_law.size() != spec.nx)
        throw std::invalid_argument("simulate: input law alphabet mismatch");
    if (estimator.nx != spec.nx || estimator.nz != spec.nz)
        throw std::invalid_argument("simulate: estimator shape mismatch");

    auto tables = build_cdfs(spec, cfg.input_law);
    const uint64_t n_blocks = (cfg.n + kBlock - 1) / kBlock;
    std::vector<BlockSums> blocks(static_cast<size_t>(n_blocks));

    auto run_block = [&](uint64_t b) {
        BlockSums sums;
        sums.input_counts.assign(static_cast<size_t>(spec.nx), 0);
        sums.feedback_counts.assign(static_cast<size_t>(spec.nx) * spec.nz, 0);
        uint64_t lo = b * kBlock, hi = std::min(cfg.n, lo + kBlock);
        for (uint64_t i = lo; i < hi; ++i) {
            RoundRng rng(cfg.seed, i);
            int x = draw_index(tables.input, rng.next_unit());
            int state = draw_index(tables.state, rng.next_unit());
            int s1 = state / spec.ns2, s2 = state % spec.ns2;
            int row = spec.transition_row(s1, s2, x);
            int cell = draw_index(tables.channel[static_cast<size_t>(row)], rng.next_unit());
            int z = cell % spec.nz;
            double v1 = d.at(1, s1, estimator.decision(1, x, z));
            double v2 = d.at(2, s2, estimator.decision(2, x, z));
            sums.d1 += v1;
            sums.d1_sq += v1 * v1;
            sums.d2 += v2;
            sums.d2_sq += v2 * v2;
            ++sums.input_counts[static_cast<size_t>(x)];
            ++sums.feedback_counts[static_cast<size_t>(x * spec.nz + z)];
        }
        blocks[static_cast<size_t>(b)] = std::move(sums);
    };

    const auto nb = static_cast<long>(n_blocks);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long b = 0; b < nb; ++b) run_block(static_cast<uint64_t>(b));
    } else {
        for (long b = 0; b < nb; ++b) run_block(static_cast<uint64_t>(b));
    }

    SimResult result;
    result.n = cfg.n;
    result.seed = cfg.seed;
    result.nx = spec.nx;
    result.nz = spec.nz;
    result.input_counts.assign(static_cast<size_t>(spec.nx), 0);
    result.feedback_counts.assign(static_cast<size_t>(spec.nx) * spec.nz, 0);
    double d1 = 0.0, d1_sq = 0.0, d2 = 0.0, d2_sq = 0.0;
    for (const auto& b : blocks) {  // fixed reduction order
        d1 += b.d1;
        d1_sq += b.d1_sq;
        d2 += b.d2;
        d2_sq += b.d2_sq;
        for (size_t i = 0; i < result.input_counts.size(); ++i) result.input_counts[i] += b.input_counts[i];
        for (size_t i = 0; i < result.feedback_counts.size(); ++i)
            result.feedback_counts[i] += b.feedback_counts[i];
    }
    auto finish = [&](double sum, double sum_sq) {
        ReceiverStats s;
        s.mean = sum / static_cast<double>(cfg.n);
        double var = std::max(sum_sq / static_cast<double>(cfg.n) - s.mean * s.mean, 0.0);
        s.std_error = std::sqrt(var / static_cast<double>(cfg.n));
        return s;
    };
    result.receiver1 = finish(d1, d1_sq);
    result.receiver2 = finish(d2, d2_sq);
    return result;
}

}  // namespace

SimResult simulate(const SdmbcSpec& spec, const EstimatorTable& estimator,
                   const DistortionMeasure& d, const SimConfig& cfg) {
    return simulate_impl(spec, estimator, d, cfg, true);
}

SimResult simulate_serial(const SdmbcSpec& spec, const EstimatorTable& estimator,
                          const DistortionMeasure& d, const SimConfig& cfg) {
    return simulate_impl(spec, estimator, d, cfg, false);
}

FeedbackStats simulate_feedback_stats(const SdmbcSpec& spec, const SimConfig& cfg) {
    // Reuse the simulation loop with a throwaway estimator and distortion.
    EstimatorTable est;
    est.nx = spec.nx;
    est.nz = spec.nz;
    size_t pairs = static_cast<size_t>(spec.nx) * spec.nz;
    est.decision1.assign(pairs, 0);
    est.decision2.assign(pairs, 0);
    est.dprime1.assign(pairs, 0.0);
    est.dprime2.assign(pairs, 0.0);
    est.reachable.assign(pairs, 1);
    DistortionMeasure d;
    d.ns1 = spec.ns1;
    d.nshat1 = 1;
    d.ns2 = spec.ns2;
    d.nshat2 = 1;
    d.d1.assign(static_cast<size_t>(spec.ns1), 0.0);
    d.d2.assign(static_cast<size_t>(spec.ns2), 0.0);

    auto sim = simulate(spec, est, d, cfg);
    FeedbackStats stats;
    stats.nx = spec.nx;
    stats.nz = spec.nz;
    stats.input_counts = sim.input_counts;
    stats.freq.assign(pairs, 0.0);
    stats.std_error.assign(pairs, 0.0);
    for (int x = 0; x < spec.nx; ++x) {
        uint64_t nx_count = sim.input_counts[static_cast<size_t>(x)];
        if (nx_count == 0) continue;
        for (int z = 0; z < spec.nz; ++z) {
            double f = static_cast<double>(sim.feedback_counts[static_cast<size_t>(x * spec.nz + z)]) /
                       static_cast<double>(nx_count);
            stats.freq[static_cast<size_t>(x * spec.nz + z)] = f;
            stats.std_error[static_cast<size_t>(x * spec.nz + z)] =
                std::sqrt(std::max(f * (1.0 - f), 0.0) / static_cast<double>(nx_count));
        }
    }
    return stats;
}

}  // namespace sdmbc
