#include "sdmbc/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace sdmbc {

void DistortionMeasure::validate() const {
    if (d1.size() != static_cast<size_t>(ns1) * nshat1 || d2.size() != static_cast<size_t>(ns2) * nshat2)
        throw std::invalid_argument("DistortionMeasure: matrix sizes inconsistent");
    for (const auto* m : {&d1, &d2})
        for (double v : *m)
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("DistortionMeasure: entries must be finite and >= 0");
}

DistortionMeasure DistortionMeasure::hamming(const SdmbcSpec& spec) {
    DistortionMeasure d;
    d.ns1 = spec.ns1;
    d.nshat1 = spec.nshat1;
    d.ns2 = spec.ns2;
    d.nshat2 = spec.nshat2;
    if (d.ns1 != d.nshat1 || d.ns2 != d.nshat2)
        throw std::invalid_argument("hamming distortion needs matching state/reconstruction alphabets");
    d.d1.assign(static_cast<size_t>(d.ns1) * d.nshat1, 1.0);
    d.d2.assign(static_cast<size_t>(d.ns2) * d.nshat2, 1.0);
    for (int s = 0; s < d.ns1; ++s) d.d1[static_cast<size_t>(s * d.nshat1 + s)] = 0.0;
    for (int s = 0; s < d.ns2; ++s) d.d2[static_cast<size_t>(s * d.nshat2 + s)] = 0.0;
    return d;
}

DistortionMeasure DistortionMeasure::erasure_state_component() {
    DistortionMeasure d;
    d.ns1 = d.ns2 = 4;  // (s, e) pairs, index s*2 + e
    d.nshat1 = d.nshat2 = 2;
    d.d1.resize(8);
    for (int sigma = 0; sigma < 4; ++sigma)
        for (int shat = 0; shat < 2; ++shat)
            d.d1[static_cast<size_t>(sigma * 2 + shat)] = (sigma / 2 == shat) ? 0.0 : 1.0;
    d.d2 = d.d1;
    return d;
}

namespace {

// P(x fixed: z, s_k) tables. joint[k-1][ (x*nz + z)*ns_k + s ] = P(s_k, z | x).
struct StateFeedbackJoints {
    std::vector<double> j1, j2;  // conditioned on x, joint with z
};

StateFeedbackJoints state_feedback_joints(const SdmbcSpec& spec) {
    StateFeedbackJoints out;
    out.j1.assign(static_cast<size_t>(spec.nx) * spec.nz * spec.ns1, 0.0);
    out.j2.assign(static_cast<size_t>(spec.nx) * spec.nz * spec.ns2, 0.0);
    for (int s1 = 0; s1 < spec.ns1; ++s1)
        for (int s2 = 0; s2 < spec.ns2; ++s2) {
            double pstate = spec.state_law[s1 * spec.ns2 + s2];
            if (pstate <= 0.0) continue;
            for (int x = 0; x < spec.nx; ++x) {
                auto row = spec.transition.row(spec.transition_row(s1, s2, x));
                for (int y1 = 0; y1 < spec.ny1; ++y1)
                    for (int y2 = 0; y2 < spec.ny2; ++y2)
                        for (int z = 0; z < spec.nz; ++z) {
                            double p = pstate * row[static_cast<size_t>(spec.output_cell(y1, y2, z))];
                            if (p <= 0.0) continue;
                            out.j1[(static_cast<size_t>(x) * spec.nz + z) * spec.ns1 + s1] += p;
                            out.j2[(static_cast<size_t>(x) * spec.nz + z) * spec.ns2 + s2] += p;
                        }
            }
        }
    return out;
}

}  // namespace

Pmf posterior_state(const SdmbcSpec& spec, int k, int x, int z) {
    if (k != 1 && k != 2) throw std::invalid_argument("posterior_state: receiver must be 1 or 2");
    if (x < 0 || x >= spec.nx || z < 0 || z >= spec.nz)
        throw std::invalid_argument("posterior_state: (x, z) out of range");
    auto joints = state_feedback_joints(spec);
    const auto& j = (k == 1) ? joints.j1 : joints.j2;
    int ns = spec.state_size(k);
    double mass = 0.0;
    std::vector<double> post(static_cast<size_t>(ns));
    for (int s = 0; s < ns; ++s) {
        post[static_cast<size_t>(s)] = j[(static_cast<size_t>(x) * spec.nz + z) * ns + s];
        mass += post[static_cast<size_t>(s)];
    }
    if (mass <= 0.0)
        throw std::invalid_argument("posterior_state: unreachable (x, z) pair");
    for (double& p : post) p /= mass;
    return Pmf(std::move(post));
}

EstimatorTable optimal_estimator(const SdmbcSpec& spec, const DistortionMeasure& d) {
    d.validate();
    auto joints = state_feedback_joints(spec);
    EstimatorTable table;
    table.nx = spec.nx;
    table.nz = spec.nz;
    size_t pairs = static_cast<size_t>(spec.nx) * spec.nz;
    table.decision1.assign(pairs, 0);
    table.decision2.assign(pairs, 0);
    table.dprime1.assign(pairs, 0.0);
    table.dprime2.assign(pairs, 0.0);
    table.reachable.assign(pairs, 0);

    for (int x = 0; x < spec.nx; ++x)
        for (int z = 0; z < spec.nz; ++z) {
            size_t pair = static_cast<size_t>(x) * spec.nz + z;
            for (int k = 1; k <= 2; ++k) {
                const auto& j = (k == 1) ? joints.j1 : joints.j2;
                int ns = spec.state_size(k), nshat = spec.recon_size(k);
                double mass = 0.0;
                for (int s = 0; s < ns; ++s) mass += j[pair * ns + s];
                if (mass <= 0.0) continue;  // unreachable: keep shat = 0, d' = 0
                table.reachable[pair] = 1;
                int best = 0;
                double best_cost = 0.0;
                for (int shat = 0; shat < nshat; ++shat) {
                    double cost = 0.0;
                    for (int s = 0; s < ns; ++s) cost += j[pair * ns + s] * d.at(k, s, shat);
                    if (shat == 0 || cost < best_cost) {
                        best = shat;
                        best_cost = cost;
                    }
                }
                if (k == 1) {
                    table.decision1[pair] = best;
                    table.dprime1[pair] = best_cost / mass;
                } else {
                    table.decision2[pair] = best;
                    table.dprime2[pair] = best_cost / mass;
                }
            }
        }
    return table;
}

std::pair<double, double> expected_distortion(const SdmbcSpec& spec, const Pmf& input_law,
                                              const EstimatorTable& estimator,
                                              const DistortionMeasure& d) {
    if (input_law.size() != spec.nx)
        throw std::invalid_argument("expected_distortion: input law alphabet mismatch");
    if (estimator.nx != spec.nx || estimator.nz != spec.nz)
        throw std::invalid_argument("expected_distortion: estimator shape mismatch");
    double d1 = 0.0, d2 = 0.0;
    for (int x = 0; x < spec.nx; ++x) {
        double px = input_law[x];
        if (px <= 0.0) continue;
        for (int s1 = 0; s1 < spec.ns1; ++s1)
            for (int s2 = 0; s2 < spec.ns2; ++s2) {
                double w = px * spec.state_law[s1 * spec.ns2 + s2];
                if (w <= 0.0) continue;
                auto row = spec.transition.row(spec.transition_row(s1, s2, x));
                for (int y1 = 0; y1 < spec.ny1; ++y1)
                    for (int y2 = 0; y2 < spec.ny2; ++y2)
                        for (int z = 0; z < spec.nz; ++z) {
                            double p = w * row[static_cast<size_t>(spec.output_cell(y1, y2, z))];
                            if (p <= 0.0) continue;
                            d1 += p * d.at(1, s1, estimator.decision(1, x, z));
                            d2 += p * d.at(2, s2, estimator.decision(2, x, z));
                        }
            }
    }
    return {d1, d2};
}

EstimatorTable brute_force_estimator(const SdmbcSpec& spec, const Pmf& input_law,
                                     const DistortionMeasure& d, double max_enumeration) {
    d.validate();
    size_t pairs = static_cast<size_t>(spec.nx) * spec.nz;

    // Cost of deciding shat on pair (x,z) for receiver k, weighted by the
    // joint P(x, z, s_k), summed directly from the channel tables.
    auto pair_costs = [&](int k) {
        int nshat = spec.recon_size(k);
        std::vector<double> cost(pairs * static_cast<size_t>(nshat), 0.0);
        for (int x = 0; x < spec.nx; ++x) {
            double px = input_law[x];
            if (px <= 0.0) continue;
            for (int s1 = 0; s1 < spec.ns1; ++s1)
                for (int s2 = 0; s2 < spec.ns2; ++s2) {
                    double w = px * spec.state_law[s1 * spec.ns2 + s2];
                    if (w <= 0.0) continue;
                    int sk = (k == 1) ? s1 : s2;
                    auto row = spec.transition.row(spec.transition_row(s1, s2, x));
                    for (int y1 = 0; y1 < spec.ny1; ++y1)
                        for (int y2 = 0; y2 < spec.ny2; ++y2)
                            for (int z = 0; z < spec.nz; ++z) {
                                double p = w * row[static_cast<size_t>(spec.output_cell(y1, y2, z))];
                                if (p <= 0.0) continue;
                                size_t pair = static_cast<size_t>(x) * spec.nz + z;
                                for (int shat = 0; shat < nshat; ++shat)
                                    cost[pair * static_cast<size_t>(nshat) + static_cast<size_t>(shat)] +=
                                        p * d.at(k, sk, shat);
                            }
                }
        }
        return cost;
    };

    EstimatorTable table;
    table.nx = spec.nx;
    table.nz = spec.nz;
    table.decision1.assign(pairs, 0);
    table.decision2.assign(pairs, 0);
    table.dprime1.assign(pairs, 0.0);
    table.dprime2.assign(pairs, 0.0);
    table.reachable.assign(pairs, 0);

    for (int k = 1; k <= 2; ++k) {
        int nshat = spec.recon_size(k);
        double count = std::pow(static_cast<double>(nshat), static_cast<double>(pairs));
        if (count > max_enumeration)
            throw std::invalid_argument("brute_force_estimator: enumeration limit exceeded");
        auto cost = pair_costs(k);
        std::vector<int> assignment(pairs, 0), best_assignment(pairs, 0);
        double best = -1.0;
        // Lexicographic enumeration (last pair fastest) with strict improvement
        // keeps the lowest-index assignment among ties.
        while (true) {
            double total = 0.0;
            for (size_t p = 0; p < pairs; ++p)
                total += cost[p * static_cast<size_t>(nshat) + static_cast<size_t>(assignment[p])];
            if (best < 0.0 || total < best) {
                best = total;
                best_assignment = assignment;
            }
            int pos = static_cast<int>(pairs) - 1;
            while (pos >= 0 && ++assignment[static_cast<size_t>(pos)] == nshat) {
                assignment[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        auto& decision = (k == 1) ? table.decision1 : table.decision2;
        decision = best_assignment;
    }

    // Fill reachability and conditional distortions for the chosen decisions.
    auto joints = state_feedback_joints(spec);
    for (int x = 0; x < spec.nx; ++x)
        for (int z = 0; z < spec.nz; ++z) {
            size_t pair = static_cast<size_t>(x) * spec.nz + z;
            for (int k = 1; k <= 2; ++k) {
                const auto& j = (k == 1) ? joints.j1 : joints.j2;
                int ns = spec.state_size(k);
                double mass = 0.0, cost = 0.0;
                int shat = (k == 1) ? table.decision1[pair] : table.decision2[pair];
                for (int s = 0; s < ns; ++s) {
                    mass += j[pair * ns + s];
                    cost += j[pair * ns + s] * d.at(k, s, shat);
                }
                if (mass <= 0.0) {
                    if (k == 1) table.decision1[pair] = 0;
                    else table.decision2[pair] = 0;
                    continue;
                }
                table.reachable[pair] = 1;
                if (k == 1) table.dprime1[pair] = cost / mass;
                else table.dprime2[pair] = cost / mass;
            }
        }
    return table;
}

}  // namespace sdmbc
