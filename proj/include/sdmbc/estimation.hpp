#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sdmbc/channel.hpp"

namespace sdmbc {

/// Per-receiver distortion matrices d_k(s, shat), non-negative and finite.
struct DistortionMeasure {
    int ns1, nshat1, ns2, nshat2;
    std::vector<double> d1, d2;  // row-major (s, shat)

    double at(int k, int s, int shat) const {
        return k == 1 ? d1[static_cast<size_t>(s * nshat1 + shat)]
                      : d2[static_cast<size_t>(s * nshat2 + shat)];
    }

    /// Hamming distortion on both receivers (requires nshat_k == ns_k).
    static DistortionMeasure hamming(const SdmbcSpec& spec);
    /// For the erasure channel: the state alphabet is (s, e) pairs but the
    /// distortion counts errors on the s component only.
    static DistortionMeasure erasure_state_component();

    void validate() const;
};

/// Deterministic symbolwise estimator: one reconstruction per reachable
/// (x, z) pair per receiver, plus the conditional expected distortion d'
/// achieved on that pair. Unreachable pairs get reconstruction 0 and d' = 0.
struct EstimatorTable {
    int nx = 0, nz = 0;
    std::vector<int> decision1, decision2;     // (x*nz + z) -> shat
    std::vector<double> dprime1, dprime2;      // conditional distortion per pair
    std::vector<uint8_t> reachable;            // P(z | x) > 0

    int decision(int k, int x, int z) const {
        return (k == 1 ? decision1 : decision2)[static_cast<size_t>(x * nz + z)];
    }
    double dprime(int k, int x, int z) const {
        return (k == 1 ? dprime1 : dprime2)[static_cast<size_t>(x * nz + z)];
    }
    bool is_reachable(int x, int z) const { return reachable[static_cast<size_t>(x * nz + z)] != 0; }
};

/// Posterior P(S_k | X = x, Z = z); independent of the input law because the
/// states are independent of the inputs. Throws std::invalid_argument when
/// P(z | x) = 0.
Pmf posterior_state(const SdmbcSpec& spec, int k, int x, int z);

/// The distortion-minimizing symbolwise estimator: for every reachable pair,
/// argmin over reconstructions of the posterior expected distortion, ties
/// broken towards the lowest reconstruction index.
EstimatorTable optimal_estimator(const SdmbcSpec& spec, const DistortionMeasure& d);

/// E[d_k(S_k, shat_k(X,Z))] under input_law x state law x channel, by exact
/// summation over all tuples.
std::pair<double, double> expected_distortion(const SdmbcSpec& spec, const Pmf& input_law,
                                              const EstimatorTable& estimator,
                                              const DistortionMeasure& d);

/// Enumerates every deterministic symbolwise estimator per receiver and
/// returns one minimizing the expected distortion under input_law. Throws if
/// the enumeration count |Shat|^(|X||Z|) exceeds max_enumeration.
EstimatorTable brute_force_estimator(const SdmbcSpec& spec, const Pmf& input_law,
                                     const DistortionMeasure& d,
                                     double max_enumeration = 1e7);

}  // namespace sdmbc
