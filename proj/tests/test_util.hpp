#pragma once

#include <random>
#include <vector>

#include "sdmbc/estimation.hpp"

namespace sdmbc_test {

struct RandomChannel {
    sdmbc::SdmbcSpec spec;
    sdmbc::DistortionMeasure distortion;
};

// Random channel with alphabets of size <= 3 (states/inputs >= 2), strictly
// positive Dirichlet rows, and a random non-negative distortion matrix.
inline RandomChannel make_random_channel(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> size23(2, 3);
    std::uniform_int_distribution<int> size13(1, 3);
    std::exponential_distribution<double> exp_dist(1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    int nx = size23(rng), nz = size13(rng);
    int ny1 = size13(rng), ny2 = size13(rng);
    int ns1 = size23(rng), ns2 = size23(rng);
    int nshat1 = size23(rng), nshat2 = size23(rng);

    auto dirichlet = [&](int n) {
        std::vector<double> p(static_cast<size_t>(n));
        double sum = 0.0;
        for (double& v : p) {
            v = exp_dist(rng);
            sum += v;
        }
        for (double& v : p) v /= sum;
        return p;
    };

    std::vector<double> table;
    for (int row = 0; row < ns1 * ns2 * nx; ++row) {
        auto r = dirichlet(ny1 * ny2 * nz);
        table.insert(table.end(), r.begin(), r.end());
    }
    sdmbc::SdmbcSpec spec{nx,
                          ny1,
                          ny2,
                          nz,
                          ns1,
                          ns2,
                          nshat1,
                          nshat2,
                          sdmbc::Pmf(dirichlet(ns1 * ns2)),
                          sdmbc::Kernel({ns1, ns2, nx}, {ny1, ny2, nz}, std::move(table)),
                          "random",
                          {}};

    sdmbc::DistortionMeasure d;
    d.ns1 = ns1;
    d.nshat1 = nshat1;
    d.ns2 = ns2;
    d.nshat2 = nshat2;
    d.d1.resize(static_cast<size_t>(ns1) * nshat1);
    d.d2.resize(static_cast<size_t>(ns2) * nshat2);
    for (double& v : d.d1) v = unit(rng);
    for (double& v : d.d2) v = unit(rng);
    return {std::move(spec), std::move(d)};
}

inline sdmbc::Pmf random_pmf(std::mt19937_64& rng, int n) {
    std::exponential_distribution<double> exp_dist(1.0);
    std::vector<double> p(static_cast<size_t>(n));
    double sum = 0.0;
    for (double& v : p) {
        v = exp_dist(rng);
        sum += v;
    }
    for (double& v : p) v /= sum;
    return sdmbc::Pmf(std::move(p));
}

}  // namespace sdmbc_test
