#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sdmbc/montecarlo.hpp"

using namespace sdmbc;

TEST_CASE("simulation determinism across runs and thread counts") {
    auto spec = build_multiplicative_bc(0.6, 0.5);
    auto d = DistortionMeasure::hamming(spec);
    auto est = optimal_estimator(spec, d);
    SimConfig cfg{200000, 42, Pmf::bernoulli(0.5)};

    auto a = simulate(spec, est, d, cfg);
    auto b = simulate(spec, est, d, cfg);
    auto serial = simulate_serial(spec, est, d, cfg);
    CHECK(a.receiver1.mean == b.receiver1.mean);
    CHECK(a.receiver1.mean == serial.receiver1.mean);
    CHECK(a.receiver2.std_error == serial.receiver2.std_error);
    CHECK(a.feedback_counts == serial.feedback_counts);
    CHECK(a.input_counts == serial.input_counts);

    auto other_seed = simulate(spec, est, d, {200000, 43, Pmf::bernoulli(0.5)});
    CHECK(other_seed.receiver1.mean != a.receiver1.mean);
}

TEST_CASE("deterministic configuration gives exactly zero distortion") {
    auto spec = build_multiplicative_bc(0.6, 0.5);
    auto d = DistortionMeasure::hamming(spec);
    auto est = optimal_estimator(spec, d);
    auto result = simulate(spec, est, d, {50000, 9, Pmf::point_mass(2, 1)});
    CHECK(result.receiver1.mean == 0.0);
    CHECK(result.receiver2.mean == 0.0);
    CHECK(result.receiver1.std_error == 0.0);
}

TEST_CASE("empirical distortion approaches the analytic value") {
    auto spec = build_multiplicative_bc(0.6, 0.5);
    auto d = DistortionMeasure::hamming(spec);
    auto est = optimal_estimator(spec, d);
    auto result = simulate(spec, est, d, {1000000, 7, Pmf::bernoulli(0.5)});
    CHECK(std::abs(result.receiver1.mean - 0.2) <= 3 * result.receiver1.std_error);
    CHECK(std::abs(result.receiver2.mean - 0.15) <= 3 * result.receiver2.std_error);
}

TEST_CASE("larger samples shrink the error in at least 19 of 20 seeded trials") {
    auto spec = build_multiplicative_bc(0.6, 0.5);
    auto d = DistortionMeasure::hamming(spec);
    auto est = optimal_estimator(spec, d);
    int improved = 0;
    for (uint64_t seed = 100; seed < 120; ++seed) {
        auto small = simulate(spec, est, d, {10000, seed, Pmf::bernoulli(0.5)});
        auto large = simulate(spec, est, d, {1000000, seed, Pmf::bernoulli(0.5)});
        if (std::abs(large.receiver1.mean - 0.2) < std::abs(small.receiver1.mean - 0.2)) ++improved;
    }
    CHECK(improved >= 19);
}

TEST_CASE("empirical feedback frequencies match the marginalized kernel") {
    auto spec = build_flipping_bc(0.6, 0.5);
    auto analytic = feedback_law(spec);
    SimConfig cfg{400000, 21, Pmf::bernoulli(0.4)};
    auto stats = simulate_feedback_stats(spec, cfg);
    for (int x = 0; x < spec.nx; ++x)
        for (int z = 0; z < spec.nz; ++z) {
            double freq = stats.freq[static_cast<size_t>(x * spec.nz + z)];
            double se = stats.std_error[static_cast<size_t>(x * spec.nz + z)];
            double expect = analytic.at(x, z);
            if (se == 0.0) {
                CHECK(freq == doctest::Approx(expect).epsilon(1e-12));
            } else {
                CHECK(std::abs(freq - expect) <= 4 * se);
            }
        }
}

TEST_CASE("point-mass configuration gives a point-mass empirical feedback pmf") {
    // q = 1, gamma = 1: states are always (1,1) and the channel is
    // deterministic, so each input sees a single feedback symbol.
    auto spec = build_multiplicative_bc(1.0, 1.0);
    auto stats = simulate_feedback_stats(spec, {10000, 3, Pmf::bernoulli(0.5)});
    for (int x = 0; x < 2; ++x) {
        int z = x * 2 + x;  // y1 = y2 = x
        CHECK(stats.freq[static_cast<size_t>(x * spec.nz + z)] == 1.0);
    }
}

TEST_CASE("dueck simulation hits the closed-form anchors") {
    auto spec = build_dueck_bc(Pmf::bernoulli(0.75));
    auto d = DistortionMeasure::hamming(spec);
    auto est = optimal_estimator(spec, d);
    auto result = simulate(spec, est, d, {1000000, 11, dueck_coupled_input(0.0)});
    CHECK(std::abs(result.receiver1.mean - 5.0 / 32) <= 3 * result.receiver1.std_error);
    CHECK(std::abs(result.receiver2.mean - 5.0 / 32) <= 3 * result.receiver2.std_error);

    // feedback statistics under a coupling that exercises both input patterns
    auto stats = simulate_feedback_stats(spec, {1000000, 13, dueck_coupled_input(0.5)});
    int x_eq = dueck_input_index(0, 1, 1), x_ne = dueck_input_index(0, 0, 1);
    int z00 = dueck_feedback_index(0, 0);
    auto cell = [&](int x, int z) { return static_cast<size_t>(x * spec.nz + z); };
    CHECK(std::abs(stats.freq[cell(x_eq, z00)] - 17.0 / 32) <= 4 * stats.std_error[cell(x_eq, z00)]);
    CHECK(std::abs(stats.freq[cell(x_ne, z00)] - 0.25) <= 4 * stats.std_error[cell(x_ne, z00)]);
}

TEST_CASE("simulation validates its inputs") {
    auto spec = build_multiplicative_bc(0.6, 0.5);
    auto d = DistortionMeasure::hamming(spec);
    auto est = optimal_estimator(spec, d);
    CHECK_THROWS_AS(simulate(spec, est, d, {0, 1, Pmf::bernoulli(0.5)}), std::invalid_argument);
    CHECK_THROWS_AS(simulate(spec, est, d, {10, 1, Pmf::uniform(3)}), std::invalid_argument);
}
