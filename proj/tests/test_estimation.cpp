#include <doctest.h>

#include <random>
#include <stdexcept>

#include "sdmbc/dueck.hpp"
#include "sdmbc/estimation.hpp"
#include "test_util.hpp"

using namespace sdmbc;

TEST_CASE("posterior anchors") {
    SUBCASE("multiplicative, x = 1: posterior on S1 is a point mass at y1") {
        auto spec = build_multiplicative_bc(0.6, 0.5);
        for (int y1 = 0; y1 < 2; ++y1)
            for (int y2 = 0; y2 <= y1; ++y2) {  // reachable feedbacks have y2 <= y1
                int z = y1 * 2 + y2;
                auto post = posterior_state(spec, 1, 1, z);
                CHECK(post[y1] == doctest::Approx(1.0).epsilon(1e-12));
            }
    }
    SUBCASE("dueck, z=(1,1): point mass on S1 = 1") {
        auto spec = build_dueck_bc(Pmf::bernoulli(0.75));
        for (int x1 : {0, 1}) {
            int x = dueck_input_index(0, x1, x1);
            auto post = posterior_state(spec, 1, x, dueck_feedback_index(1, 1));
            CHECK(post[1] == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("dueck, x1 != x2, z=(1,0): posterior on S2 equals the prior") {
        double ps1 = 0.7;
        auto spec = build_dueck_bc(Pmf::bernoulli(ps1));
        int x = dueck_input_index(1, 0, 1);
        auto post = posterior_state(spec, 2, x, dueck_feedback_index(1, 0));
        CHECK(post[1] == doctest::Approx(ps1).epsilon(1e-12));
    }
    SUBCASE("unreachable pair") {
        auto spec = build_multiplicative_bc(0.6, 0.5);
        CHECK_THROWS_AS(posterior_state(spec, 1, 0, 3), std::invalid_argument);  // x=0 forces z=(0,0)
    }
}

TEST_CASE("optimal estimator anchors") {
    SUBCASE("multiplicative, q = 0.6 > 1/2: shat1(0, z) = 1") {
        auto spec = build_multiplicative_bc(0.6, 0.5);
        auto est = optimal_estimator(spec, DistortionMeasure::hamming(spec));
        CHECK(est.decision(1, 0, 0) == 1);
        // receiver 2 sees P(S2=1) = 0.3 < 1/2
        CHECK(est.decision(2, 0, 0) == 0);
        // x = 1: estimate the observed output bit
        for (int y1 = 0; y1 < 2; ++y1)
            for (int y2 = 0; y2 <= y1; ++y2) {
                int z = y1 * 2 + y2;
                CHECK(est.decision(1, 1, z) == y1);
                CHECK(est.decision(2, 1, z) == y2);
            }
    }
    SUBCASE("flipping: shat2(0, (y1,y2)) = y2") {
        auto spec = build_flipping_bc(0.6, 0.5);
        auto est = optimal_estimator(spec, DistortionMeasure::hamming(spec));
        for (int y2 = 0; y2 < 2; ++y2) {
            int z = 0 * 2 + y2;  // x = 0 forces y1 = 0
            CHECK(est.decision(2, 0, z) == y2);
        }
    }
    SUBCASE("dueck, z=(0,0), x1=x2, ps1=3/4: estimate 1 since p0(1+p0) < p1") {
        auto spec = build_dueck_bc(Pmf::bernoulli(0.75));
        auto est = optimal_estimator(spec, DistortionMeasure::hamming(spec));
        int x = dueck_input_index(0, 1, 1);
        CHECK(est.decision(1, x, dueck_feedback_index(0, 0)) == 1);
        CHECK(est.decision(2, x, dueck_feedback_index(0, 0)) == 1);
    }
}

TEST_CASE("expected distortion anchors") {
    auto spec = build_multiplicative_bc(0.6, 0.5);
    auto d = DistortionMeasure::hamming(spec);
    auto est = optimal_estimator(spec, d);

    SUBCASE("always sending X = 1 gives perfect sensing") {
        auto [d1, d2] = expected_distortion(spec, Pmf::point_mass(2, 1), est, d);
        CHECK(d1 == 0.0);
        CHECK(d2 == 0.0);
    }
    SUBCASE("uniform input: D1 = (1-p) min(q, 1-q) = 0.2") {
        auto [d1, d2] = expected_distortion(spec, Pmf::bernoulli(0.5), est, d);
        CHECK(d1 == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(d2 == doctest::Approx(0.15).epsilon(1e-12));
    }
    SUBCASE("dueck at ps1 = 3/4 with equal coupled inputs: D = 5/32") {
        auto dueck = build_dueck_bc(Pmf::bernoulli(0.75));
        auto dh = DistortionMeasure::hamming(dueck);
        auto dueck_est = optimal_estimator(dueck, dh);
        auto [d1, d2] = expected_distortion(dueck, dueck_coupled_input(0.0), dueck_est, dh);
        CHECK(d1 == doctest::Approx(5.0 / 32).epsilon(1e-14));
        CHECK(d2 == doctest::Approx(5.0 / 32).epsilon(1e-14));
    }
}

TEST_CASE("estimator table does not depend on the input law") {
    // The optimal table is a function of the channel alone; the conditional
    // distortions are stable whichever law is later used for evaluation.
    auto spec = build_flipping_bc(0.7, 0.3);
    auto d = DistortionMeasure::hamming(spec);
    auto est = optimal_estimator(spec, d);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 5; ++i) {
        auto law = sdmbc_test::random_pmf(rng, 2);
        auto brute = brute_force_estimator(spec, law, d);
        auto [bd1, bd2] = expected_distortion(spec, law, brute, d);
        auto [od1, od2] = expected_distortion(spec, law, est, d);
        CHECK(od1 == doctest::Approx(bd1).epsilon(1e-12));
        CHECK(od2 == doctest::Approx(bd2).epsilon(1e-12));
    }
}

TEST_CASE("brute force agrees with the closed-form decisions on the multiplicative channel") {
    auto spec = build_multiplicative_bc(0.6, 0.5);
    auto d = DistortionMeasure::hamming(spec);
    auto est = optimal_estimator(spec, d);
    auto brute = brute_force_estimator(spec, Pmf::bernoulli(0.5), d);
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 4; ++z) {
            if (!est.is_reachable(x, z)) continue;
            CHECK(est.decision(1, x, z) == brute.decision(1, x, z));
            CHECK(est.decision(2, x, z) == brute.decision(2, x, z));
        }
}

TEST_CASE("brute force on random channels matches the symbolwise optimum") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        auto channel = sdmbc_test::make_random_channel(rng);
        auto law = sdmbc_test::random_pmf(rng, channel.spec.nx);
        auto est = optimal_estimator(channel.spec, channel.distortion);
        auto brute = brute_force_estimator(channel.spec, law, channel.distortion);
        auto [od1, od2] = expected_distortion(channel.spec, law, est, channel.distortion);
        auto [bd1, bd2] = expected_distortion(channel.spec, law, brute, channel.distortion);
        CHECK(od1 <= bd1 + 1e-12);
        CHECK(od2 <= bd2 + 1e-12);
        CHECK(od1 == doctest::Approx(bd1).epsilon(1e-12));
        CHECK(od2 == doctest::Approx(bd2).epsilon(1e-12));
    }
}

TEST_CASE("single reconstruction symbol leaves no choice") {
    std::mt19937_64 rng(123);
    auto channel = sdmbc_test::make_random_channel(rng);
    channel.spec.nshat1 = channel.spec.nshat2 = 1;
    channel.distortion.nshat1 = channel.distortion.nshat2 = 1;
    channel.distortion.d1.assign(static_cast<size_t>(channel.spec.ns1), 0.5);
    channel.distortion.d2.assign(static_cast<size_t>(channel.spec.ns2), 0.5);
    auto law = sdmbc_test::random_pmf(rng, channel.spec.nx);
    auto est = optimal_estimator(channel.spec, channel.distortion);
    auto brute = brute_force_estimator(channel.spec, law, channel.distortion);
    CHECK(est.decision1 == brute.decision1);
    CHECK(est.decision2 == brute.decision2);
}

TEST_CASE("brute force enumeration limit") {
    auto spec = build_dueck_bc(Pmf::bernoulli(0.5));  // 8 * 4 = 32 pairs, 2^32 tables
    auto d = DistortionMeasure::hamming(spec);
    CHECK_THROWS_AS(brute_force_estimator(spec, dueck_coupled_input(0.5), d), std::invalid_argument);
}

TEST_CASE("output feedback with no erasures gives zero distortion") {
    std::vector<double> law(16, 0.0);
    // independent S_k ~ Bernoulli(0.4), E1 = E2 = 0
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            double p = (s1 ? 0.4 : 0.6) * (s2 ? 0.4 : 0.6);
            law[static_cast<size_t>(((s1 * 2 + s2) * 2 + 0) * 2 + 0)] = p;
        }
    auto spec = build_erasure_bc(Pmf(std::move(law)));
    auto d = DistortionMeasure::erasure_state_component();
    auto est = optimal_estimator(spec, d);
    auto [d1, d2] = expected_distortion(spec, Pmf::bernoulli(0.5), est, d);
    CHECK(d1 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(d2 == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("appendix-style conditional distortions match the generic estimator") {
    // smaller version of the acceptance sweep
    for (double ps1 : {0.25, 0.5, 0.75}) {
        auto spec = build_dueck_bc(Pmf::bernoulli(ps1));
        auto d = DistortionMeasure::hamming(spec);
        auto est = optimal_estimator(spec, d);
        for (int k = 1; k <= 2; ++k)
            for (int pattern = 0; pattern < 2; ++pattern) {
                bool x_equal = pattern == 0;
                int x = x_equal ? dueck_input_index(0, 1, 1) : dueck_input_index(0, 0, 1);
                for (int z1 = 0; z1 < 2; ++z1)
                    for (int z2 = 0; z2 < 2; ++z2) {
                        int z = dueck_feedback_index(z1, z2);
                        if (!est.is_reachable(x, z)) continue;
                        CHECK(est.dprime(k, x, z) ==
                              doctest::Approx(dueck_cond_distortion(ps1, k, x_equal, z1, z2))
                                  .epsilon(1e-12));
                    }
            }
    }
}
