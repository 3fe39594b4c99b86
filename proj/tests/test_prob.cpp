#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sdmbc/channel.hpp"
#include "sdmbc/prob.hpp"

using namespace sdmbc;

namespace {

// Independent high-precision evaluation of the binary entropy formula.
long double binary_entropy_oracle(long double p) {
    long double h = 0.0L;
    if (p > 0.0L) h -= p * std::log2(p);
    if (p < 1.0L) h -= (1.0L - p) * std::log2(1.0L - p);
    return h;
}

LabeledJoint random_joint(std::mt19937_64& rng, const std::vector<std::string>& names,
                          const std::vector<int>& sizes) {
    size_t n = 1;
    for (int s : sizes) n *= static_cast<size_t>(s);
    std::exponential_distribution<double> exp_dist(1.0);
    std::vector<double> p(n);
    double sum = 0.0;
    for (double& v : p) {
        v = exp_dist(rng);
        sum += v;
    }
    for (double& v : p) v /= sum;
    return LabeledJoint(names, sizes, std::move(p));
}

}  // namespace

TEST_CASE("binary entropy anchors") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.0) == 0.0);
    // frozen from the long-double oracle
    CHECK(binary_entropy(0.48) ==
          doctest::Approx(static_cast<double>(binary_entropy_oracle(0.48L))).epsilon(1e-14));
    CHECK(binary_entropy(0.48) == doctest::Approx(0.998845535995).epsilon(1e-12));
    CHECK_THROWS_AS(binary_entropy(-0.01), std::domain_error);
    CHECK_THROWS_AS(binary_entropy(1.01), std::domain_error);
}

TEST_CASE("entropy basics") {
    auto uniform = LabeledJoint::from_pmf("A", Pmf::uniform(2));
    CHECK(entropy(uniform, {"A"}) == doctest::Approx(1.0));
    auto deterministic = LabeledJoint::from_pmf("A", Pmf::point_mass(3, 1));
    CHECK(entropy(deterministic, {"A"}) == 0.0);
    auto bern = LabeledJoint::from_pmf("A", Pmf::bernoulli(0.6));
    CHECK(entropy(bern, {"A"}) == doctest::Approx(0.9709506).epsilon(1e-7));
    CHECK_THROWS_AS(entropy(bern, {"B"}), std::invalid_argument);
}

TEST_CASE("conditional mutual information basics") {
    // independent A, B
    auto ab = LabeledJoint::product(LabeledJoint::from_pmf("A", Pmf::bernoulli(0.3)),
                                    LabeledJoint::from_pmf("B", Pmf::bernoulli(0.7)));
    CHECK(cond_mutual_information(ab, {"A"}, {"B"}, {}) == doctest::Approx(0.0).epsilon(1e-12));

    // A = B uniform binary
    LabeledJoint equal({"A", "B"}, {2, 2}, {0.5, 0.0, 0.0, 0.5});
    CHECK(cond_mutual_information(equal, {"A"}, {"B"}, {}) == doctest::Approx(1.0));

    CHECK_THROWS_AS(cond_mutual_information(equal, {"A"}, {"A"}, {}), std::invalid_argument);
}

TEST_CASE("mutual information on the multiplicative channel matches q*Hb(1/2)") {
    // Brute-force construction of the joint of (X, S1, Y1) with U = X.
    double q = 0.6, gamma = 0.5;
    auto spec = build_multiplicative_bc(q, gamma);
    auto joint = compose_joint(LabeledJoint::from_pmf("X", Pmf::bernoulli(0.5)), spec);
    CHECK(cond_mutual_information(joint, {"X"}, {"Y1"}, {"S1"}) ==
          doctest::Approx(q * binary_entropy(0.5)).epsilon(1e-12));
}

TEST_CASE("compose_joint factorization properties") {
    auto spec = build_multiplicative_bc(0.6, 0.5);
    auto input = LabeledJoint::product(LabeledJoint::from_pmf("U", Pmf::bernoulli(0.3)),
                                       LabeledJoint::from_pmf("X", Pmf::bernoulli(0.5)));
    auto joint = compose_joint(input, spec);

    // inputs and states independent: marginal over (X, S1) is a product
    auto xs = marginalize(joint, {"X", "S1"});
    auto xm = marginalize(joint, {"X"});
    auto sm = marginalize(joint, {"S1"});
    for (int x = 0; x < 2; ++x)
        for (int s = 0; s < 2; ++s)
            CHECK(xs.probs()[static_cast<size_t>(x * 2 + s)] ==
                  doctest::Approx(xm.probs()[static_cast<size_t>(x)] * sm.probs()[static_cast<size_t>(s)])
                      .epsilon(1e-12));
    CHECK(cond_mutual_information(joint, {"U", "X"}, {"S1", "S2"}, {}) ==
          doctest::Approx(0.0).epsilon(1e-10));

    // P(Y1 = 1) = P(X = 1) P(S1 = 1)
    auto y1 = marginalize(joint, {"Y1"});
    CHECK(y1.probs()[1] == doctest::Approx(0.5 * 0.6).epsilon(1e-12));

    // state marginal preserved exactly
    auto states = marginalize(joint, {"S1", "S2"});
    for (int i = 0; i < 4; ++i)
        CHECK(states.probs()[static_cast<size_t>(i)] == doctest::Approx(spec.state_law[i]).epsilon(1e-15));
}

TEST_CASE("compose_joint with a degenerate state law mixes the (0,0) rows") {
    // All state mass on (s1,s2) = (0,0): the Z marginal equals the x-weighted
    // mix of the corresponding transition rows.
    auto spec = build_multiplicative_bc(0.0, 0.5);  // q = 0 pins states at (0,0)
    auto joint = compose_joint(LabeledJoint::from_pmf("X", Pmf::bernoulli(0.25)), spec);
    auto z = marginalize(joint, {"Z"});
    std::vector<double> expect(4, 0.0);
    for (int x = 0; x < 2; ++x) {
        auto row = spec.transition.row(spec.transition_row(0, 0, x));
        double px = (x == 1) ? 0.25 : 0.75;
        for (int y1 = 0; y1 < 2; ++y1)
            for (int y2 = 0; y2 < 2; ++y2)
                for (int zz = 0; zz < 4; ++zz)
                    expect[static_cast<size_t>(zz)] +=
                        px * row[static_cast<size_t>(spec.output_cell(y1, y2, zz))];
    }
    for (int zz = 0; zz < 4; ++zz)
        CHECK(z.probs()[static_cast<size_t>(zz)] == doctest::Approx(expect[static_cast<size_t>(zz)]));
}

TEST_CASE("marginalize and condition") {
    std::mt19937_64 rng(42);
    auto joint = random_joint(rng, {"A", "B", "C"}, {2, 3, 2});

    auto all = marginalize(joint, {"A", "B", "C"});
    double total = 0.0;
    for (double p : all.probs()) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // law of total probability: P(A) = sum_b P(A|B=b) P(B=b)
    auto pa = marginalize(joint, {"A"});
    auto pb = marginalize(joint, {"B"});
    std::vector<double> reconstructed(2, 0.0);
    for (int b = 0; b < 3; ++b) {
        auto given_b = condition(joint, {{"B", b}});
        auto pa_given_b = marginalize(given_b, {"A"});
        for (int a = 0; a < 2; ++a)
            reconstructed[static_cast<size_t>(a)] +=
                pa_given_b.probs()[static_cast<size_t>(a)] * pb.probs()[static_cast<size_t>(b)];
    }
    for (int a = 0; a < 2; ++a)
        CHECK(reconstructed[static_cast<size_t>(a)] ==
              doctest::Approx(pa.probs()[static_cast<size_t>(a)]).epsilon(1e-12));

    LabeledJoint zero({"A", "B"}, {2, 2}, {0.5, 0.0, 0.5, 0.0});
    CHECK_THROWS_AS(condition(zero, {{"B", 1}}), std::invalid_argument);
}

TEST_CASE("dueck posterior: z=(1,1) pins S1 = 1") {
    auto spec = build_dueck_bc(Pmf::bernoulli(0.75));
    auto joint = compose_joint(LabeledJoint::from_pmf("X", dueck_coupled_input(0.25)), spec);
    auto post = condition(joint, {{"Z", dueck_feedback_index(1, 1)}});
    auto s1 = marginalize(post, {"S1"});
    CHECK(s1.probs()[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("chain rule on random joints") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto joint = random_joint(rng, {"A", "B", "C"}, {2, 2, 3});
        double lhs = cond_mutual_information(joint, {"A"}, {"B", "C"}, {});
        double rhs = cond_mutual_information(joint, {"A"}, {"B"}, {}) +
                     cond_mutual_information(joint, {"A"}, {"C"}, {"B"});
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("pmf and kernel validation") {
    CHECK_THROWS_AS(Pmf({0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(Pmf({1.5, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Kernel({2}, {2}, {0.9, 0.0, 0.5, 0.5}), std::invalid_argument);
    CHECK_NOTHROW(Kernel({2}, {2}, {1.0, 0.0, 0.5, 0.5}));
}
