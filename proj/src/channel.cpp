#include "sdmbc/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace sdmbc {

void SdmbcSpec::validate() const {
    for (int s : {nx, ny1, ny2, nz, ns1, ns2, nshat1, nshat2})
        if (s < 1) throw std::invalid_argument("SdmbcSpec: alphabet size must be >= 1");
    if (state_law.size() != ns1 * ns2)
        throw std::invalid_argument("SdmbcSpec: state law size does not match (ns1, ns2)");
    if (transition.input_shape() != std::vector<int>{ns1, ns2, nx} ||
        transition.output_shape() != std::vector<int>{ny1, ny2, nz})
        throw std::invalid_argument("SdmbcSpec: transition shapes inconsistent with alphabets");
}

namespace {

void check_unit_interval(double v, const char* what) {
    if (v < 0.0 || v > 1.0) throw std::invalid_argument(std::string(what) + " outside [0,1]");
}

Pmf multiplicative_state_law(double q, double gamma) {
    // row-major over (s1, s2)
    return Pmf({1.0 - q, 0.0, q * (1.0 - gamma), q * gamma});
}

}  // namespace

SdmbcSpec build_multiplicative_bc(double q, double gamma) {
    check_unit_interval(q, "q");
    check_unit_interval(gamma, "gamma");
    auto transition = Kernel::deterministic(
        {2, 2, 2}, {2, 2, 4}, [](const std::vector<int>& in) {
            int s1 = in[0], s2 = in[1], x = in[2];
            int y1 = x * s1, y2 = x * s2;
            int z = y1 * 2 + y2;
            return (y1 * 2 + y2) * 4 + z;
        });
    SdmbcSpec spec{2, 2, 2, 4, 2, 2, 2, 2, multiplicative_state_law(q, gamma), transition,
                   "multiplicative", {}};
    spec.validate();
    return spec;
}

SdmbcSpec build_flipping_bc(double q, double gamma) {
    check_unit_interval(q, "q");
    check_unit_interval(gamma, "gamma");
    auto transition = Kernel::deterministic(
        {2, 2, 2}, {2, 2, 4}, [](const std::vector<int>& in) {
            int s1 = in[0], s2 = in[1], x = in[2];
            int y1 = x * s1, y2 = (1 - x) * s2;
            int z = y1 * 2 + y2;
            return (y1 * 2 + y2) * 4 + z;
        });
    SdmbcSpec spec{2, 2, 2, 4, 2, 2, 2, 2, multiplicative_state_law(q, gamma), transition,
                   "flipping", {}};
    spec.validate();
    return spec;
}

SdmbcSpec build_erasure_bc(const Pmf& joint_se) {
    if (joint_se.size() != 16)
        throw std::invalid_argument("build_erasure_bc: joint law must cover (S1,S2,E1,E2) in {0,1}^4");
    // Internal state sigma_k = (s_k, e_k), index s*2 + e.
    std::vector<double> state(16, 0.0);
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (int e1 = 0; e1 < 2; ++e1)
                for (int e2 = 0; e2 < 2; ++e2) {
                    int src = ((s1 * 2 + s2) * 2 + e1) * 2 + e2;
                    int sigma1 = s1 * 2 + e1, sigma2 = s2 * 2 + e2;
                    state[static_cast<size_t>(sigma1 * 4 + sigma2)] += joint_se[src];
                }
    auto transition = Kernel::deterministic(
        {4, 4, 2}, {3, 3, 9}, [](const std::vector<int>& in) {
            int x = in[2];
            int out[2];
            int zc[2];
            for (int k = 0; k < 2; ++k) {
                int s = in[k] / 2, e = in[k] % 2;
                int y = (s == 0) ? x : 2;      // 2 encodes '?'
                zc[k] = (e == 0) ? y : 2;
                out[k] = y;
            }
            int z = zc[0] * 3 + zc[1];
            return (out[0] * 3 + out[1]) * 9 + z;
        });
    SdmbcSpec spec{2, 3, 3, 9, 4, 4, 2, 2, Pmf(std::move(state)), transition, "erasure", {}};
    spec.labels["y1"] = spec.labels["y2"] = {"0", "1", "?"};
    spec.validate();
    return spec;
}

SdmbcSpec build_dueck_bc(const Pmf& ps) {
    if (ps.size() != 2) throw std::invalid_argument("build_dueck_bc: state pmf must be binary");
    std::vector<double> state(4);
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) state[static_cast<size_t>(s1 * 2 + s2)] = ps[s1] * ps[s2];

    // X = (x0, x1, x2); Y_k = (x0, y'_k, s1, s2) with 16 symbols; Z = (y'_1, y'_2).
    // The shared noise bit N ~ Bernoulli(1/2) is marginalized into the rows.
    const int nx = 8, nyk = 16, nz = 4;
    std::vector<double> table(static_cast<size_t>(2 * 2 * nx) * (nyk * nyk * nz), 0.0);
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (int x = 0; x < nx; ++x) {
                int x0 = x / 4, x1 = (x / 2) % 2, x2 = x % 2;
                size_t row = static_cast<size_t>((s1 * 2 + s2) * nx + x);
                for (int n = 0; n < 2; ++n) {
                    int yp1 = s1 * (x1 ^ n), yp2 = s2 * (x2 ^ n);
                    int y1 = ((x0 * 2 + yp1) * 2 + s1) * 2 + s2;
                    int y2 = ((x0 * 2 + yp2) * 2 + s1) * 2 + s2;
                    int z = dueck_feedback_index(yp1, yp2);
                    size_t cell = static_cast<size_t>((y1 * nyk + y2) * nz + z);
                    table[row * (nyk * nyk * nz) + cell] += 0.5;
                }
            }
    Kernel transition({2, 2, nx}, {nyk, nyk, nz}, std::move(table));
    SdmbcSpec spec{nx, nyk, nyk, nz, 2, 2, 2, 2, Pmf(std::move(state)), transition, "dueck", {}};
    spec.validate();
    return spec;
}

NoTradeoffWitness erasure_indicator_witness() {
    NoTradeoffWitness w;
    w.psi1.resize(9);
    w.psi2.resize(9);
    for (int z = 0; z < 9; ++z) {
        w.psi1[static_cast<size_t>(z)] = (z / 3 == 2) ? 1 : 0;
        w.psi2[static_cast<size_t>(z)] = (z % 3 == 2) ? 1 : 0;
    }
    return w;
}

NoTradeoffWitness identity_witness(int nz) {
    NoTradeoffWitness w;
    w.psi1.resize(static_cast<size_t>(nz));
    w.psi2.resize(static_cast<size_t>(nz));
    for (int z = 0; z < nz; ++z) w.psi1[static_cast<size_t>(z)] = w.psi2[static_cast<size_t>(z)] = z;
    return w;
}

NoTradeoffWitness constant_witness(int nz) {
    NoTradeoffWitness w;
    w.psi1.assign(static_cast<size_t>(nz), 0);
    w.psi2.assign(static_cast<size_t>(nz), 0);
    return w;
}

LabeledJoint compose_joint(const LabeledJoint& input_law, const Pmf& state_law,
                           const Kernel& channel) {
    if (channel.input_shape().size() != 3 || channel.output_shape().size() != 3)
        throw std::invalid_argument("compose_joint: channel must map (S1,S2,X) to (Y1,Y2,Z)");
    int ns1 = channel.input_shape()[0], ns2 = channel.input_shape()[1], nx = channel.input_shape()[2];
    int ny1 = channel.output_shape()[0], ny2 = channel.output_shape()[1], nz = channel.output_shape()[2];
    if (state_law.size() != ns1 * ns2)
        throw std::invalid_argument("compose_joint: state law size mismatch");
    int x_pos = input_law.var_index("X");
    if (input_law.sizes()[static_cast<size_t>(x_pos)] != nx)
        throw std::invalid_argument("compose_joint: input X alphabet mismatch");

    std::vector<std::string> names = input_law.names();
    for (const char* n : {"S1", "S2", "Y1", "Y2", "Z"}) names.emplace_back(n);
    std::vector<int> sizes = input_law.sizes();
    for (int s : {ns1, ns2, ny1, ny2, nz}) sizes.push_back(s);

    size_t out_block = static_cast<size_t>(ny1) * ny2 * nz;
    size_t tail = static_cast<size_t>(ns1) * ns2 * out_block;
    std::vector<double> probs(input_law.cell_count() * tail, 0.0);
    std::vector<int> idx(input_law.sizes().size(), 0);
    for (size_t flat = 0; flat < input_law.cell_count(); ++flat) {
        double pin = input_law.probs()[flat];
        if (pin > 0.0) {
            int x = idx[static_cast<size_t>(x_pos)];
            for (int s1 = 0; s1 < ns1; ++s1)
                for (int s2 = 0; s2 < ns2; ++s2) {
                    double pstate = state_law[s1 * ns2 + s2];
                    if (pstate <= 0.0) continue;
                    auto row = channel.row((s1 * ns2 + s2) * nx + x);
                    size_t base = flat * tail + (static_cast<size_t>(s1) * ns2 + s2) * out_block;
                    double w = pin * pstate;
                    for (size_t c = 0; c < out_block; ++c) probs[base + c] = w * row[c];
                }
        }
        for (int v = static_cast<int>(idx.size()) - 1; v >= 0; --v) {
            auto uv = static_cast<size_t>(v);
            if (++idx[uv] < input_law.sizes()[uv]) break;
            idx[uv] = 0;
        }
    }
    return LabeledJoint(std::move(names), std::move(sizes), std::move(probs));
}

LabeledJoint compose_joint(const LabeledJoint& input_law, const SdmbcSpec& spec) {
    return compose_joint(input_law, spec.state_law, spec.transition);
}

Kernel feedback_law(const SdmbcSpec& spec) {
    std::vector<double> table(static_cast<size_t>(spec.nx) * spec.nz, 0.0);
    for (int x = 0; x < spec.nx; ++x)
        for (int s1 = 0; s1 < spec.ns1; ++s1)
            for (int s2 = 0; s2 < spec.ns2; ++s2) {
                double pstate = spec.state_law[s1 * spec.ns2 + s2];
                if (pstate <= 0.0) continue;
                auto row = spec.transition.row(spec.transition_row(s1, s2, x));
                for (int y1 = 0; y1 < spec.ny1; ++y1)
                    for (int y2 = 0; y2 < spec.ny2; ++y2)
                        for (int z = 0; z < spec.nz; ++z)
                            table[static_cast<size_t>(x) * spec.nz + z] +=
                                pstate * row[static_cast<size_t>(spec.output_cell(y1, y2, z))];
            }
    return Kernel({spec.nx}, {spec.nz}, std::move(table));
}

DegradedCheckResult check_physically_degraded(const SdmbcSpec& spec) {
    const double tol = tolerances().degraded;
    DegradedCheckResult result;
    int pair_n = spec.ny2 * spec.ns2;

    // P(s1, y1, s2, y2 | x) for each x, flattened as ((s1*ny1)+y1, (y2*ns2)+s2).
    std::vector<std::vector<double>> joint_x(static_cast<size_t>(spec.nx));
    for (int x = 0; x < spec.nx; ++x) {
        auto& j = joint_x[static_cast<size_t>(x)];
        j.assign(static_cast<size_t>(spec.ns1 * spec.ny1) * pair_n, 0.0);
        for (int s1 = 0; s1 < spec.ns1; ++s1)
            for (int s2 = 0; s2 < spec.ns2; ++s2) {
                double pstate = spec.state_law[s1 * spec.ns2 + s2];
                if (pstate <= 0.0) continue;
                auto row = spec.transition.row(spec.transition_row(s1, s2, x));
                for (int y1 = 0; y1 < spec.ny1; ++y1)
                    for (int y2 = 0; y2 < spec.ny2; ++y2) {
                        double p = 0.0;
                        for (int z = 0; z < spec.nz; ++z)
                            p += row[static_cast<size_t>(spec.output_cell(y1, y2, z))];
                        j[static_cast<size_t>(s1 * spec.ny1 + y1) * pair_n + (y2 * spec.ns2 + s2)] +=
                            pstate * p;
                    }
            }
    }

    std::vector<double> factor(static_cast<size_t>(spec.ns1 * spec.ny1) * pair_n, 0.0);
    for (int s1 = 0; s1 < spec.ns1; ++s1)
        for (int y1 = 0; y1 < spec.ny1; ++y1) {
            size_t base = static_cast<size_t>(s1 * spec.ny1 + y1) * pair_n;
            std::vector<int> reachable_x;
            std::vector<std::vector<double>> conds;
            for (int x = 0; x < spec.nx; ++x) {
                const auto& j = joint_x[static_cast<size_t>(x)];
                double mass = 0.0;
                for (int c = 0; c < pair_n; ++c) mass += j[base + static_cast<size_t>(c)];
                if (mass <= 0.0) continue;  // (s1,y1) unreachable under this x
                std::vector<double> cond(static_cast<size_t>(pair_n));
                for (int c = 0; c < pair_n; ++c)
                    cond[static_cast<size_t>(c)] = j[base + static_cast<size_t>(c)] / mass;
                reachable_x.push_back(x);
                conds.push_back(std::move(cond));
            }
            for (size_t i = 0; i < conds.size(); ++i)
                for (size_t j = i + 1; j < conds.size(); ++j)
                    for (int c = 0; c < pair_n; ++c)
                        if (std::abs(conds[i][static_cast<size_t>(c)] - conds[j][static_cast<size_t>(c)]) > tol) {
                            result.degraded = false;
                            result.violation = {s1, y1, reachable_x[i], reachable_x[j]};
                            return result;
                        }
            if (!conds.empty())
                for (int c = 0; c < pair_n; ++c) factor[base + static_cast<size_t>(c)] = conds[0][static_cast<size_t>(c)];
            else
                for (int c = 0; c < pair_n; ++c) factor[base + static_cast<size_t>(c)] = 1.0 / pair_n;
        }

    result.degraded = true;
    result.factor = Kernel({spec.ns1, spec.ny1}, {spec.ny2, spec.ns2}, std::move(factor));
    return result;
}

namespace {

Pmf dirichlet_uniform(int n, std::mt19937_64& rng) {
    std::exponential_distribution<double> exp_dist(1.0);
    std::vector<double> v(static_cast<size_t>(n));
    double sum = 0.0;
    for (double& x : v) {
        x = exp_dist(rng);
        sum += x;
    }
    for (double& x : v) x /= sum;
    return Pmf(std::move(v));
}

}  // namespace

bool check_no_tradeoff(const SdmbcSpec& spec, const NoTradeoffWitness& witness, int sample_count,
                       uint64_t seed) {
    if (static_cast<int>(witness.psi1.size()) != spec.nz ||
        static_cast<int>(witness.psi2.size()) != spec.nz)
        throw std::invalid_argument("check_no_tradeoff: witness must cover the full Z alphabet");
    const double tol = 1e-9;

    std::vector<Pmf> laws;
    for (int x = 0; x < spec.nx; ++x) laws.push_back(Pmf::point_mass(spec.nx, x));
    std::mt19937_64 rng(seed);
    for (int i = 0; i < sample_count; ++i) laws.push_back(dirichlet_uniform(spec.nx, rng));

    for (int k = 1; k <= 2; ++k) {
        const auto& psi = (k == 1) ? witness.psi1 : witness.psi2;
        const std::string sk = (k == 1) ? "S1" : "S2";
        int psi_card = 0;
        for (int v : psi) psi_card = std::max(psi_card, v + 1);

        std::vector<double> reference;  // joint of (S_k, psi) under the first law
        for (const auto& law : laws) {
            auto joint = compose_joint(LabeledJoint::from_pmf("X", law), spec);
            const int z_pos = joint.var_index("Z");
            joint = add_derived_variable(joint, "PSI", psi_card, [&](const std::vector<int>& idx) {
                return psi[static_cast<size_t>(idx[static_cast<size_t>(z_pos)])];
            });
            auto s_psi = marginalize(joint, {sk, "PSI"});
            if (reference.empty()) {
                reference = s_psi.probs();
            } else {
                for (size_t c = 0; c < reference.size(); ++c)
                    if (std::abs(reference[c] - s_psi.probs()[c]) > tol) return false;
            }
            // (S_k, psi(Z)) independent of X under this law
            auto s_psi_x = marginalize(joint, {sk, "PSI", "X"});
            int ns = s_psi.sizes()[0], np = s_psi.sizes()[1];
            for (int s = 0; s < ns; ++s)
                for (int p = 0; p < np; ++p)
                    for (int x = 0; x < spec.nx; ++x) {
                        double lhs = s_psi_x.probs()[static_cast<size_t>((s * np + p) * spec.nx + x)];
                        double rhs = s_psi.probs()[static_cast<size_t>(s * np + p)] * law[x];
                        if (std::abs(lhs - rhs) > tol) return false;
                    }
            // S_k -- psi(Z) -- (Z, X): posterior given (z, x) matches posterior given psi(z)
            auto s_z_x = marginalize(joint, {sk, "Z", "X"});
            std::vector<double> psi_mass(static_cast<size_t>(psi_card), 0.0);
            std::vector<double> psi_s(static_cast<size_t>(psi_card * ns), 0.0);
            for (int s = 0; s < ns; ++s)
                for (int z = 0; z < spec.nz; ++z)
                    for (int x = 0; x < spec.nx; ++x) {
                        double p = s_z_x.probs()[static_cast<size_t>((s * spec.nz + z) * spec.nx + x)];
                        psi_mass[static_cast<size_t>(psi[static_cast<size_t>(z)])] += p;
                        psi_s[static_cast<size_t>(psi[static_cast<size_t>(z)] * ns + s)] += p;
                    }
            for (int z = 0; z < spec.nz; ++z)
                for (int x = 0; x < spec.nx; ++x) {
                    double zx_mass = 0.0;
                    for (int s = 0; s < ns; ++s)
                        zx_mass += s_z_x.probs()[static_cast<size_t>((s * spec.nz + z) * spec.nx + x)];
                    if (zx_mass <= 0.0) continue;
                    int pv = psi[static_cast<size_t>(z)];
                    if (psi_mass[static_cast<size_t>(pv)] <= 0.0) continue;
                    for (int s = 0; s < ns; ++s) {
                        double post_zx =
                            s_z_x.probs()[static_cast<size_t>((s * spec.nz + z) * spec.nx + x)] / zx_mass;
                        double post_psi = psi_s[static_cast<size_t>(pv * ns + s)] / psi_mass[static_cast<size_t>(pv)];
                        if (std::abs(post_zx - post_psi) > tol) return false;
                    }
                }
        }
    }
    return true;
}

Pmf dueck_coupled_input(double beta) {
    check_unit_interval(beta, "beta");
    std::vector<double> p(8, 0.0);
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1)
            for (int x2 = 0; x2 < 2; ++x2)
                p[static_cast<size_t>(dueck_input_index(x0, x1, x2))] =
                    0.5 * ((x1 == x2) ? (1.0 - beta) / 2.0 : beta / 2.0);
    return Pmf(std::move(p));
}

}  // namespace sdmbc
