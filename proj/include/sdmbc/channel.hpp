#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdmbc/prob.hpp"

namespace sdmbc {

/// A state-dependent memoryless broadcast channel with generalized feedback:
/// alphabets, the joint state law over (S1,S2), and the transition kernel
/// (S1,S2,X) -> (Y1,Y2,Z).
struct SdmbcSpec {
    int nx, ny1, ny2, nz, ns1, ns2, nshat1, nshat2;
    Pmf state_law;       // over (s1, s2), row-major
    Kernel transition;   // input shape {ns1, ns2, nx}, output shape {ny1, ny2, nz}
    std::string name;
    std::map<std::string, std::vector<std::string>> labels;  // optional per-alphabet symbol labels

    /// Throws std::invalid_argument if sizes and tables are inconsistent.
    void validate() const;

    int transition_row(int s1, int s2, int x) const { return (s1 * ns2 + s2) * nx + x; }
    int output_cell(int y1, int y2, int z) const { return (y1 * ny2 + y2) * nz + z; }

    int state_size(int k) const { return k == 1 ? ns1 : ns2; }
    int recon_size(int k) const { return k == 1 ? nshat1 : nshat2; }
};

/// Y_k = X * S_k with output feedback Z = (Y1, Y2); states distributed as
/// {(0,0): 1-q, (0,1): 0, (1,0): q(1-gamma), (1,1): q*gamma}.
SdmbcSpec build_multiplicative_bc(double q, double gamma);

/// Same state law, but Y1 = X * S1 and Y2 = (1-X) * S2; Z = (Y1, Y2).
SdmbcSpec build_flipping_bc(double q, double gamma);

/// Erasure broadcast channel with per-receiver erasure of the feedback.
/// joint_se is a pmf over (S1,S2,E1,E2) in {0,1}^4, row-major. Internally the
/// per-receiver state is the pair (S_k, E_k), index s*2+e; Y_k in {0,1,?}
/// with ? = 2; Z = (Z1,Z2) flattened with Z_k in {0,1,?}.
SdmbcSpec build_erasure_bc(const Pmf& joint_se);

/// Three-bit-input broadcast channel X = (X0,X1,X2) where a shared
/// Bernoulli(1/2) noise bit corrupts X1 and X2 and binary states gate the
/// noisy bits: Y'_k = S_k * (X_k xor N). Outputs Y_k = (X0, Y'_k, S1, S2);
/// feedback Z = (Y'_1, Y'_2). States are i.i.d. with P(S_k = 1) = ps[1].
SdmbcSpec build_dueck_bc(const Pmf& ps);

/// Input index helpers for the three-bit channel.
inline int dueck_input_index(int x0, int x1, int x2) { return x0 * 4 + x1 * 2 + x2; }
inline int dueck_feedback_index(int yp1, int yp2) { return yp1 * 2 + yp2; }

/// Feedback relabeling functions used by the no-tradeoff test; one total map
/// per receiver, defined on the full Z alphabet.
struct NoTradeoffWitness {
    std::vector<int> psi1, psi2;
};

/// psi_k(z) = 1 iff component z_k of the erasure channel's feedback is '?'.
NoTradeoffWitness erasure_indicator_witness();
/// psi_k(z) = z (no relabeling).
NoTradeoffWitness identity_witness(int nz);
/// psi_k(z) = 0 for every z.
NoTradeoffWitness constant_witness(int nz);

struct DegradedCheckResult {
    bool degraded = false;
    /// P(Y2,S2 | S1,Y1) when degraded; rows for unreachable (s1,y1) are uniform.
    std::optional<Kernel> factor;
    /// Violating (s1, y1, x, x') when not degraded.
    std::array<int, 4> violation{-1, -1, -1, -1};
};

/// Tests whether receiver 2's observation (S2,Y2) depends on the input only
/// through (S1,Y1): for every reachable (s1,y1) the conditional P(Y2,S2|s1,y1,x)
/// must not depend on x (within tolerances().degraded per entry).
DegradedCheckResult check_physically_degraded(const SdmbcSpec& spec);

/// Numerically verifies the two no-tradeoff conditions for the given witness:
/// (i) the joint of (S_k, psi_k(Z)) is the same under every input law and
/// independent of X, (ii) S_k depends on (Z,X) only through psi_k(Z). Checked
/// for every point-mass input law plus sample_count seeded Dirichlet draws.
bool check_no_tradeoff(const SdmbcSpec& spec, const NoTradeoffWitness& witness, int sample_count,
                       uint64_t seed);

/// Joint law of (aux..., X, S1, S2, Y1, Y2, Z) under the product
/// factorization P(aux,X) * P(S1,S2) * P(Y1,Y2,Z | S1,S2,X). The input law
/// must contain a variable named "X" of matching size.
LabeledJoint compose_joint(const LabeledJoint& input_law, const Pmf& state_law,
                           const Kernel& channel);
LabeledJoint compose_joint(const LabeledJoint& input_law, const SdmbcSpec& spec);

/// P(Z | X) with the states and the receiver outputs marginalized out.
Kernel feedback_law(const SdmbcSpec& spec);

/// Coupled three-bit input law: X0 ~ Bernoulli(1/2) independent of (X1,X2),
/// X1 = X2 with probability 1 - beta (each value equally likely), X1 != X2
/// with probability beta (each pattern equally likely).
Pmf dueck_coupled_input(double beta);

}  // namespace sdmbc
