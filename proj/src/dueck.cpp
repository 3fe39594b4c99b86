#include "sdmbc/dueck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdmbc {

namespace {

void check_ps1(double ps1) {
    if (ps1 < 0.0 || ps1 > 1.0) throw std::domain_error("state probability outside [0,1]");
}

}  // namespace

int dueck_regime(double ps1) {
    check_ps1(ps1);
    double p0 = 1.0 - ps1;
    if (ps1 <= p0) return 1;
    if (ps1 <= p0 * (1.0 + p0)) return 2;
    return 3;
}

double dueck_distortion_floor(double ps1, double beta) {
    check_ps1(ps1);
    if (beta < 0.0 || beta > 1.0) throw std::domain_error("beta outside [0,1]");
    double p0 = 1.0 - ps1;
    return 0.5 * (1.0 - beta) * std::min(ps1, p0 * (1.0 + p0)) +
           0.5 * beta * ps1 * (p0 + std::min(p0, ps1));
}

double dueck_min_distortion(double ps1) {
    switch (dueck_regime(ps1)) {
        case 1: return 0.5 * ps1;                              // any beta
        case 2: return dueck_distortion_floor(ps1, 1.0);       // ps1 * p0
        default: return dueck_distortion_floor(ps1, 0.0);      // p0(1+p0)/2
    }
}

double dueck_cond_distortion(double ps1, int k, bool x_equal, int z1, int z2) {
    check_ps1(ps1);
    double p0 = 1.0 - ps1, p1 = ps1;
    int zk = (k == 1) ? z1 : z2;
    int zo = (k == 1) ? z2 : z1;
    if (zk == 1) return 0.0;  // own noisy bit fired: S_k = 1 for certain
    if (zo == 1) {
        // Other receiver's bit fired. Equal inputs pin S_k = 0; unequal inputs
        // make the feedback independent of S_k.
        return x_equal ? 0.0 : std::min(p0, p1);
    }
    // z = (0,0)
    if (x_equal) {
        double pz = (1.0 + p0 * p0) / 2.0;
        if (pz <= 0.0) return 0.0;
        return 0.5 * std::min(p0 * (1.0 + p0), p1) / pz;
    }
    double pz = p0;
    if (pz <= 0.0) return 0.0;
    return 0.5 * p0 * std::min(1.0 + p0, p1) / pz;
}

double dueck_feedback_prob(double ps1, bool x_equal, int z1, int z2) {
    check_ps1(ps1);
    double p0 = 1.0 - ps1, p1 = ps1;
    if (x_equal) {
        if (z1 == 0 && z2 == 0) return (1.0 + p0 * p0) / 2.0;
        if (z1 == 1 && z2 == 1) return p1 * p1 / 2.0;
        return p1 * p0 / 2.0;  // (0,1) and (1,0) each
    }
    if (z1 == 0 && z2 == 0) return p0;
    if (z1 == 1 && z2 == 1) return 0.0;
    return p1 / 2.0;  // (0,1) and (1,0) each
}

double dueck_outer_sum_rate(double ps1, double distortion) {
    check_ps1(ps1);
    double dmin = dueck_distortion_floor(ps1, (dueck_regime(ps1) == 3) ? 0.0 : 1.0);
    double dmax = dueck_distortion_floor(ps1, (dueck_regime(ps1) == 3) ? 1.0 : 0.0);
    double lo = std::min(dmin, dmax);
    if (distortion < lo - 1e-12) throw std::domain_error("distortion below the minimum");
    // Below the crossover the coupling can be pinned at beta = 1, where the
    // entropy term vanishes and the region is the plain sum <= 1 triangle.
    if (dueck_regime(ps1) == 1) return 1.0;

    // Largest admissible beta for the distortion floor, then the entropy term
    // is maximized at the admissible beta closest to 1/2.
    double a = dueck_distortion_floor(ps1, 0.0);
    double b = dueck_distortion_floor(ps1, 1.0);
    double beta_best;
    if (std::abs(b - a) < 1e-15) {
        beta_best = 0.5;  // floor constant in beta; all couplings admissible
    } else if (b > a) {
        double beta_max = std::clamp((distortion - a) / (b - a), 0.0, 1.0);
        beta_best = std::min(beta_max, 0.5);
    } else {
        double beta_min = std::clamp((distortion - a) / (b - a), 0.0, 1.0);
        beta_best = std::max(beta_min, 0.5);
    }
    return 1.0 + ps1 * ps1 * binary_entropy(beta_best);
}

double dueck_inner_sum_rate_at(double ps1, double beta, double gamma) {
    check_ps1(ps1);
    if (beta < 0.0 || gamma > 1.0 || beta > gamma + 1e-15)
        throw std::domain_error("need 0 <= beta <= gamma <= 1");
    if (gamma <= 0.0) return 1.0;
    double p0 = 1.0 - ps1;
    double u = std::clamp(beta / gamma, 0.0, 1.0);
    return 1.0 + gamma * ps1 * (binary_entropy(u) - p0);
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    double xm = 0.5 * (a + b);
    double best = f(xm);
    for (double x : {lo, hi}) best = std::max(best, f(x));
    return best;
}

double dueck_inner_sum_rate(double ps1, double distortion) {
    int regime = dueck_regime(ps1);
    double p0 = 1.0 - ps1;

    if (regime == 1) {
        if (distortion < 0.5 * ps1 - 1e-12) throw std::domain_error("distortion below the minimum");
        return 1.0;
    }

    // Coupling pinned by the distortion line of the regime.
    double a, b;  // floor at beta = 0 and beta = 1
    if (regime == 2) {
        a = 0.5 * ps1;
        b = ps1 * p0;
    } else {
        a = 0.5 * p0 * (1.0 + p0);
        b = ps1 * p0;
    }
    double dmin = std::min(a, b);
    if (distortion < dmin - 1e-12) throw std::domain_error("distortion below the minimum");

    if (regime == 2) {
        // beta decreases the floor; admissible beta in [beta_low, 1].
        double beta_low = (std::abs(b - a) < 1e-15) ? 0.0 : std::clamp((distortion - a) / (b - a), 0.0, 1.0);
        if (beta_low <= 0.5) return 1.0 + ps1 * (1.0 - p0);
        // Time share the feedback scheme at beta' = 1-(1-beta)/gamma with the
        // plain scheme; for each admissible beta maximize over gamma >= 1-beta.
        double best = 1.0;
        const int beta_steps = 200;
        for (int i = 0; i <= beta_steps; ++i) {
            double beta = beta_low + (1.0 - beta_low) * i / beta_steps;
            double lo = std::max(1.0 - beta, 1e-12);
            double value = golden_section_max(
                [&](double g) {
                    double u = std::clamp(1.0 - (1.0 - beta) / g, 0.0, 1.0);
                    return 1.0 + g * ps1 * (binary_entropy(u) - p0);
                },
                lo, 1.0);
            best = std::max(best, value);
        }
        return best;
    }

    // Regime 3: beta increases the floor; the sum rate grows with beta, so the
    // distortion pins beta and only gamma is optimized.
    double beta = (std::abs(b - a) < 1e-15) ? 0.5 : std::clamp((distortion - a) / (b - a), 0.0, 1.0);
    if (beta >= 0.5) {
        // gamma = 1, coupling 1/2 saturates the entropy term.
        return 1.0 + ps1 * (1.0 - p0);
    }
    double lo = std::max(beta, 1e-12);
    double value = golden_section_max(
        [&](double g) {
            double u = std::clamp(beta / g, 0.0, 1.0);
            return 1.0 + g * ps1 * (binary_entropy(u) - p0);
        },
        lo, 1.0);
    return std::max(value, 1.0);
}

}  // namespace sdmbc
