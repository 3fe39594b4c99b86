#pragma once

namespace sdmbc {

// Numeric tolerances used across the library. Mutable so callers can tighten
// or relax them globally; defaults match the documented contracts.
struct Tolerances {
    double normalization = 1e-9;  // pmf / kernel-row mass deviation from 1
    double cmi_clamp = 1e-9;      // conditional MI more negative than this is an error
    double degraded = 1e-9;       // per-entry kernel comparison in the degradedness check
};

inline Tolerances& tolerances() {
    static Tolerances t;
    return t;
}

}  // namespace sdmbc
