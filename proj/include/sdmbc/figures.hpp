#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdmbc/regions.hpp"

namespace sdmbc {

/// One row of the fig2 sweep: region boundary of the multiplicative channel
/// plus the two baselines. For boundary rows, (r, p) are the corner
/// parameters; for baseline rows, p carries the time-share weight on the
/// communication-mode point.
struct Fig2Row {
    std::string source;  // boundary | resource_splitting | time_sharing
    double r, p, r1, r2, d1;
};

std::vector<Fig2Row> fig2_table(double q = 0.6, double gamma = 0.5, int grid_res = 20);

/// One row of the fig4 sweep: maximum sum rates versus symmetric distortion
/// for the three-bit channel. The bound columns follow the published plot
/// data: computed on the 0.001-stepped grid and held constant past its last
/// stepped point. Cells are empty where a curve is undefined.
struct Fig4Row {
    double d;
    std::optional<double> outer, inner, resource_splitting, time_sharing;
};

std::vector<Fig4Row> fig4_table(double ps1 = 0.75);

}  // namespace sdmbc
