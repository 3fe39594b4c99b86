#include "sdmbc/figures.hpp"

#include <cmath>
#include <stdexcept>

namespace sdmbc {

std::vector<Fig2Row> fig2_table(double q, double gamma, int grid_res) {
    if (grid_res < 1) throw std::invalid_argument("fig2_table: grid_res must be >= 1");
    std::vector<Fig2Row> rows;
    double d1_max = std::min(q, 1.0 - q);
    for (int i = 0; i <= grid_res; ++i) {
        double r = static_cast<double>(i) / grid_res;
        for (int j = 0; j <= grid_res; ++j) {
            double p = static_cast<double>(j) / grid_res;
            auto c = multiplicative_corner(q, gamma, p, r);
            rows.push_back({"boundary", r, p, c.r1, c.r2, c.d1});
        }
    }
    for (int i = 0; i <= grid_res; ++i) {
        double r = static_cast<double>(i) / grid_res;
        for (int j = 0; j <= grid_res; ++j) {
            double t = static_cast<double>(j) / grid_res;  // share of the communication mode
            rows.push_back({"resource_splitting", r, t, t * q * r, t * gamma * q * (1.0 - r),
                            t * d1_max});
            rows.push_back({"time_sharing", r, t, t * q * r, t * gamma * q * (1.0 - r),
                            t * d1_max / 2.0});
        }
    }
    return rows;
}

std::vector<Fig4Row> fig4_table(double ps1) {
    double p0 = 1.0 - ps1;
    int regime = dueck_regime(ps1);
    double d_min = dueck_min_distortion(ps1);

    // Saturation point of the bound curves: the coupling that maximizes the
    // entropy terms while still moving the distortion floor.
    double d_sat;
    if (regime == 1) {
        d_sat = d_min;
    } else if (regime == 2) {
        d_sat = 0.25 * ps1 + 0.5 * ps1 * p0;  // floor at beta = 1/2
    } else {
        d_sat = dueck_distortion_floor(ps1, 0.5);
    }

    std::vector<double> grid;
    grid.push_back(d_min);
    const double step = 0.001;
    for (int k = 1; d_min + k * step < d_sat - 1e-12; ++k) grid.push_back(d_min + k * step);
    double d_last_stepped = grid.back();
    if (d_sat > d_min + 1e-12) grid.push_back(d_sat);
    grid.push_back(d_sat + 0.01);

    double sum_max = (regime == 1) ? 1.0 : 1.0 + ps1 * (1.0 - p0);
    double d_comm = std::min(p0, ps1);  // communication-mode distortion of resource splitting

    std::vector<Fig4Row> rows;
    for (double d : grid) {
        Fig4Row row{d, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
        // Published plot data holds the bound curves constant past the last
        // stepped grid point.
        double d_eval = std::min(d, d_last_stepped);
        row.outer = dueck_outer_sum_rate(ps1, d_eval);
        row.inner = dueck_inner_sum_rate(ps1, d_eval);
        if (d <= d_comm + 1e-12)
            row.resource_splitting = (d_comm > d_min) ? (d - d_min) / (d_comm - d_min) : 0.0;
        if (d <= d_sat + 1e-12)
            row.time_sharing =
                (d_sat > d_min) ? 1.0 + (d - d_min) / (d_sat - d_min) * (sum_max - 1.0) : 1.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace sdmbc
