#include "sdmbc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace sdmbc {

bool dominates(const RegionPoint& a, const RegionPoint& b, double eps) {
    bool geq = a.r1 >= b.r1 - eps && a.r2 >= b.r2 - eps && a.d1 <= b.d1 + eps && a.d2 <= b.d2 + eps;
    if (!geq) return false;
    return a.r1 > b.r1 + eps || a.r2 > b.r2 + eps || a.d1 < b.d1 - eps || a.d2 < b.d2 - eps;
}

namespace {

bool output_order(const RegionPoint& a, const RegionPoint& b) {
    if (a.r1 != b.r1) return a.r1 > b.r1;
    if (a.r2 != b.r2) return a.r2 > b.r2;
    if (a.d1 != b.d1) return a.d1 < b.d1;
    return a.d2 < b.d2;
}

bool same_point(const RegionPoint& a, const RegionPoint& b) {
    return a.r1 == b.r1 && a.r2 == b.r2 && a.d1 == b.d1 && a.d2 == b.d2;
}

ParetoSet pareto_frontier_impl(std::vector<RegionPoint> points, double eps, bool parallel) {
    for (const auto& p : points)
        if (!(std::isfinite(p.r1) && std::isfinite(p.r2) && std::isfinite(p.d1) && std::isfinite(p.d2)) ||
            p.r1 < 0 || p.r2 < 0 || p.d1 < 0 || p.d2 < 0)
            throw std::invalid_argument("pareto_frontier: coordinates must be finite and >= 0");
    std::sort(points.begin(), points.end(), output_order);
    points.erase(std::unique(points.begin(), points.end(), same_point), points.end());

    const auto n = static_cast<long>(points.size());
    std::vector<uint8_t> dominated(points.size(), 0);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) {
            for (long j = 0; j < n; ++j)
                if (j != i && dominates(points[static_cast<size_t>(j)], points[static_cast<size_t>(i)], eps)) {
                    dominated[static_cast<size_t>(i)] = 1;
                    break;
                }
        }
    } else {
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                if (j != i && dominates(points[static_cast<size_t>(j)], points[static_cast<size_t>(i)], eps)) {
                    dominated[static_cast<size_t>(i)] = 1;
                    break;
                }
    }
    ParetoSet out;
    for (size_t i = 0; i < points.size(); ++i)
        if (!dominated[i]) out.points.push_back(points[i]);
    return out;
}

}  // namespace

ParetoSet pareto_frontier(std::vector<RegionPoint> points, double eps) {
    return pareto_frontier_impl(std::move(points), eps, true);
}

ParetoSet pareto_frontier_serial(std::vector<RegionPoint> points, double eps) {
    return pareto_frontier_impl(std::move(points), eps, false);
}

size_t simplex_point_count(int cells, int resolution) {
    // C(resolution + cells - 1, cells - 1)
    double c = 1.0;
    for (int i = 1; i <= cells - 1; ++i)
        c = c * (resolution + i) / i;
    return static_cast<size_t>(std::llround(c));
}

size_t for_each_simplex_point(int cells, int resolution,
                              const std::function<void(const std::vector<double>&)>& fn) {
    if (cells < 1 || resolution < 1)
        throw std::invalid_argument("for_each_simplex_point: cells and resolution must be >= 1");
    std::vector<int> counts(static_cast<size_t>(cells), 0);
    std::vector<double> pmf(static_cast<size_t>(cells), 0.0);
    size_t emitted = 0;
    std::function<void(int, int)> rec = [&](int cell, int remaining) {
        if (cell == cells - 1) {
            counts[static_cast<size_t>(cell)] = remaining;
            for (int i = 0; i < cells; ++i)
                pmf[static_cast<size_t>(i)] =
                    static_cast<double>(counts[static_cast<size_t>(i)]) / resolution;
            fn(pmf);
            ++emitted;
            return;
        }
        for (int take = remaining; take >= 0; --take) {
            counts[static_cast<size_t>(cell)] = take;
            rec(cell + 1, remaining - take);
        }
    };
    rec(0, resolution);
    return emitted;
}

RegionPoint multiplicative_corner(double q, double gamma, double p, double r) {
    for (double v : {q, gamma, p, r})
        if (v < 0.0 || v > 1.0) throw std::domain_error("multiplicative_corner: parameter outside [0,1]");
    double hb = binary_entropy(p);
    return {q * hb * r, gamma * q * hb * (1.0 - r), (1.0 - p) * std::min(q, 1.0 - q),
            (1.0 - p) * std::min(gamma * q, 1.0 - gamma * q)};
}

RegionPoint flipping_corner(double q, double gamma, double p, double r) {
    for (double v : {q, gamma, p, r})
        if (v < 0.0 || v > 1.0) throw std::domain_error("flipping_corner: parameter outside [0,1]");
    double hb = binary_entropy(p);
    return {q * hb * r, gamma * q * hb * (1.0 - r),
            (1.0 - p) * std::min(q * (1.0 - gamma), 1.0 - q),
            p * q * std::min(gamma, 1.0 - gamma)};
}

namespace {

// Expected distortion per input symbol under a fixed estimator table.
std::vector<std::pair<double, double>> per_input_distortion(const SdmbcSpec& spec,
                                                            const EstimatorTable& est,
                                                            const DistortionMeasure& d) {
    std::vector<std::pair<double, double>> cost(static_cast<size_t>(spec.nx), {0.0, 0.0});
    for (int x = 0; x < spec.nx; ++x)
        for (int s1 = 0; s1 < spec.ns1; ++s1)
            for (int s2 = 0; s2 < spec.ns2; ++s2) {
                double w = spec.state_law[s1 * spec.ns2 + s2];
                if (w <= 0.0) continue;
                auto row = spec.transition.row(spec.transition_row(s1, s2, x));
                for (int y1 = 0; y1 < spec.ny1; ++y1)
                    for (int y2 = 0; y2 < spec.ny2; ++y2)
                        for (int z = 0; z < spec.nz; ++z) {
                            double p = w * row[static_cast<size_t>(spec.output_cell(y1, y2, z))];
                            if (p <= 0.0) continue;
                            cost[static_cast<size_t>(x)].first += p * d.at(1, s1, est.decision(1, x, z));
                            cost[static_cast<size_t>(x)].second += p * d.at(2, s2, est.decision(2, x, z));
                        }
            }
    return cost;
}

ParetoSet degraded_region_impl(const SdmbcSpec& spec, const DistortionMeasure& d, int u_card,
                               int grid_res, size_t max_points, bool parallel) {
    if (u_card < 1) throw std::invalid_argument("degraded_region: u_card must be >= 1");
    if (!check_physically_degraded(spec).degraded)
        std::cerr << "degraded_region: warning: channel is not physically degraded; "
                     "the computed set is not a capacity-distortion region\n";
    int cells = u_card * spec.nx;
    size_t count = simplex_point_count(cells, grid_res);
    if (count > max_points)
        throw std::invalid_argument("degraded_region: lattice of " + std::to_string(count) +
                                    " points exceeds the cap");

    std::vector<double> lattice;
    lattice.reserve(count * static_cast<size_t>(cells));
    for_each_simplex_point(cells, grid_res, [&](const std::vector<double>& pmf) {
        lattice.insert(lattice.end(), pmf.begin(), pmf.end());
    });

    auto est = optimal_estimator(spec, d);
    auto cost = per_input_distortion(spec, est, d);

    const auto n = static_cast<long>(count);
    std::vector<RegionPoint> points(count);
    auto eval = [&](long i) {
        const double* p = lattice.data() + static_cast<size_t>(i) * cells;
        LabeledJoint input({"U", "X"}, {u_card, spec.nx},
                           std::vector<double>(p, p + cells));
        auto joint = compose_joint(input, spec);
        double r1 = cond_mutual_information(joint, {"U"}, {"Y1"}, {"S1"});
        double r2 = cond_mutual_information(joint, {"X"}, {"Y2"}, {"S2", "U"});
        double d1 = 0.0, d2 = 0.0;
        for (int x = 0; x < spec.nx; ++x) {
            double px = 0.0;
            for (int u = 0; u < u_card; ++u) px += p[u * spec.nx + x];
            d1 += px * cost[static_cast<size_t>(x)].first;
            d2 += px * cost[static_cast<size_t>(x)].second;
        }
        points[static_cast<size_t>(i)] = {r1, r2, d1, d2};
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (long i = 0; i < n; ++i) eval(i);
    } else {
        for (long i = 0; i < n; ++i) eval(i);
    }
    return pareto_frontier_impl(std::move(points), 1e-9, parallel);
}

}  // namespace

ParetoSet degraded_region(const SdmbcSpec& spec, const DistortionMeasure& d, int u_card,
                          int grid_res, size_t max_points) {
    return degraded_region_impl(spec, d, u_card, grid_res, max_points, true);
}

ParetoSet degraded_region_serial(const SdmbcSpec& spec, const DistortionMeasure& d, int u_card,
                                 int grid_res, size_t max_points) {
    return degraded_region_impl(spec, d, u_card, grid_res, max_points, false);
}

namespace {

LabeledJoint aux_input_joint(const char* aux_name, const Pmf& px, const Kernel& u_given_x) {
    if (u_given_x.input_shape() != std::vector<int>{px.size()})
        throw std::invalid_argument("outer_bound_eval: auxiliary kernel input mismatch");
    int nu = u_given_x.output_size();
    int nx = px.size();
    std::vector<double> p(static_cast<size_t>(nu) * nx);
    for (int u = 0; u < nu; ++u)
        for (int x = 0; x < nx; ++x)
            p[static_cast<size_t>(u * nx + x)] = px[x] * u_given_x.at(x, u);
    return LabeledJoint({aux_name, "X"}, {nu, nx}, std::move(p));
}

}  // namespace

std::vector<RegionPoint> OuterEval::corners() const {
    double a = std::max(r1_cap, 0.0), b = std::max(r2_cap, 0.0), m = std::max(sum_cap(), 0.0);
    RegionPoint c1{std::min(a, m), std::min(b, std::max(m - std::min(a, m), 0.0)), d1, d2};
    RegionPoint c2{std::min(a, std::max(m - std::min(b, m), 0.0)), std::min(b, m), d1, d2};
    if (same_point(c1, c2)) return {c1};
    return {c1, c2};
}

OuterEval outer_bound_eval(const SdmbcSpec& spec, const DistortionMeasure& d, const OuterAux& aux) {
    auto joint1 = compose_joint(aux_input_joint("U1", aux.px, aux.u1_given_x), spec);
    auto joint2 = compose_joint(aux_input_joint("U2", aux.px, aux.u2_given_x), spec);
    OuterEval eval{};
    eval.r1_cap = cond_mutual_information(joint1, {"U1"}, {"Y1"}, {"S1"});
    eval.sum_cap_u1 = cond_mutual_information(joint1, {"X"}, {"Y1", "Y2"}, {"S1", "S2", "U1"});
    eval.sum_cap_u2 = cond_mutual_information(joint2, {"X"}, {"Y1", "Y2"}, {"S1", "S2", "U2"});
    eval.r2_cap = cond_mutual_information(joint2, {"U2"}, {"Y2"}, {"S2"});
    auto est = optimal_estimator(spec, d);
    std::tie(eval.d1, eval.d2) = expected_distortion(spec, aux.px, est, d);
    return eval;
}

ParetoSet outer_bound_envelope(const SdmbcSpec& spec, const DistortionMeasure& d, int u_card,
                               int grid_res, size_t max_points) {
    // Lattice over P_X and over every row of the two auxiliary kernels.
    std::vector<std::vector<double>> px_list, row_list;
    for_each_simplex_point(spec.nx, grid_res,
                           [&](const std::vector<double>& p) { px_list.push_back(p); });
    for_each_simplex_point(u_card, grid_res,
                           [&](const std::vector<double>& p) { row_list.push_back(p); });
    size_t rows_per_kernel = 1;
    for (int x = 0; x < spec.nx; ++x) rows_per_kernel *= row_list.size();
    size_t total = px_list.size() * rows_per_kernel * rows_per_kernel;
    if (total > max_points)
        throw std::invalid_argument("outer_bound_envelope: lattice of " + std::to_string(total) +
                                    " points exceeds the cap");

    auto kernel_from_choice = [&](size_t choice) {
        std::vector<double> table(static_cast<size_t>(spec.nx) * u_card);
        for (int x = 0; x < spec.nx; ++x) {
            const auto& row = row_list[choice % row_list.size()];
            choice /= row_list.size();
            std::copy(row.begin(), row.end(), table.begin() + static_cast<long>(x) * u_card);
        }
        return Kernel({spec.nx}, {u_card}, std::move(table));
    };

    auto est = optimal_estimator(spec, d);
    auto cost = per_input_distortion(spec, est, d);
    std::vector<std::vector<RegionPoint>> corner_lists(total);
    const auto n = static_cast<long>(total);
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) {
        size_t rest = static_cast<size_t>(i);
        size_t pxi = rest % px_list.size();
        rest /= px_list.size();
        size_t c1 = rest % rows_per_kernel;
        size_t c2 = rest / rows_per_kernel;
        OuterAux aux{Pmf(px_list[pxi]), kernel_from_choice(c1), kernel_from_choice(c2)};
        auto joint1 = compose_joint(aux_input_joint("U1", aux.px, aux.u1_given_x), spec);
        auto joint2 = compose_joint(aux_input_joint("U2", aux.px, aux.u2_given_x), spec);
        OuterEval eval{};
        eval.r1_cap = cond_mutual_information(joint1, {"U1"}, {"Y1"}, {"S1"});
        eval.sum_cap_u1 = cond_mutual_information(joint1, {"X"}, {"Y1", "Y2"}, {"S1", "S2", "U1"});
        eval.sum_cap_u2 = cond_mutual_information(joint2, {"X"}, {"Y1", "Y2"}, {"S1", "S2", "U2"});
        eval.r2_cap = cond_mutual_information(joint2, {"U2"}, {"Y2"}, {"S2"});
        eval.d1 = eval.d2 = 0.0;
        for (int x = 0; x < spec.nx; ++x) {
            eval.d1 += aux.px[x] * cost[static_cast<size_t>(x)].first;
            eval.d2 += aux.px[x] * cost[static_cast<size_t>(x)].second;
        }
        corner_lists[static_cast<size_t>(i)] = eval.corners();
    }
    std::vector<RegionPoint> all;
    for (auto& c : corner_lists) all.insert(all.end(), c.begin(), c.end());
    return pareto_frontier(std::move(all), 1e-9);
}

std::vector<RegionPoint> InnerEval::corners() const {
    double a = r1_cap, b = r2_cap, m = sum_cap;
    RegionPoint c1{std::min(a, m), std::min(b, std::max(m - std::min(a, m), 0.0)), d1, d2};
    RegionPoint c2{std::min(a, std::max(m - std::min(b, m), 0.0)), std::min(b, m), d1, d2};
    if (same_point(c1, c2)) return {c1};
    return {c1, c2};
}

InnerEval inner_bound_eval(const SdmbcSpec& spec, const DistortionMeasure& d, const InnerAux& aux) {
    if (aux.aux_input.names() != std::vector<std::string>{"U0", "U1", "U2", "X"})
        throw std::invalid_argument("inner_bound_eval: auxiliary joint must cover (U0,U1,U2,X)");
    auto joint = compose_joint(aux.aux_input, spec);
    joint = extend_with_kernel(joint, {"V0", "V1", "V2"}, aux.v_sizes, aux.v_given_uz,
                               {"U0", "U1", "U2", "Z"});

    auto side1 = marginalize(joint, {"U0", "U1", "U2", "Z", "V0", "V1", "S1", "Y1"});
    auto side2 = marginalize(joint, {"U0", "U1", "U2", "Z", "V0", "V2", "S2", "Y2"});
    auto uu = marginalize(joint, {"U0", "U1", "U2"});

    InnerEval eval{};
    double r1 = cond_mutual_information(side1, {"U0", "U1"}, {"Y1", "V1"}, {"S1"}) -
                cond_mutual_information(side1, {"U0", "U1", "U2", "Z"}, {"V0", "V1"}, {"S1", "Y1"});
    double r2 = cond_mutual_information(side2, {"U0", "U2"}, {"Y2", "V2"}, {"S2"}) -
                cond_mutual_information(side2, {"U0", "U1", "U2", "Z"}, {"V0", "V2"}, {"S2", "Y2"});
    double sum = cond_mutual_information(side1, {"U1"}, {"Y1", "V1"}, {"U0", "S1"}) +
                 cond_mutual_information(side2, {"U2"}, {"Y2", "V2"}, {"U0", "S2"}) +
                 std::min(cond_mutual_information(side1, {"U0"}, {"Y1", "V1"}, {"S1"}),
                          cond_mutual_information(side2, {"U0"}, {"Y2", "V2"}, {"S2"})) -
                 cond_mutual_information(uu, {"U1"}, {"U2"}, {"U0"}) -
                 cond_mutual_information(side1, {"U0", "U1", "U2", "Z"}, {"V1"}, {"V0", "S1", "Y1"}) -
                 cond_mutual_information(side2, {"U0", "U1", "U2", "Z"}, {"V2"}, {"V0", "S2", "Y2"}) -
                 std::max(cond_mutual_information(side1, {"U0", "U1", "U2", "Z"}, {"V0"}, {"S1", "Y1"}),
                          cond_mutual_information(side2, {"U0", "U1", "U2", "Z"}, {"V0"}, {"S2", "Y2"}));
    eval.r1_cap = std::max(r1, 0.0);
    eval.r2_cap = std::max(r2, 0.0);
    eval.sum_cap = std::max(sum, 0.0);

    auto px_joint = marginalize(aux.aux_input, {"X"});
    Pmf px(px_joint.probs());
    auto est = optimal_estimator(spec, d);
    std::tie(eval.d1, eval.d2) = expected_distortion(spec, px, est, d);
    return eval;
}

InnerAux dueck_feedback_aux(int which, double beta_prime) {
    if (which != 1 && which != 2) throw std::invalid_argument("dueck_feedback_aux: which must be 1 or 2");
    Pmf input = dueck_coupled_input(beta_prime);
    std::vector<double> p(static_cast<size_t>(2 * 2 * 2 * 8), 0.0);
    for (int x = 0; x < 8; ++x) {
        int x0 = x / 4, x1 = (x / 2) % 2, x2 = x % 2;
        p[static_cast<size_t>(((x0 * 2 + x1) * 2 + x2) * 8 + x)] = input[x];
    }
    LabeledJoint aux_input({"U0", "U1", "U2", "X"}, {2, 2, 2, 8}, std::move(p));
    auto v_kernel = Kernel::deterministic(
        {2, 2, 2, 4}, {2, 4, 4}, [which](const std::vector<int>& in) {
            int u0 = in[0], u1 = in[1], u2 = in[2], z = in[3];
            int yp1 = z / 2, yp2 = z % 2;
            int v0 = (which == 1) ? (u1 ^ yp1) : (u2 ^ yp2);
            int v1 = u0 * 2 + u1;
            int v2 = u0 * 2 + u2;
            return (v0 * 4 + v1) * 4 + v2;
        });
    return InnerAux{std::move(aux_input), {2, 4, 4}, std::move(v_kernel)};
}

InnerAux dueck_plain_aux(double beta_prime) {
    Pmf input = dueck_coupled_input(beta_prime);
    std::vector<double> p(static_cast<size_t>(2 * 8), 0.0);
    for (int x = 0; x < 8; ++x) p[static_cast<size_t>((x / 4) * 8 + x)] = input[x];
    LabeledJoint aux_input({"U0", "U1", "U2", "X"}, {2, 1, 1, 8}, std::move(p));
    auto v_kernel = Kernel::deterministic({2, 1, 1, 4}, {1, 1, 1},
                                          [](const std::vector<int>&) { return 0; });
    return InnerAux{std::move(aux_input), {1, 1, 1}, std::move(v_kernel)};
}

RegionPoint dueck_outer_corner(double ps1, const DueckOuterParams& params) {
    for (double v : {params.p, params.q_aux, params.beta})
        if (v < 0.0 || v > 1.0) throw std::domain_error("dueck_outer_corner: parameter outside [0,1]");
    double c = ps1 * ps1 * binary_entropy(params.beta);
    double r1 = std::min(1.0 - params.p, params.q_aux + c);
    double r2 = std::min(params.p + c, 1.0 - params.q_aux);
    double d = dueck_distortion_floor(ps1, params.beta);
    return {r1, r2, d, d};
}

ParetoSet dueck_outer_region(double ps1, int grid_res) {
    std::vector<RegionPoint> points;
    for (int i = 0; i <= grid_res; ++i)
        for (int j = 0; j <= grid_res; ++j)
            for (int k = 0; k <= grid_res; ++k)
                points.push_back(dueck_outer_corner(
                    ps1, {static_cast<double>(i) / grid_res, static_cast<double>(j) / grid_res,
                          static_cast<double>(k) / grid_res}));
    return pareto_frontier(std::move(points));
}

DueckInnerResult dueck_inner_region(double ps1, const DueckInnerParams& params) {
    DueckInnerResult result;
    result.regime = dueck_regime(ps1);
    result.product_structure = result.regime == 1;
    result.d_min = dueck_min_distortion(ps1);
    double p0 = 1.0 - ps1;

    if (result.regime == 1) {
        result.corners = {{1.0, 0.0, result.d_min, result.d_min},
                          {0.0, 1.0, result.d_min, result.d_min}};
        return result;
    }

    double beta = params.beta, gamma = params.gamma_ts;
    if (beta < 0.0 || beta > 1.0 || gamma < 0.0 || gamma > 1.0)
        throw std::domain_error("dueck_inner_region: parameters outside [0,1]");
    double sum, dist;
    if (result.regime == 2) {
        if (gamma < 1.0 - beta - 1e-12)
            throw std::domain_error("dueck_inner_region: need gamma >= 1 - beta in this regime");
        double u = std::clamp(1.0 - (1.0 - beta) / std::max(gamma, 1e-300), 0.0, 1.0);
        sum = 1.0 + gamma * ps1 * (binary_entropy(u) - p0);
        dist = 0.5 * (1.0 - beta) * ps1 + beta * ps1 * p0;
    } else {
        if (beta > gamma + 1e-12)
            throw std::domain_error("dueck_inner_region: need beta <= gamma in this regime");
        sum = dueck_inner_sum_rate_at(ps1, beta, gamma);
        dist = 0.5 * (1.0 - beta) * p0 * (1.0 + p0) + beta * ps1 * p0;
    }
    sum = std::max(sum, 0.0);
    double r1 = std::min(1.0, sum);
    result.corners = {{r1, std::min(1.0, std::max(sum - r1, 0.0)), dist, dist}};
    double r2 = std::min(1.0, sum);
    RegionPoint other{std::min(1.0, std::max(sum - r2, 0.0)), r2, dist, dist};
    if (!same_point(result.corners[0], other)) result.corners.push_back(other);
    return result;
}

ParetoSet resource_splitting_multiplicative(double q, double gamma, double r) {
    for (double v : {q, gamma, r})
        if (v < 0.0 || v > 1.0) throw std::domain_error("resource splitting: parameter outside [0,1]");
    std::vector<RegionPoint> pts;
    pts.push_back({0.0, 0.0, 0.0, 0.0});  // sensing mode: always send X = 1
    pts.push_back({q * r, gamma * q * (1.0 - r), std::min(q, 1.0 - q),
                   std::min(gamma * q, 1.0 - gamma * q)});
    return pareto_frontier(std::move(pts));
}

ParetoSet resource_splitting_dueck(double ps1) {
    double p0 = 1.0 - ps1;
    std::vector<RegionPoint> pts;
    pts.push_back({0.0, 0.0, dueck_min_distortion(ps1), dueck_min_distortion(ps1)});
    double d_comm = std::min(p0, ps1);  // best constant estimate, feedback ignored
    pts.push_back({1.0, 0.0, d_comm, d_comm});
    return pareto_frontier(std::move(pts));
}

RegionPoint time_share(const std::vector<RegionPoint>& points, const std::vector<double>& weights) {
    if (points.size() != weights.size() || points.empty())
        throw std::invalid_argument("time_share: need one weight per point");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::domain_error("time_share: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::domain_error("time_share: weights must sum to 1");
    RegionPoint out{};
    for (size_t i = 0; i < points.size(); ++i) {
        out.r1 += weights[i] * points[i].r1;
        out.r2 += weights[i] * points[i].r2;
        out.d1 += weights[i] * points[i].d1;
        out.d2 += weights[i] * points[i].d2;
    }
    return out;
}

}  // namespace sdmbc
