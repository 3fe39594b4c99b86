#include "sdmbc/export.hpp"

#include <cstdio>
#include <json.hpp>
#include <stdexcept>

namespace sdmbc {

using nlohmann::ordered_json;

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("format must be csv or json");
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string region_csv(const ParetoSet& set, const std::string& source) {
    std::string out = "R1,R2,D1,D2,source\n";
    for (const auto& p : set.points) {
        out += format_number(p.r1) + "," + format_number(p.r2) + "," + format_number(p.d1) + "," +
               format_number(p.d2) + "," + source + "\n";
    }
    return out;
}

std::string region_json(const ParetoSet& set, const std::string& source) {
    ordered_json points = ordered_json::array();
    for (const auto& p : set.points)
        points.push_back(ordered_json{
            {"R1", p.r1}, {"R2", p.r2}, {"D1", p.d1}, {"D2", p.d2}, {"source", source}});
    return ordered_json{{"points", std::move(points)}}.dump(2) + "\n";
}

std::string fig2_csv(const std::vector<Fig2Row>& rows) {
    std::string out = "r,p,R1,R2,D1,source\n";
    for (const auto& row : rows)
        out += format_number(row.r) + "," + format_number(row.p) + "," + format_number(row.r1) +
               "," + format_number(row.r2) + "," + format_number(row.d1) + "," + row.source + "\n";
    return out;
}

std::string fig2_json(const std::vector<Fig2Row>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows)
        arr.push_back(ordered_json{{"r", row.r},
                                   {"p", row.p},
                                   {"R1", row.r1},
                                   {"R2", row.r2},
                                   {"D1", row.d1},
                                   {"source", row.source}});
    return ordered_json{{"rows", std::move(arr)}}.dump(2) + "\n";
}

std::string fig4_csv(const std::vector<Fig4Row>& rows) {
    std::string out = "D,outer,inner,resource_splitting,time_sharing\n";
    auto cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; };
    for (const auto& row : rows)
        out += format_number(row.d) + "," + cell(row.outer) + "," + cell(row.inner) + "," +
               cell(row.resource_splitting) + "," + cell(row.time_sharing) + "\n";
    return out;
}

std::string fig4_json(const std::vector<Fig4Row>& rows) {
    ordered_json arr = ordered_json::array();
    auto cell = [](const std::optional<double>& v) {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    for (const auto& row : rows)
        arr.push_back(ordered_json{{"D", row.d},
                                   {"outer", cell(row.outer)},
                                   {"inner", cell(row.inner)},
                                   {"resource_splitting", cell(row.resource_splitting)},
                                   {"time_sharing", cell(row.time_sharing)}});
    return ordered_json{{"rows", std::move(arr)}}.dump(2) + "\n";
}

std::string sim_result_json(const SimResult& result) {
    ordered_json per_input = ordered_json::array();
    for (int x = 0; x < result.nx; ++x) {
        ordered_json counts = ordered_json::array();
        for (int z = 0; z < result.nz; ++z)
            counts.push_back(result.feedback_counts[static_cast<size_t>(x * result.nz + z)]);
        per_input.push_back(ordered_json{
            {"x", x}, {"count", result.input_counts[static_cast<size_t>(x)]}, {"z_counts", counts}});
    }
    ordered_json doc{{"n", result.n},
                     {"seed", result.seed},
                     {"receivers",
                      ordered_json::array({ordered_json{{"mean", result.receiver1.mean},
                                                        {"stderr", result.receiver1.std_error}},
                                           ordered_json{{"mean", result.receiver2.mean},
                                                        {"stderr", result.receiver2.std_error}}})},
                     {"feedback", ordered_json{{"per_input", std::move(per_input)}}}};
    return doc.dump(2) + "\n";
}

namespace {

std::string posterior_string(const SdmbcSpec& spec, int k, int x, int z) {
    auto post = posterior_state(spec, k, x, z);
    std::string out;
    for (int s = 0; s < post.size(); ++s) {
        if (s) out += ";";
        out += format_number(post[s]);
    }
    return out;
}

}  // namespace

std::string estimator_csv(const SdmbcSpec& spec, const EstimatorTable& table) {
    std::string out = "k,x,z,shat,dprime,posterior\n";
    for (int k = 1; k <= 2; ++k)
        for (int x = 0; x < table.nx; ++x)
            for (int z = 0; z < table.nz; ++z) {
                if (!table.is_reachable(x, z)) continue;
                out += std::to_string(k) + "," + std::to_string(x) + "," + std::to_string(z) + "," +
                       std::to_string(table.decision(k, x, z)) + "," +
                       format_number(table.dprime(k, x, z)) + "," + posterior_string(spec, k, x, z) +
                       "\n";
            }
    return out;
}

std::string estimator_json(const SdmbcSpec& spec, const EstimatorTable& table) {
    ordered_json arr = ordered_json::array();
    for (int k = 1; k <= 2; ++k)
        for (int x = 0; x < table.nx; ++x)
            for (int z = 0; z < table.nz; ++z) {
                if (!table.is_reachable(x, z)) continue;
                auto post = posterior_state(spec, k, x, z);
                arr.push_back(ordered_json{{"k", k},
                                           {"x", x},
                                           {"z", z},
                                           {"shat", table.decision(k, x, z)},
                                           {"dprime", table.dprime(k, x, z)},
                                           {"posterior", post.probs()}});
            }
    return ordered_json{{"rows", std::move(arr)}}.dump(2) + "\n";
}

}  // namespace sdmbc
