#pragma once

#include <string>
#include <vector>

#include "sdmbc/figures.hpp"
#include "sdmbc/montecarlo.hpp"
#include "sdmbc/regions.hpp"

namespace sdmbc {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);  // "csv" | "json"

/// All numeric CSV output uses 12 significant digits so values round-trip
/// against the JSON variant at that precision. JSON keeps full precision.
std::string format_number(double v);

std::string region_csv(const ParetoSet& set, const std::string& source);
std::string region_json(const ParetoSet& set, const std::string& source);

std::string fig2_csv(const std::vector<Fig2Row>& rows);
std::string fig2_json(const std::vector<Fig2Row>& rows);

std::string fig4_csv(const std::vector<Fig4Row>& rows);
std::string fig4_json(const std::vector<Fig4Row>& rows);

std::string sim_result_json(const SimResult& result);

/// Rows (k, x, z, shat, dprime, posterior) for every reachable pair.
std::string estimator_csv(const SdmbcSpec& spec, const EstimatorTable& table);
std::string estimator_json(const SdmbcSpec& spec, const EstimatorTable& table);

}  // namespace sdmbc
