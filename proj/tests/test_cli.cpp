#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "sdmbc/channel_io.hpp"

#ifndef SDMBC_CLI_PATH
#error "SDMBC_CLI_PATH must be defined by the build"
#endif

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code;
    std::string stdout_text;
};

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    fs::path out_file = fs::temp_directory_path() / "sdmbc_cli_stdout.txt";
    std::string cmd = env_prefix + std::string(SDMBC_CLI_PATH) + " " + args + " > " +
                      out_file.string() + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return {code, buffer.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        rows.push_back(cells);
    }
    return rows;
}

std::string temp_file(const char* name) { return (fs::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("figure fig4 reproduces the held boundary rows") {
    auto result = run_cli("figure fig4");
    REQUIRE(result.exit_code == 0);
    auto rows = parse_csv(result.stdout_text);
    REQUIRE(rows.size() > 2);
    CHECK(rows[0] == std::vector<std::string>{"D", "outer", "inner", "resource_splitting",
                                              "time_sharing"});
    bool saw_first = false, saw_last = false;
    for (size_t i = 1; i < rows.size(); ++i) {
        double d = std::stod(rows[i][0]);
        if (std::abs(d - 0.15625) < 1e-12) {
            saw_first = true;
            CHECK(std::stod(rows[i][1]) == 1.0);
            CHECK(std::stod(rows[i][2]) == 1.0);
        }
        if (std::abs(d - 0.181875) < 1e-12) {
            saw_last = true;
            CHECK(std::stod(rows[i][1]) == doctest::Approx(1.5618506).epsilon(1e-6));
            CHECK(std::stod(rows[i][2]) == doctest::Approx(1.5616341).epsilon(1e-6));
            CHECK(rows[i].size() == 5);
            CHECK(rows[i][4] == "");  // time sharing undefined past its last point
        }
    }
    CHECK(saw_first);
    CHECK(saw_last);
}

TEST_CASE("figure fig2 emits zero rates and distortion at p = 1") {
    auto result = run_cli("figure fig2 --grid-res 4");
    REQUIRE(result.exit_code == 0);
    auto rows = parse_csv(result.stdout_text);
    CHECK(rows[0] == std::vector<std::string>{"r", "p", "R1", "R2", "D1", "source"});
    bool found = false;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][5] != "boundary" || std::stod(rows[i][1]) != 1.0) continue;
        found = true;
        CHECK(std::stod(rows[i][2]) == 0.0);
        CHECK(std::stod(rows[i][3]) == 0.0);
        CHECK(std::stod(rows[i][4]) == 0.0);
    }
    CHECK(found);
}

TEST_CASE("region corollary1 point evaluation") {
    auto result = run_cli("region corollary1 --q 0.6 --gamma 0.5 --p 0.5 --r 1");
    REQUIRE(result.exit_code == 0);
    auto rows = parse_csv(result.stdout_text);
    REQUIRE(rows.size() == 2);
    CHECK(std::stod(rows[1][0]) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(std::stod(rows[1][1]) == 0.0);
    CHECK(std::stod(rows[1][2]) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(std::stod(rows[1][3]) == doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("region dueck-inner reports the product structure in regime 1") {
    auto result = run_cli("region dueck-inner --ps1 0.25");
    REQUIRE(result.exit_code == 0);
    CHECK(result.stdout_text.find("CD = C x D") != std::string::npos);
    CHECK(result.stdout_text.find("0.125") != std::string::npos);
}

TEST_CASE("region thm1 with constant auxiliaries zeroes the per-user caps") {
    auto result = run_cli("region thm1 --channel multiplicative --aux const");
    REQUIRE(result.exit_code == 0);
    auto rows = parse_csv(result.stdout_text);
    for (size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][0]) == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(std::stod(rows[i][1]) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("figure json outputs parse and mirror the csv") {
    auto json_out = run_cli("figure fig4 --format json");
    REQUIRE(json_out.exit_code == 0);
    auto doc = nlohmann::json::parse(json_out.stdout_text);
    REQUIRE(doc.contains("rows"));
    bool saw_null = false;
    for (const auto& row : doc["rows"])
        if (row["time_sharing"].is_null()) saw_null = true;
    CHECK(saw_null);  // time sharing is undefined on the last row

    auto fig2 = run_cli("figure fig2 --grid-res 3 --format json");
    REQUIRE(fig2.exit_code == 0);
    auto doc2 = nlohmann::json::parse(fig2.stdout_text);
    CHECK(doc2["rows"].size() == 3 * 16);  // boundary + two baselines per (r, p) cell
}

TEST_CASE("region thm1 with identity auxiliaries pins the sum rate at zero") {
    auto result = run_cli("region thm1 --channel multiplicative --aux identity");
    REQUIRE(result.exit_code == 0);
    auto rows = parse_csv(result.stdout_text);
    REQUIRE(rows.size() >= 2);
    // conditioning on U = X kills I(X;Y1,Y2|S1,S2,U), so the corner is (0,0)
    CHECK(std::stod(rows[1][0]) + std::stod(rows[1][1]) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("check subcommand exit codes") {
    CHECK(run_cli("check degraded --channel multiplicative").exit_code == 0);
    CHECK(run_cli("check degraded --channel flipping --q 0.3 --gamma 0.8").exit_code == 0);
    CHECK(run_cli("check no-tradeoff --channel erasure --q 0.3 --erase1 0.2 --erase2 0.2 "
                  "--witness indicator").exit_code == 0);
    CHECK(run_cli("check no-tradeoff --channel multiplicative --witness identity").exit_code == 1);
    CHECK(run_cli("check degraded --channel nosuch").exit_code == 2);

    // a perturbed non-degraded document exits 1 and prints the witness
    auto spec = sdmbc::build_multiplicative_bc(0.6, 0.5);
    auto table = spec.transition.table();
    size_t row = static_cast<size_t>(spec.transition_row(0, 0, 1)) *
                 static_cast<size_t>(spec.transition.output_size());
    table[row + static_cast<size_t>(spec.output_cell(0, 0, 0))] = 0.7;
    table[row + static_cast<size_t>(spec.output_cell(0, 1, 1))] = 0.3;
    spec.transition = sdmbc::Kernel({2, 2, 2}, {2, 2, 4}, std::move(table));
    auto path = temp_file("sdmbc_perturbed.json");
    sdmbc::save_channel_file(spec, sdmbc::DistortionMeasure::hamming(spec), path);
    auto result = run_cli("check degraded --spec " + path);
    CHECK(result.exit_code == 1);
    CHECK(result.stdout_text.find("violating") != std::string::npos);
}

TEST_CASE("region degraded refuses a non-degraded channel") {
    auto result = run_cli("region degraded --channel erasure --q 0.3");
    CHECK(result.exit_code == 2);
}

TEST_CASE("estimate prints the always-estimate-one rows for x = 0") {
    auto result = run_cli("estimate --channel multiplicative --q 0.6 --gamma 0.5");
    REQUIRE(result.exit_code == 0);
    auto rows = parse_csv(result.stdout_text);
    bool found = false;
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i][0] == "1" && rows[i][1] == "0") {
            found = true;
            CHECK(rows[i][3] == "1");  // shat1(0, z) = 1 since q > 1/2
        }
    CHECK(found);
}

TEST_CASE("simulate is byte-identical for a fixed seed") {
    auto file1 = temp_file("sdmbc_sim1.json");
    auto file2 = temp_file("sdmbc_sim2.json");
    std::string args = "simulate --channel dueck --ps1 0.75 --input coupled:0 --n 100000 --seed 7";
    CHECK(run_cli(args + " --out " + file1).exit_code == 0);
    CHECK(run_cli(args + " --out " + file2).exit_code == 0);
    std::ifstream a(file1), b(file2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());

    auto doc = nlohmann::json::parse(sa.str());
    double mean = doc["receivers"][0]["mean"].get<double>();
    double se = doc["receivers"][0]["stderr"].get<double>();
    CHECK(std::abs(mean - 5.0 / 32) <= 3 * se);
}

TEST_CASE("simulate output is independent of the thread count") {
    std::string args = "simulate --channel multiplicative --input bern:0.5 --n 150000 --seed 3";
    auto one = run_cli(args, "OMP_NUM_THREADS=1 ");
    auto two = run_cli(args, "OMP_NUM_THREADS=2 ");
    REQUIRE(one.exit_code == 0);
    REQUIRE(two.exit_code == 0);
    CHECK(one.stdout_text == two.stdout_text);
}

TEST_CASE("estimate json output parses") {
    auto result = run_cli("estimate --channel flipping --format json");
    REQUIRE(result.exit_code == 0);
    auto doc = nlohmann::json::parse(result.stdout_text);
    REQUIRE(doc.contains("rows"));
    for (const auto& row : doc["rows"]) {
        double total = 0.0;
        for (const auto& p : row["posterior"]) total += p.get<double>();
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("csv and json region outputs agree at 12 significant digits") {
    auto csv_out = run_cli("region corollary1 --q 0.6 --gamma 0.5 --grid-res 7 --format csv");
    auto json_out = run_cli("region corollary1 --q 0.6 --gamma 0.5 --grid-res 7 --format json");
    REQUIRE(csv_out.exit_code == 0);
    REQUIRE(json_out.exit_code == 0);
    auto rows = parse_csv(csv_out.stdout_text);
    auto doc = nlohmann::json::parse(json_out.stdout_text);
    REQUIRE(doc["points"].size() == rows.size() - 1);
    auto sig12 = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return std::string(buf);
    };
    for (size_t i = 0; i < doc["points"].size(); ++i) {
        CHECK(rows[i + 1][0] == sig12(doc["points"][i]["R1"].get<double>()));
        CHECK(rows[i + 1][1] == sig12(doc["points"][i]["R2"].get<double>()));
        CHECK(rows[i + 1][2] == sig12(doc["points"][i]["D1"].get<double>()));
        CHECK(rows[i + 1][3] == sig12(doc["points"][i]["D2"].get<double>()));
    }
}

TEST_CASE("exit codes for bad parameters and write failures") {
    CHECK(run_cli("figure fig5").exit_code == 2);
    CHECK(run_cli("figure fig4 --ps1 1.5").exit_code == 2);
    CHECK(run_cli("region corollary1 --p 2.0").exit_code == 2);
    CHECK(run_cli("figure fig4 --out /nonexistent-dir/out.csv").exit_code == 3);
    CHECK(run_cli("").exit_code == 2);
}
