#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "sdmbc/channel_io.hpp"
#include "sdmbc/export.hpp"
#include "sdmbc/figures.hpp"
#include "sdmbc/montecarlo.hpp"
#include "sdmbc/regions.hpp"

namespace {

using namespace sdmbc;

// Exit codes: 0 success / property holds, 1 property violated,
// 2 usage or input error, 3 write failure.
constexpr int kOk = 0, kViolated = 1, kUsage = 2, kIoError = 3;

struct ChannelOptions {
    std::string channel = "multiplicative";  // multiplicative|flipping|erasure|dueck
    std::string spec_path;
    double q = 0.6, gamma = 0.5, ps1 = 0.75;
    double erase1 = 0.0, erase2 = 0.0;  // P(E_k = 1) for the erasure channel
};

Pmf independent_erasure_law(double s1, double s2, double e1, double e2) {
    std::vector<double> p(16);
    for (int i = 0; i < 16; ++i) {
        int bs1 = (i >> 3) & 1, bs2 = (i >> 2) & 1, be1 = (i >> 1) & 1, be2 = i & 1;
        auto bern = [](double prob1, int bit) { return bit ? prob1 : 1.0 - prob1; };
        p[static_cast<size_t>(i)] = bern(s1, bs1) * bern(s2, bs2) * bern(e1, be1) * bern(e2, be2);
    }
    return Pmf(std::move(p));
}

ChannelDocument resolve_channel(const ChannelOptions& opt) {
    if (!opt.spec_path.empty()) return load_channel_file(opt.spec_path);
    if (opt.channel == "multiplicative") {
        auto spec = build_multiplicative_bc(opt.q, opt.gamma);
        return {spec, DistortionMeasure::hamming(spec)};
    }
    if (opt.channel == "flipping") {
        auto spec = build_flipping_bc(opt.q, opt.gamma);
        return {spec, DistortionMeasure::hamming(spec)};
    }
    if (opt.channel == "erasure") {
        auto spec = build_erasure_bc(independent_erasure_law(opt.q, opt.q, opt.erase1, opt.erase2));
        return {spec, DistortionMeasure::erasure_state_component()};
    }
    if (opt.channel == "dueck") {
        auto spec = build_dueck_bc(Pmf::bernoulli(opt.ps1));
        return {spec, DistortionMeasure::hamming(spec)};
    }
    throw CLI::ValidationError("--channel", "unknown channel " + opt.channel);
}

int write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return kOk;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open " << path << " for writing\n";
        return kIoError;
    }
    out << content;
    if (!out.good()) {
        std::cerr << "error: write to " << path << " failed\n";
        return kIoError;
    }
    return kOk;
}

void add_channel_flags(CLI::App* cmd, ChannelOptions& opt) {
    cmd->add_option("--channel", opt.channel, "built-in channel name")
        ->check(CLI::IsMember({"multiplicative", "flipping", "erasure", "dueck"}));
    cmd->add_option("--spec", opt.spec_path, "channel document path (overrides --channel)");
    cmd->add_option("--q", opt.q, "state parameter q (also P(S=1) for erasure)");
    cmd->add_option("--gamma", opt.gamma, "state parameter gamma");
    cmd->add_option("--ps1", opt.ps1, "P(S_k = 1) for the dueck channel");
    cmd->add_option("--erase1", opt.erase1, "P(E_1 = 1) for the erasure channel");
    cmd->add_option("--erase2", opt.erase2, "P(E_2 = 1) for the erasure channel");
}

Pmf parse_input_law(const std::string& text, const SdmbcSpec& spec) {
    if (text == "uniform") return Pmf::uniform(spec.nx);
    if (text.rfind("point:", 0) == 0) return Pmf::point_mass(spec.nx, std::stoi(text.substr(6)));
    if (text.rfind("bern:", 0) == 0) {
        if (spec.nx != 2) throw std::invalid_argument("bern input law needs a binary input");
        return Pmf::bernoulli(std::stod(text.substr(5)));
    }
    if (text.rfind("coupled:", 0) == 0) {
        if (spec.nx != 8) throw std::invalid_argument("coupled input law needs the dueck channel");
        return dueck_coupled_input(std::stod(text.substr(8)));
    }
    throw std::invalid_argument("input law must be uniform, point:K, bern:P or coupled:BETA");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"state estimation and rate-distortion bounds for state-dependent broadcast "
                 "channels with generalized feedback"};
    app.require_subcommand(1);

    ChannelOptions channel_opt;
    std::string out_path, format = "csv";
    uint64_t seed = 0, n_samples = 1000000;

    // figure --------------------------------------------------------------
    auto* figure = app.add_subcommand("figure", "emit the data table behind a bundled figure");
    std::string figure_name;
    double fig_q = 0.6, fig_gamma = 0.5, fig_ps1 = 0.75;
    int fig_res = 20;
    figure->add_option("name", figure_name, "fig2 or fig4")->required();
    figure->add_option("--q", fig_q, "channel parameter q (fig2)");
    figure->add_option("--gamma", fig_gamma, "channel parameter gamma (fig2)");
    figure->add_option("--ps1", fig_ps1, "state probability (fig4)");
    figure->add_option("--grid-res", fig_res, "grid intervals per axis (fig2)");
    figure->add_option("--out", out_path, "output path (default stdout)");
    figure->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // region --------------------------------------------------------------
    auto* region = app.add_subcommand("region", "evaluate a region or bound");
    std::string region_kind;
    double par_p = 0.5, par_r = 1.0, par_beta = 0.0, par_q_aux = 0.5, par_gamma_ts = 1.0,
           beta_prime = 0.5;
    int u_card = 0, grid_res = 21, preset_which = 1;
    std::string aux_kind = "const";
    bool have_p = false, have_r = false, have_beta = false, have_q_aux = false;
    region->add_option("kind", region_kind,
                       "degraded | corollary1 | corollary2 | dueck-outer | dueck-inner | thm1 | prop3")
        ->required();
    add_channel_flags(region, channel_opt);
    region->add_option("--p", par_p)->each([&](const std::string&) { have_p = true; });
    region->add_option("--r", par_r)->each([&](const std::string&) { have_r = true; });
    region->add_option("--beta", par_beta)->each([&](const std::string&) { have_beta = true; });
    region->add_option("--q-aux", par_q_aux)->each([&](const std::string&) { have_q_aux = true; });
    region->add_option("--gamma-ts", par_gamma_ts, "time-sharing fraction (dueck-inner)");
    region->add_option("--u-card", u_card, "auxiliary cardinality (default |X|+1)");
    region->add_option("--grid-res", grid_res, "simplex lattice resolution");
    region->add_option("--aux", aux_kind, "thm1 auxiliaries: const | identity | grid");
    region->add_option("--preset", preset_which, "prop3 preset: 1, 2 (feedback) or 3 (plain)");
    region->add_option("--beta-prime", beta_prime, "input coupling for prop3 presets");
    region->add_option("--out", out_path, "output path (default stdout)");
    region->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // check ---------------------------------------------------------------
    auto* check = app.add_subcommand("check", "structural property checks");
    std::string check_kind, witness_name = "indicator";
    int witness_samples = 20;
    check->add_option("kind", check_kind, "degraded | no-tradeoff")->required();
    add_channel_flags(check, channel_opt);
    check->add_option("--witness", witness_name, "no-tradeoff witness: indicator | identity | constant");
    check->add_option("--samples", witness_samples, "random input laws for no-tradeoff");
    check->add_option("--seed", seed, "rng seed");

    // estimate ------------------------------------------------------------
    auto* estimate = app.add_subcommand("estimate", "dump the optimal estimator table");
    add_channel_flags(estimate, channel_opt);
    estimate->add_option("--out", out_path, "output path (default stdout)");
    estimate->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // simulate ------------------------------------------------------------
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo distortion estimate");
    std::string input_law_text = "uniform";
    add_channel_flags(simulate_cmd, channel_opt);
    simulate_cmd->add_option("--input", input_law_text, "uniform | point:K | bern:P | coupled:BETA");
    simulate_cmd->add_option("--n", n_samples, "number of rounds");
    simulate_cmd->add_option("--seed", seed, "rng seed");
    simulate_cmd->add_option("--out", out_path, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (figure->parsed()) {
            std::string content;
            if (figure_name == "fig2") {
                auto rows = fig2_table(fig_q, fig_gamma, fig_res);
                content = (format == "csv") ? fig2_csv(rows) : fig2_json(rows);
            } else if (figure_name == "fig4") {
                auto rows = fig4_table(fig_ps1);
                content = (format == "csv") ? fig4_csv(rows) : fig4_json(rows);
            } else {
                std::cerr << "error: figure name must be fig2 or fig4\n";
                return kUsage;
            }
            return write_output(out_path, content);
        }

        if (region->parsed()) {
            ParetoSet set;
            std::string source = region_kind;
            if (region_kind == "corollary1" || region_kind == "corollary2") {
                auto corner = (region_kind == "corollary1")
                                  ? multiplicative_corner(channel_opt.q, channel_opt.gamma, par_p, par_r)
                                  : flipping_corner(channel_opt.q, channel_opt.gamma, par_p, par_r);
                if (have_p || have_r) {
                    set.points = {corner};
                } else {
                    std::vector<RegionPoint> pts;
                    for (int i = 0; i <= grid_res; ++i)
                        for (int j = 0; j <= grid_res; ++j) {
                            double p = static_cast<double>(i) / grid_res;
                            double r = static_cast<double>(j) / grid_res;
                            pts.push_back(region_kind == "corollary1"
                                              ? multiplicative_corner(channel_opt.q, channel_opt.gamma, p, r)
                                              : flipping_corner(channel_opt.q, channel_opt.gamma, p, r));
                        }
                    set = pareto_frontier(std::move(pts));
                }
            } else if (region_kind == "degraded") {
                auto doc = resolve_channel(channel_opt);
                auto degraded = check_physically_degraded(doc.spec);
                if (!degraded.degraded) {
                    std::cerr << "error: channel is not physically degraded; violating (s1,y1,x,x') = ("
                              << degraded.violation[0] << "," << degraded.violation[1] << ","
                              << degraded.violation[2] << "," << degraded.violation[3] << ")\n";
                    return kUsage;
                }
                int cards = u_card > 0 ? u_card : doc.spec.nx + 1;
                set = degraded_region(doc.spec, doc.distortion, cards, grid_res);
            } else if (region_kind == "dueck-outer") {
                if (have_p || have_beta || have_q_aux) {
                    set.points = {dueck_outer_corner(channel_opt.ps1, {par_p, par_q_aux, par_beta})};
                } else {
                    set = dueck_outer_region(channel_opt.ps1, grid_res);
                }
            } else if (region_kind == "dueck-inner") {
                auto result = dueck_inner_region(channel_opt.ps1, {par_beta, par_gamma_ts});
                if (result.product_structure)
                    std::cout << "CD = C x D (no tradeoff); D_min = " << format_number(result.d_min)
                              << "\n";
                set.points = result.corners;
            } else if (region_kind == "thm1") {
                auto doc = resolve_channel(channel_opt);
                int cards = u_card > 0 ? u_card : doc.spec.nx + 1;
                if (aux_kind == "grid") {
                    set = outer_bound_envelope(doc.spec, doc.distortion, cards, grid_res);
                } else {
                    Kernel k = (aux_kind == "identity")
                                   ? Kernel::deterministic({doc.spec.nx}, {doc.spec.nx},
                                                           [](const std::vector<int>& i) { return i[0]; })
                                   : Kernel::deterministic({doc.spec.nx}, {1},
                                                           [](const std::vector<int>&) { return 0; });
                    OuterAux aux{Pmf::uniform(doc.spec.nx), k, k};
                    auto eval = outer_bound_eval(doc.spec, doc.distortion, aux);
                    set.points = eval.corners();
                }
            } else if (region_kind == "prop3") {
                auto doc = resolve_channel(channel_opt);
                if (doc.spec.name != "dueck") {
                    std::cerr << "error: prop3 presets are defined for the dueck channel\n";
                    return kUsage;
                }
                InnerAux aux = (preset_which == 3) ? dueck_plain_aux(beta_prime)
                                                   : dueck_feedback_aux(preset_which, beta_prime);
                auto eval = inner_bound_eval(doc.spec, doc.distortion, aux);
                set.points = eval.corners();
            } else {
                std::cerr << "error: unknown region kind " << region_kind << "\n";
                return kUsage;
            }
            std::string content =
                (format == "csv") ? region_csv(set, source) : region_json(set, source);
            return write_output(out_path, content);
        }

        if (check->parsed()) {
            auto doc = resolve_channel(channel_opt);
            if (check_kind == "degraded") {
                auto result = check_physically_degraded(doc.spec);
                if (result.degraded) {
                    std::cout << "physically degraded: yes\n";
                    return kOk;
                }
                std::cout << "physically degraded: no; violating (s1,y1,x,x') = ("
                          << result.violation[0] << "," << result.violation[1] << ","
                          << result.violation[2] << "," << result.violation[3] << ")\n";
                return kViolated;
            }
            if (check_kind == "no-tradeoff") {
                NoTradeoffWitness witness;
                if (witness_name == "indicator") {
                    if (doc.spec.name != "erasure") {
                        std::cerr << "error: the indicator witness is defined for the erasure channel\n";
                        return kUsage;
                    }
                    witness = erasure_indicator_witness();
                } else if (witness_name == "identity") {
                    witness = identity_witness(doc.spec.nz);
                } else if (witness_name == "constant") {
                    witness = constant_witness(doc.spec.nz);
                } else {
                    std::cerr << "error: witness must be indicator, identity or constant\n";
                    return kUsage;
                }
                bool holds = check_no_tradeoff(doc.spec, witness, witness_samples, seed);
                std::cout << "no-tradeoff conditions: " << (holds ? "hold" : "violated") << "\n";
                return holds ? kOk : kViolated;
            }
            std::cerr << "error: check kind must be degraded or no-tradeoff\n";
            return kUsage;
        }

        if (estimate->parsed()) {
            auto doc = resolve_channel(channel_opt);
            auto table = optimal_estimator(doc.spec, doc.distortion);
            std::string content = (format == "csv") ? estimator_csv(doc.spec, table)
                                                    : estimator_json(doc.spec, table);
            return write_output(out_path, content);
        }

        if (simulate_cmd->parsed()) {
            auto doc = resolve_channel(channel_opt);
            auto law = parse_input_law(input_law_text, doc.spec);
            auto table = optimal_estimator(doc.spec, doc.distortion);
            auto result = simulate(doc.spec, table, doc.distortion, {n_samples, seed, law});
            return write_output(out_path, sim_result_json(result));
        }
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
