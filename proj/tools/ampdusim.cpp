// Command-line front end: grid runs, per-point best-strategy search,
// single-point k sweeps, the closed-form throughput and the small-window
// exact oracle. Infeasible configurations are reported as data rows, not
// process failures; only invalid input exits nonzero.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ampdusim/experiment.hpp"

namespace {

using namespace ampdusim;

struct GridCli {
    std::string spec_path;
    bool paper_grid = false;
    std::vector<int> msdu;
    std::vector<int> msdus_per_mpdu;
    std::string mode;
    std::vector<double> rates;
    std::vector<double> pers;
    std::vector<std::string> strategies;
    int window = 0;
    long attempts = 0;
    std::uint64_t seed = 0;
    std::string format;
    std::string out;
    int jobs = 1;

    CLI::Option* seed_opt = nullptr;
    CLI::Option* spec_opt = nullptr;
    CLI::Option* grid_opt = nullptr;
};

void add_grid_options(CLI::App* cmd, GridCli& g) {
    g.spec_opt = cmd->add_option("--spec", g.spec_path, "JSON experiment description")
                     ->check(CLI::ExistingFile);
    g.grid_opt = cmd->add_flag("--paper-grid", g.paper_grid,
                               "use the built-in full grid (4 sizes x 4 rates x 10 PERs x 21 methods)");
    g.grid_opt->excludes(g.spec_opt);
    cmd->add_option("--msdu", g.msdu, "MSDU sizes in bytes");
    cmd->add_option("--msdus-per-mpdu", g.msdus_per_mpdu, "MSDUs aggregated into each MPDU");
    cmd->add_option("--mode", g.mode, "aggregation mode: ampdu or two_level")
        ->check(CLI::IsMember({"ampdu", "two_level"}));
    cmd->add_option("--rate", g.rates, "PHY rates in Mbps");
    cmd->add_option("--per", g.pers, "MPDU error rates in [0,1]");
    cmd->add_option("--strategy", g.strategies,
                    "duplication methods (base, <d>mpdu<c>, all<c>)");
    cmd->add_option("--window", g.window, "transmission window W (1..64)")
        ->check(CLI::Range(1, 64));
    cmd->add_option("--attempts", g.attempts, "frame exchanges per run")
        ->check(CLI::PositiveNumber);
    g.seed_opt = cmd->add_option("--seed", g.seed, "master seed")->envname("AMPDU_SIM_SEED");
    cmd->add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", g.out, "output path (default stdout)");
    cmd->add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
}

ExperimentSpec build_spec(const GridCli& g, bool require_source) {
    const bool has_axis_override = !g.msdu.empty() || !g.msdus_per_mpdu.empty() ||
                                   !g.mode.empty() || !g.rates.empty() || !g.pers.empty() ||
                                   !g.strategies.empty();
    if (require_source && g.spec_path.empty() && !g.paper_grid && !has_axis_override)
        throw std::invalid_argument(
            "provide --spec, --paper-grid, or at least one axis flag "
            "(--msdu/--rate/--per/--strategy/...)");

    ExperimentSpec spec = g.spec_path.empty() ? default_grid_spec() : load_spec(g.spec_path);
    if (!g.msdu.empty()) spec.msdu_bytes = g.msdu;
    if (!g.msdus_per_mpdu.empty()) spec.msdus_per_mpdu = g.msdus_per_mpdu;
    if (!g.mode.empty()) spec.mode = detail::parse_mode(g.mode);
    if (!g.rates.empty()) spec.rates_mbps = g.rates;
    if (!g.pers.empty()) spec.pers = g.pers;
    if (!g.strategies.empty()) {
        spec.strategies.clear();
        for (const auto& s : g.strategies) spec.strategies.push_back(parse_strategy(s));
    }
    if (g.window > 0) spec.window_w = g.window;
    if (g.attempts > 0) spec.attempts = g.attempts;
    if (g.seed_opt && g.seed_opt->count() > 0) spec.seed = g.seed;
    if (!g.format.empty()) spec.format = detail::parse_format(g.format);
    if (!g.out.empty()) spec.out = g.out;
    spec.normalize_and_validate();
    return spec;
}

template <typename Records>
int emit(const ExperimentSpec& spec, const Records& records) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!spec.out.empty()) {
        file.open(spec.out);
        if (!file) {
            std::cerr << "error: cannot open output path \"" << spec.out << "\"\n";
            return 1;
        }
        os = &file;
    }
    if (spec.format == OutputFormat::Json)
        write_json(*os, records);
    else
        write_csv(*os, records);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Saturated-link throughput of duplicated MPDUs in aggregated frames"};
    app.require_subcommand(1);

    GridCli run_cli;
    CLI::App* run_cmd = app.add_subcommand(
        "run", "simulate every (axes, strategy) combination, k-swept");
    add_grid_options(run_cmd, run_cli);

    GridCli best_cli;
    CLI::App* best_cmd = app.add_subcommand(
        "best", "best duplication method per axes point versus the baseline");
    add_grid_options(best_cmd, best_cli);

    GridCli sweep_cli;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep-k", "throughput versus k for one point and one strategy");
    add_grid_options(sweep_cmd, sweep_cli);

    struct {
        int x = 1;
        int msdu = 1500;
        int msdus_per_mpdu = 1;
        std::string mode = "ampdu";
        double rate = 433.3;
        double psucc = 1.0;
    } an;
    CLI::App* analytic_cmd = app.add_subcommand(
        "analytic", "closed-form saturated throughput in Mbps");
    analytic_cmd->add_option("--x", an.x, "distinct MPDUs per frame")->check(CLI::Range(1, 64));
    analytic_cmd->add_option("--msdu", an.msdu, "MSDU size in bytes")->required();
    analytic_cmd->add_option("--msdus-per-mpdu", an.msdus_per_mpdu, "MSDUs per MPDU");
    analytic_cmd->add_option("--mode", an.mode, "ampdu or two_level")
        ->check(CLI::IsMember({"ampdu", "two_level"}));
    analytic_cmd->add_option("--rate", an.rate, "PHY rate in Mbps")->required();
    analytic_cmd->add_option("--psucc", an.psucc, "per-MPDU delivery probability");

    struct {
        int window = 1;
        int k = 0;
        std::string strategy = "base";
        int msdu = 1500;
        int msdus_per_mpdu = 1;
        std::string mode = "ampdu";
        double rate = 433.3;
        double per = 0.0;
    } orc;
    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "exact small-window throughput in Mbps (W <= 4)");
    oracle_cmd->add_option("--window", orc.window, "window W")->check(CLI::Range(1, 4))->required();
    oracle_cmd->add_option("--k", orc.k, "distinct MPDUs per attempt (default W)");
    oracle_cmd->add_option("--strategy", orc.strategy, "duplication method");
    oracle_cmd->add_option("--msdu", orc.msdu, "MSDU size in bytes")->required();
    oracle_cmd->add_option("--msdus-per-mpdu", orc.msdus_per_mpdu, "MSDUs per MPDU");
    oracle_cmd->add_option("--mode", orc.mode, "ampdu or two_level")
        ->check(CLI::IsMember({"ampdu", "two_level"}));
    oracle_cmd->add_option("--rate", orc.rate, "PHY rate in Mbps")->required();
    oracle_cmd->add_option("--per", orc.per, "MPDU error rate")->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (run_cmd->parsed()) {
            const ExperimentSpec spec = build_spec(run_cli, true);
            return emit(spec, run_experiment(spec, run_cli.jobs));
        }
        if (best_cmd->parsed()) {
            const ExperimentSpec spec = build_spec(best_cli, true);
            return emit(spec, best_experiment(spec, best_cli.jobs));
        }
        if (sweep_cmd->parsed()) {
            const ExperimentSpec spec = build_spec(sweep_cli, true);
            return emit(spec, ksweep_records(spec));
        }
        if (analytic_cmd->parsed()) {
            FrameGeometry geom;
            geom.msdu_bytes = an.msdu;
            geom.msdus_per_mpdu = an.msdus_per_mpdu;
            geom.mode = ampdusim::detail::parse_mode(an.mode);
            MacTimingProfile timing;
            const PhyProfile phy = PhyProfile::from_rate(an.rate, timing.t_sym_us);
            std::cout << format_double(analytic_throughput_eq1(an.x, an.psucc, geom, timing, phy))
                      << "\n";
            return 0;
        }
        if (oracle_cmd->parsed()) {
            SimConfig cfg;
            cfg.geom.msdu_bytes = orc.msdu;
            cfg.geom.msdus_per_mpdu = orc.msdus_per_mpdu;
            cfg.geom.mode = ampdusim::detail::parse_mode(orc.mode);
            cfg.phy = PhyProfile::from_rate(orc.rate, cfg.timing.t_sym_us);
            cfg.model.per = orc.per;
            cfg.strategy = parse_strategy(orc.strategy);
            cfg.window_w = orc.window;
            cfg.k = orc.k > 0 ? orc.k : orc.window;
            std::cout << format_double(markov_oracle(cfg)) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
