#pragma once

// Command-line front end. Three subcommands:
//   validate <file>                      check every scenario invariant
//   run <file> [--out DIR] [--seed S] [--ticks L] [--plot LIST]
//   plot <trace> [--plot LIST]
// Exit codes: 0 success, 2 parse/validation, 3 no free region,
// 4 insufficient capacity, 5 divergence, 6 tick limit.
// The SWARMSIM_OUT environment variable supplies the default output
// directory for `run`. All output is a pure function of the inputs.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarmsim/engine.hpp"
#include "swarmsim/error.hpp"
#include "swarmsim/plot.hpp"
#include "swarmsim/scenario.hpp"
#include "swarmsim/trace.hpp"

namespace swarmsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsageOrValidation = 2;
inline constexpr int kExitNoFreeRegion = 3;
inline constexpr int kExitInsufficientCapacity = 4;
inline constexpr int kExitDiverged = 5;
inline constexpr int kExitTickLimit = 6;

inline int exit_code_for(Outcome outcome) {
    switch (outcome) {
        case Outcome::Completed: return kExitOk;
        case Outcome::NoFreeRegion: return kExitNoFreeRegion;
        case Outcome::InsufficientCapacity: return kExitInsufficientCapacity;
        case Outcome::IntegrationDiverged: return kExitDiverged;
        case Outcome::TickLimit: return kExitTickLimit;
        case Outcome::Fault: return kExitUsageOrValidation;
    }
    return kExitUsageOrValidation;
}

namespace detail {

inline const std::set<std::string> kPlotFlags = {"trajectories", "formation-error", "distance",
                                                 "regions"};

inline std::vector<std::string> parse_plot_list(const std::string& list) {
    std::vector<std::string> flags;
    std::string cur;
    std::istringstream in(list);
    while (std::getline(in, cur, ',')) {
        if (cur.empty()) continue;
        if (!kPlotFlags.count(cur))
            throw SimError(Err::InvalidArgument,
                           "unknown plot flag \"" + cur +
                               "\" (expected trajectories, formation-error, distance, regions)");
        flags.push_back(cur);
    }
    return flags;
}

inline void write_plots(const SimTrace& trace, const PlotContext& ctx,
                        const std::filesystem::path& stem, const std::vector<std::string>& flags) {
    for (const std::string& flag : flags) {
        const std::string base = stem.string() + "_";
        if (flag == "trajectories")
            write_trajectories_svg(trace, ctx, base + "trajectories.svg");
        else if (flag == "regions")
            write_regions_svg(trace, ctx, base + "regions.svg");
        else if (flag == "formation-error")
            write_formation_error_svg(trace, base + "formation_error.svg");
        else if (flag == "distance")
            write_distance_svg(trace, base + "distance.svg");
    }
}

inline std::string two_decimals(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline int cmd_validate(const std::string& path, std::ostream& out) {
    std::ifstream in(path);
    if (!in) {
        out << "error: cannot open scenario file " << path << "\n";
        return kExitUsageOrValidation;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    Scenario sc;
    try {
        sc = parse_scenario(buffer.str());
    } catch (const SimError& e) {
        out << "parse error: " << e.what() << "\n";
        return kExitUsageOrValidation;
    }
    bool all_ok = true;
    for (const ScenarioCheck& c : scenario_checks(sc)) {
        all_ok = all_ok && c.passed;
        out << (c.passed ? "PASS" : "FAIL") << "  " << c.name << ": " << c.detail << "\n";
    }
    return all_ok ? kExitOk : kExitUsageOrValidation;
}

inline int cmd_run(const std::string& scenario_path, std::optional<std::string> out_dir,
                   std::optional<std::uint64_t> seed_override, std::optional<long> tick_limit,
                   const std::vector<std::string>& plot_flags, std::ostream& out) {
    Scenario sc = load_scenario(scenario_path);
    if (seed_override) sc.seed = *seed_override;

    std::filesystem::path dir;
    if (out_dir) {
        dir = *out_dir;
    } else if (const char* env = std::getenv("SWARMSIM_OUT")) {
        dir = env;
    } else {
        dir = ".";
    }
    std::filesystem::create_directories(dir);

    const RunResult result = run(sc, tick_limit);

    const std::filesystem::path stem = dir / sc.output_basename;
    write_trace_csv(result.trace, stem.string() + ".csv");
    write_events(result.trace, stem.string() + ".events");

    std::ostringstream summary;
    summary << "outcome: " << outcome_name(result.outcome) << "\n";
    if (!result.message.empty()) summary << "detail: " << result.message << "\n";
    summary << "ticks: " << result.summary.total_ticks << "\n";
    summary << "phase1: " << two_decimals(result.summary.phase1_time) << " s\n";
    summary << "phase2: " << two_decimals(result.summary.phase2_time) << " s\n";
    summary << "master: " << result.summary.master << "\n";
    summary << "final formation error: " << swarmsim::detail::fmt_double(
                   result.summary.final_formation_error)
            << "\n";
    for (std::size_t i = 0; i < result.summary.distance_totals.size(); ++i)
        summary << "distance agent " << (i + 1) << ": "
                << two_decimals(result.summary.distance_totals[i]) << "\n";
    std::ofstream sum_file(stem.string() + "_summary.txt", std::ios::trunc);
    sum_file << summary.str();
    out << summary.str();

    if (!plot_flags.empty() && !result.trace.rows.empty()) {
        const PlotContext ctx = plot_context_from_events(result.trace.events);
        write_plots(result.trace, ctx, stem, plot_flags);
    }
    return exit_code_for(result.outcome);
}

inline int cmd_plot(const std::string& trace_path, const std::vector<std::string>& plot_flags,
                    std::ostream& out) {
    const SimTrace trace = read_trace_csv(trace_path);
    if (trace.rows.empty()) throw SimError(Err::EmptyTrace, "trace has no rows: " + trace_path);

    std::filesystem::path path(trace_path);
    const std::filesystem::path stem = path.parent_path() / path.stem();
    std::filesystem::path events_path = path;
    events_path.replace_extension(".events");

    SimTrace with_events = trace;
    with_events.events = read_events(events_path.string());
    const PlotContext ctx = plot_context_from_events(with_events.events);
    write_plots(with_events, ctx, stem, plot_flags);
    out << "wrote " << plot_flags.size() << " plot file(s) for " << trace_path << "\n";
    return kExitOk;
}

}  // namespace detail

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"swarm transport simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string trace_path;
    std::string out_dir;
    std::string plot_list;
    std::uint64_t seed = 0;
    long ticks = 0;

    CLI::App* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("file", scenario_path, "scenario file")->required();

    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario and write the trace");
    run_cmd->add_option("file", scenario_path, "scenario file")->required();
    CLI::Option* out_opt = run_cmd->add_option("--out", out_dir, "output directory");
    CLI::Option* seed_opt = run_cmd->add_option("--seed", seed, "override the scenario seed");
    CLI::Option* ticks_opt =
        run_cmd->add_option("--ticks", ticks, "abort after this many recorded ticks")
            ->check(CLI::PositiveNumber);
    run_cmd->add_option("--plot", plot_list, "comma-separated plot list");

    CLI::App* plot_cmd = app.add_subcommand("plot", "render plots from a written trace");
    plot_cmd->add_option("trace", trace_path, "trace .csv file")->required();
    plot_cmd->add_option("--plot", plot_list, "comma-separated plot list");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitUsageOrValidation;
    }

    try {
        if (validate->parsed()) return detail::cmd_validate(scenario_path, out);
        if (run_cmd->parsed()) {
            std::vector<std::string> flags = detail::parse_plot_list(plot_list);
            return detail::cmd_run(scenario_path,
                                   *out_opt ? std::optional(out_dir) : std::nullopt,
                                   *seed_opt ? std::optional(seed) : std::nullopt,
                                   *ticks_opt ? std::optional(ticks) : std::nullopt, flags, out);
        }
        if (plot_cmd->parsed()) {
            std::vector<std::string> flags = plot_list.empty()
                                                 ? std::vector<std::string>{"trajectories",
                                                                            "formation-error",
                                                                            "distance", "regions"}
                                                 : detail::parse_plot_list(plot_list);
            return detail::cmd_plot(trace_path, flags, out);
        }
    } catch (const SimError& e) {
        err << "error: " << e.what() << "\n";
        switch (e.code()) {
            case Err::NoFreeRegion: return kExitNoFreeRegion;
            case Err::InsufficientCapacity: return kExitInsufficientCapacity;
            case Err::IntegrationDiverged: return kExitDiverged;
            default: return kExitUsageOrValidation;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsageOrValidation;
    }
    return kExitUsageOrValidation;
}

}  // namespace swarmsim::cli
