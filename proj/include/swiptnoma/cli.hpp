// SPDX-License-Identifier: Apache-2.0
//
// swiptnoma: outage analysis toolkit for energy-harvesting NOMA relaying
// Copyright (C) 2026 The swiptnoma authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SWIPTNOMA_CLI_HPP
#define SWIPTNOMA_CLI_HPP

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analytic.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "model.hpp"
#include "montecarlo.hpp"
#include "scenario.hpp"

namespace swiptnoma::cli
{

// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_numerical = 1;
inline constexpr int exit_validation = 2;

inline constexpr const char *output_dir_env = "SWIPT_NOMA_OUT_DIR";

namespace detail
{

inline std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

// Trial counts may be written as 1e6.
inline std::uint64_t parse_count(const std::string &text, const char *what)
{
    char *end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !(v >= 1.0) || v != std::floor(v) || v > 1e15) {
        throw invalid_config(std::string(what) + " must be a positive integer, got '" + text + "'");
    }
    return static_cast<std::uint64_t>(v);
}

inline sic_residual_mode parse_residual_mode(const std::string &text)
{
    if (text == "mean" || text == "mean_power") {
        return sic_residual_mode::mean_power;
    }
    if (text == "random") {
        return sic_residual_mode::random;
    }
    throw invalid_config("residual mode must be 'mean' or 'random', got '" + text + "'");
}

inline std::string file_safe(const std::string &s)
{
    std::string out;
    for (char ch : s) {
        const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-';
        out += ok ? ch : '_';
    }
    return out;
}

inline void emit_csv(const std::vector<csv_row> &rows, const std::string &path, std::ostream &out)
{
    if (path.empty() || path == "-") {
        write_csv(out, rows);
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw invalid_config("cannot write '" + path + "'");
    }
    write_csv(f, rows);
}

} // namespace detail

struct analytic_options {
    std::string scenario_path;
    std::string csv_path;
};

inline int cmd_analytic(const analytic_options &opt, std::ostream &out)
{
    const auto sc = load_scenario(opt.scenario_path);
    const auto a = evaluate_analytic(sc.config, sc.topology);
    out << "protocol: " << protocol_name(sc.config.protocol) << '\n';
    out << "P1    = " << detail::sci(a.p1) << (a.p1_is_approximate ? " (approximate)" : " (exact)") << '\n';
    out << "P2    = " << detail::sci(a.p2) << '\n';
    out << "P_sys = " << detail::sci(a.p_system) << '\n';
    if (a.x2_infeasible) {
        out << "note: (1 + phi2) * pa_alpha >= 1, the x2 SINR threshold is unreachable; P2 = 1\n";
    }
    if (!opt.csv_path.empty()) {
        detail::emit_csv({to_csv_row(sc.config, a)}, opt.csv_path, out);
    }
    return exit_ok;
}

struct simulate_options {
    std::string scenario_path;
    std::string trials = "1000000";
    std::uint64_t seed = 1;
    std::string residual_mode = "mean";
    std::size_t chunks = 16;
    std::size_t threads = 0;
    bool with_analytic = false;
    std::string csv_path;
};

inline int cmd_simulate(const simulate_options &opt, std::ostream &out)
{
    const auto sc = load_scenario(opt.scenario_path);
    simulation_plan plan;
    plan.trials = detail::parse_count(opt.trials, "--trials");
    plan.seed = opt.seed;
    plan.residual_mode = detail::parse_residual_mode(opt.residual_mode);
    plan.worker_chunks = opt.chunks;
    plan.threads = opt.threads;

    std::vector<csv_row> rows{to_csv_row(sc.config, estimate_outage(sc.config, sc.topology, plan))};
    if (opt.with_analytic) {
        rows.push_back(to_csv_row(sc.config, evaluate_analytic(sc.config, sc.topology)));
    }
    detail::emit_csv(rows, opt.csv_path, out);
    return exit_ok;
}

struct reproduce_options {
    std::string figure;
    std::string out_dir;
    bool with_mc = false;
    std::string trials = "1000000";
    std::uint64_t seed = 1;
};

inline int cmd_reproduce(const reproduce_options &opt, std::ostream &out)
{
    const auto fig = make_figure_preset(opt.figure);
    std::string dir = opt.out_dir;
    if (dir.empty()) {
        const char *env = std::getenv(output_dir_env);
        dir = env && *env ? env : ".";
    }
    std::filesystem::create_directories(dir);

    for (auto spec : fig.families) {
        if (opt.with_mc) {
            simulation_plan plan;
            plan.trials = detail::parse_count(opt.trials, "--trials");
            plan.seed = opt.seed;
            spec.plan = plan;
            spec.engines = engine_selection::both;
        }
        const auto result = run_sweep(spec);
        const auto path = std::filesystem::path(dir) / (fig.name + "_" + detail::file_safe(spec.label) + ".csv");
        std::ofstream f(path);
        if (!f) {
            throw invalid_config("cannot write '" + path.string() + "'");
        }
        write_csv(f, to_csv_rows(result));
        std::size_t failed = 0;
        for (const auto &r : result.records) {
            failed += r.failed;
        }
        out << path.string() << " (" << result.records.size() << " records";
        if (failed) {
            out << ", " << failed << " failed";
        }
        out << ")\n";
    }
    return exit_ok;
}

struct optimize_options {
    std::string scenario_path;
    std::string param;
    std::size_t refine = 3;
};

inline int cmd_optimize(const optimize_options &opt, std::ostream &out)
{
    const auto sc = load_scenario(opt.scenario_path);
    sweep_spec spec;
    spec.base = sc.config;
    spec.topo = sc.topology;
    spec.protocols = {sc.config.protocol};
    if (opt.param == "rho") {
        spec.axis = sweep_axis::rho;
        spec.grid = default_factor_grid();
    } else if (opt.param == "xi") {
        spec.axis = sweep_axis::xi;
        spec.grid = default_factor_grid();
    } else if (opt.param == "alpha") {
        spec.axis = sweep_axis::alpha;
        spec.grid = default_alpha_grid();
    } else {
        throw invalid_config("--param must be rho, xi or alpha");
    }
    const auto rep = optimize_parameter(spec, opt.refine);

    out << "protocol: " << protocol_name(rep.protocol) << '\n';
    out << "parameter: " << axis_name(rep.axis) << '\n';
    if (rep.degenerate) {
        out << "degenerate: every grid point is in outage\n";
        return exit_numerical;
    }
    out << "optimum: " << detail::sci(rep.argmin) << '\n';
    out << "p_sys: " << detail::sci(rep.p_sys) << '\n';
    out << "benchmark_p_sys: " << detail::sci(rep.benchmark_p_sys) << '\n';
    out << "margin_vs_no_eh: " << detail::sci(rep.margin) << '\n';
    out << "floor_onset: " << detail::sci(rep.floor_onset) << '\n';
    return exit_ok;
}

// Entry point shared by the executable and the tests.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Outage analysis for energy-harvesting NOMA relaying"};
    app.require_subcommand(1);

    analytic_options a;
    auto *analytic_cmd = app.add_subcommand("analytic", "Closed-form and quadrature outage at one operating point");
    analytic_cmd->add_option("scenario", a.scenario_path, "Scenario file")->required();
    analytic_cmd->add_option("--csv", a.csv_path, "Also write a CSV row ('-' for stdout)");

    simulate_options s;
    auto *simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo outage estimate as CSV");
    simulate_cmd->add_option("scenario", s.scenario_path, "Scenario file")->required();
    simulate_cmd->add_option("--trials", s.trials, "Number of trials (e.g. 1e6)");
    simulate_cmd->add_option("--seed", s.seed, "Seed");
    simulate_cmd->add_option("--residual-mode", s.residual_mode, "SIC residual: mean or random");
    simulate_cmd->add_option("--chunks", s.chunks, "Work chunks (part of the determinism key)");
    simulate_cmd->add_option("--threads", s.threads, "Worker threads, 0 = all cores");
    simulate_cmd->add_flag("--with-analytic", s.with_analytic, "Append the analytic row");
    simulate_cmd->add_option("--csv", s.csv_path, "Output file (default stdout)");

    reproduce_options r;
    auto *reproduce_cmd = app.add_subcommand("reproduce", "Write the CSV curves of a figure preset");
    reproduce_cmd->add_option("--figure", r.figure, "Preset name, fig3a .. fig8d")->required();
    reproduce_cmd->add_option("--out", r.out_dir, std::string("Output directory (default $") + output_dir_env
                                                      + " or .)");
    reproduce_cmd->add_flag("--with-mc", r.with_mc, "Add Monte-Carlo markers");
    reproduce_cmd->add_option("--trials", r.trials, "Monte-Carlo trials per point");
    reproduce_cmd->add_option("--seed", r.seed, "Monte-Carlo seed");

    optimize_options o;
    auto *optimize_cmd = app.add_subcommand("optimize", "Grid search for the best rho, xi or alpha");
    optimize_cmd->add_option("scenario", o.scenario_path, "Scenario file")->required();
    optimize_cmd->add_option("--param", o.param, "rho, xi or alpha")->required();
    optimize_cmd->add_option("--refine", o.refine, "Refinement rounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_validation;
    }

    try {
        if (*analytic_cmd) {
            return cmd_analytic(a, out);
        }
        if (*simulate_cmd) {
            return cmd_simulate(s, out);
        }
        if (*reproduce_cmd) {
            return cmd_reproduce(r, out);
        }
        if (*optimize_cmd) {
            return cmd_optimize(o, out);
        }
    } catch (const numerical_failure &e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const invalid_config &e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_validation;
}

} // namespace swiptnoma::cli

#endif
