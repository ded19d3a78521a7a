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

#ifndef SWIPTNOMA_EXPERIMENTS_HPP
#define SWIPTNOMA_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "analytic.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "montecarlo.hpp"

namespace swiptnoma
{

enum class sweep_axis { snr_db, rho, xi, alpha, delta, rate1, rate2 };

inline std::string_view axis_name(sweep_axis a) noexcept
{
    switch (a) {
        case sweep_axis::snr_db:
            return "snr_db";
        case sweep_axis::rho:
            return "rho";
        case sweep_axis::xi:
            return "xi";
        case sweep_axis::alpha:
            return "alpha";
        case sweep_axis::delta:
            return "delta";
        case sweep_axis::rate1:
            return "rate1";
        case sweep_axis::rate2:
            return "rate2";
    }
    return "?";
}

enum class engine_selection { analytic, montecarlo, both };
enum class engine_kind { analytic, montecarlo };
enum class outage_metric { x1, x2, system };

inline std::string_view engine_name(engine_kind e) noexcept { return e == engine_kind::analytic ? "analytic" : "mc"; }

struct sweep_spec {
    std::string label;
    sweep_axis axis = sweep_axis::snr_db;
    std::vector<double> grid;
    system_config base; // protocol member is ignored; see protocols
    fading_topology topo;
    std::vector<eh_protocol> protocols;
    engine_selection engines = engine_selection::analytic;
    std::optional<simulation_plan> plan;
    quadrature_settings quad;

    void validate() const
    {
        if (grid.empty()) {
            throw invalid_config("sweep grid is empty");
        }
        if (protocols.empty()) {
            throw invalid_config("sweep has no protocols");
        }
        for (std::size_t i = 1; i < grid.size(); ++i) {
            if (!(grid[i] > grid[i - 1])) {
                throw invalid_config("sweep grid must be strictly increasing");
            }
        }
        auto in_range = [&](double lo, double hi, bool closed) {
            for (double v : grid) {
                const bool ok = closed ? (v >= lo && v <= hi) : (v > lo && v < hi);
                if (!ok) {
                    throw invalid_config("grid value " + std::to_string(v) + " outside the range of axis "
                                         + std::string(axis_name(axis)));
                }
            }
        };
        switch (axis) {
            case sweep_axis::rho:
            case sweep_axis::xi:
                in_range(0.0, 1.0, false);
                break;
            case sweep_axis::alpha:
                in_range(0.0, 0.5, false);
                break;
            case sweep_axis::delta:
                in_range(0.0, 1.0, true);
                break;
            case sweep_axis::rate1:
            case sweep_axis::rate2:
                in_range(0.0, std::numeric_limits<double>::max(), true);
                break;
            case sweep_axis::snr_db:
                in_range(-std::numeric_limits<double>::max(), std::numeric_limits<double>::max(), true);
                break;
        }
        if (plan) {
            plan->validate();
        }
        quad.validate();
    }
};

// Scenario for one grid point: the base with the protocol substituted and the
// swept variable overridden. rho only affects power sharing, xi only time sharing.
inline system_config apply_axis(const system_config &base, const eh_protocol &protocol, sweep_axis axis, double value)
{
    system_config cfg = base;
    cfg.protocol = protocol;
    switch (axis) {
        case sweep_axis::snr_db:
            cfg.total_power = snr_db_to_total_power(value, cfg.noise_variance);
            break;
        case sweep_axis::rho:
            if (auto *ps = std::get_if<power_sharing>(&cfg.protocol)) {
                ps->rho = value;
            }
            break;
        case sweep_axis::xi:
            if (auto *ts = std::get_if<time_sharing>(&cfg.protocol)) {
                ts->xi = value;
            }
            break;
        case sweep_axis::alpha:
            cfg.pa_alpha = value;
            break;
        case sweep_axis::delta:
            cfg.sic_delta = value;
            break;
        case sweep_axis::rate1:
            cfg.target_rate_1 = value;
            break;
        case sweep_axis::rate2:
            cfg.target_rate_2 = value;
            break;
    }
    return cfg;
}

struct sweep_record {
    std::size_t grid_index = 0;
    double axis_value = 0.0;
    protocol_kind protocol = protocol_kind::no_eh;
    engine_kind engine = engine_kind::analytic;
    double p1 = std::numeric_limits<double>::quiet_NaN();
    double p2 = std::numeric_limits<double>::quiet_NaN();
    double p_sys = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> se_p1;
    std::optional<double> se_p2;
    std::optional<double> se_psys;
    std::optional<std::uint64_t> trials;
    bool approximate = false;
    bool failed = false;
    std::string failure;

    double metric(outage_metric m) const noexcept
    {
        switch (m) {
            case outage_metric::x1:
                return p1;
            case outage_metric::x2:
                return p2;
            case outage_metric::system:
                return p_sys;
        }
        return p_sys;
    }
};

struct sweep_result {
    std::string label;
    sweep_axis axis = sweep_axis::snr_db;
    std::vector<sweep_record> records;
};

inline sweep_record evaluate_point(const system_config &cfg, const fading_topology &topo, engine_kind engine,
                                   const sweep_spec &spec)
{
    sweep_record rec;
    rec.protocol = kind_of(cfg.protocol);
    rec.engine = engine;
    try {
        if (engine == engine_kind::analytic) {
            const auto a = evaluate_analytic(cfg, topo, spec.quad);
            rec.p1 = a.p1;
            rec.p2 = a.p2;
            rec.p_sys = a.p_system;
            rec.approximate = a.p1_is_approximate;
        } else {
            const auto r = estimate_outage(cfg, topo, spec.plan.value_or(simulation_plan{}));
            rec.p1 = r.p1_hat;
            rec.p2 = r.p2_hat;
            rec.p_sys = r.psys_hat;
            rec.se_p1 = r.se_p1;
            rec.se_p2 = r.se_p2;
            rec.se_psys = r.se_psys;
            rec.trials = r.trials;
        }
    } catch (const std::exception &e) {
        rec.failed = true;
        rec.failure = e.what();
        rec.p1 = rec.p2 = rec.p_sys = std::numeric_limits<double>::quiet_NaN();
    }
    return rec;
}

// Records are ordered grid point, then protocol, then engine.
inline sweep_result run_sweep(const sweep_spec &spec)
{
    spec.validate();
    sweep_result out;
    out.label = spec.label;
    out.axis = spec.axis;

    std::vector<engine_kind> engines;
    if (spec.engines != engine_selection::montecarlo) {
        engines.push_back(engine_kind::analytic);
    }
    if (spec.engines != engine_selection::analytic) {
        engines.push_back(engine_kind::montecarlo);
    }

    out.records.reserve(spec.grid.size() * spec.protocols.size() * engines.size());
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        for (const auto &protocol : spec.protocols) {
            const auto cfg = apply_axis(spec.base, protocol, spec.axis, spec.grid[i]);
            for (auto engine : engines) {
                auto rec = evaluate_point(cfg, spec.topo, engine, spec);
                rec.grid_index = i;
                rec.axis_value = spec.grid[i];
                out.records.push_back(std::move(rec));
            }
        }
    }
    return out;
}

// ----- Curves and dB gains --------------------------------------------------

struct curve {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

// Successful points of one (protocol, engine) series in grid order.
inline curve extract_curve(const sweep_result &result, protocol_kind protocol, engine_kind engine,
                           outage_metric metric)
{
    curve c;
    c.name = std::string(protocol_name(protocol)) + "/" + std::string(engine_name(engine));
    for (const auto &r : result.records) {
        if (r.protocol == protocol && r.engine == engine && !r.failed) {
            c.x.push_back(r.axis_value);
            c.y.push_back(r.metric(metric));
        }
    }
    return c;
}

// SNR at which a non-increasing outage curve first reaches target, linear in
// SNR against log10 of the outage probability.
inline double crossing_snr(const curve &c, double target)
{
    if (!(target > 0.0 && target < 1.0)) {
        throw invalid_config("target outage must lie in (0, 1)");
    }
    if (c.x.size() != c.y.size() || c.x.size() < 2) {
        throw invalid_config("curve '" + c.name + "' needs at least two points");
    }
    for (std::size_t i = 1; i < c.y.size(); ++i) {
        if (c.y[i] > c.y[i - 1] * (1.0 + 1e-9)) {
            throw invalid_config("curve '" + c.name + "' is not non-increasing in SNR");
        }
    }
    for (std::size_t i = 0; i + 1 < c.y.size(); ++i) {
        const double hi = c.y[i];
        const double lo = c.y[i + 1];
        if (hi >= target && lo <= target) {
            if (hi == lo) {
                return c.x[i];
            }
            double f;
            if (lo > 0.0) {
                f = (std::log10(hi) - std::log10(target)) / (std::log10(hi) - std::log10(lo));
            } else {
                f = (hi - target) / (hi - lo);
            }
            return c.x[i] + f * (c.x[i + 1] - c.x[i]);
        }
    }
    throw invalid_config("target outage " + std::to_string(target) + " not bracketed by curve '" + c.name + "'");
}

// Horizontal gap in dB at the target outage; positive when curve_a needs less power.
inline double gain_db(const curve &curve_a, const curve &curve_b, double target_op)
{
    return crossing_snr(curve_b, target_op) - crossing_snr(curve_a, target_op);
}

// ----- One-dimensional parameter search -------------------------------------

struct optimum_report {
    sweep_axis axis = sweep_axis::alpha;
    protocol_kind protocol = protocol_kind::no_eh;
    double argmin = std::numeric_limits<double>::quiet_NaN();
    double p_sys = std::numeric_limits<double>::quiet_NaN();
    bool degenerate = false;
    // Smallest coarse-grid value whose outage is within floor_tolerance
    // (relative) of the coarse minimum: where the curve flattens out.
    double floor_onset = std::numeric_limits<double>::quiet_NaN();
    double benchmark_p_sys = std::numeric_limits<double>::quiet_NaN();
    double margin = std::numeric_limits<double>::quiet_NaN(); // benchmark - p_sys
    std::vector<double> coarse_grid;
    std::vector<double> coarse_p_sys;  // NaN where the point failed
    std::vector<double> coarse_margin; // no_eh outage at the same point minus p_sys
};

namespace detail
{

inline std::pair<double, double> open_domain(sweep_axis axis)
{
    switch (axis) {
        case sweep_axis::rho:
        case sweep_axis::xi:
            return {0.0, 1.0};
        case sweep_axis::alpha:
            return {0.0, 0.5};
        default:
            throw invalid_config("parameter search supports the rho, xi and alpha axes only");
    }
}

inline double analytic_p_sys(const sweep_spec &spec, const eh_protocol &protocol, double value)
{
    const auto cfg = apply_axis(spec.base, protocol, spec.axis, value);
    try {
        return evaluate_analytic(cfg, spec.topo, spec.quad).p_system;
    } catch (const numerical_failure &) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

inline void check_search_spec(const sweep_spec &spec)
{
    spec.validate();
    (void)open_domain(spec.axis);
    if (spec.protocols.size() != 1) {
        throw invalid_config("parameter search needs exactly one protocol");
    }
    const auto kind = kind_of(spec.protocols.front());
    if (spec.axis == sweep_axis::rho && kind != protocol_kind::power_sharing) {
        throw invalid_config("rho search requires the ps protocol");
    }
    if (spec.axis == sweep_axis::xi && kind != protocol_kind::time_sharing) {
        throw invalid_config("xi search requires the ts protocol");
    }
}

} // namespace detail

inline double floor_onset(const std::vector<double> &grid, const std::vector<double> &values, double tolerance)
{
    double best = std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (!std::isnan(v)) {
            best = std::min(best, v);
        }
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = values[i];
        if (std::isnan(v)) {
            continue;
        }
        const double relative = v > 0.0 ? (v - best) / v : 0.0;
        if (relative < tolerance) {
            return grid[i];
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// Coarse scan of spec.grid, then refine_rounds passes that re-grid the bracket
// around the incumbent at a third of the previous spacing. Analytic engine only.
inline optimum_report optimize_parameter(const sweep_spec &spec, std::size_t refine_rounds,
                                         double floor_tolerance = 0.10)
{
    detail::check_search_spec(spec);
    const auto [domain_lo, domain_hi] = detail::open_domain(spec.axis);
    const auto &protocol = spec.protocols.front();

    optimum_report rep;
    rep.axis = spec.axis;
    rep.protocol = kind_of(protocol);
    rep.coarse_grid = spec.grid;

    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        const double v = detail::analytic_p_sys(spec, protocol, spec.grid[i]);
        const double bench = detail::analytic_p_sys(spec, no_eh{}, spec.grid[i]);
        rep.coarse_p_sys.push_back(v);
        rep.coarse_margin.push_back(bench - v);
        if (!std::isnan(v) && (!best || v < rep.coarse_p_sys[*best])) {
            best = i;
        }
    }
    if (!best) {
        throw numerical_failure("every grid point of the parameter search failed", 0.0);
    }

    rep.degenerate = std::all_of(rep.coarse_p_sys.begin(), rep.coarse_p_sys.end(),
                                 [](double v) { return std::isnan(v) || v >= 1.0; });
    rep.floor_onset = floor_onset(rep.coarse_grid, rep.coarse_p_sys, floor_tolerance);

    double x_best = spec.grid[*best];
    double p_best = rep.coarse_p_sys[*best];
    double step = 0.0;
    if (*best > 0) {
        step = std::max(step, x_best - spec.grid[*best - 1]);
    }
    if (*best + 1 < spec.grid.size()) {
        step = std::max(step, spec.grid[*best + 1] - x_best);
    }

    if (!rep.degenerate && step > 0.0) {
        for (std::size_t round = 0; round < refine_rounds; ++round) {
            const double centre = x_best;
            for (int k = -3; k <= 3; ++k) {
                if (k == 0) {
                    continue;
                }
                const double x = centre + k * step / 3.0;
                if (!(x > domain_lo && x < domain_hi)) {
                    continue;
                }
                const double v = detail::analytic_p_sys(spec, protocol, x);
                if (!std::isnan(v) && v < p_best) {
                    p_best = v;
                    x_best = x;
                }
            }
            step /= 3.0;
        }
    }

    rep.argmin = x_best;
    rep.p_sys = p_best;
    rep.benchmark_p_sys = detail::analytic_p_sys(spec, no_eh{}, x_best);
    rep.margin = rep.benchmark_p_sys - rep.p_sys;
    return rep;
}

struct factor_interval {
    double lo;
    double hi;
};

// Sub-ranges of the rho or xi axis on which the protocol's analytic outage is
// below the no_eh benchmark at the same settings. Sign changes between grid
// points are located by bisection; an interval touching the grid edge ends there.
inline std::vector<factor_interval> beneficial_range(const sweep_spec &spec, int bisection_steps = 60)
{
    detail::check_search_spec(spec);
    if (spec.axis != sweep_axis::rho && spec.axis != sweep_axis::xi) {
        throw invalid_config("beneficial_range applies to the rho and xi axes");
    }
    const auto &protocol = spec.protocols.front();
    const double benchmark = detail::analytic_p_sys(spec, no_eh{}, spec.grid.front());
    auto gap = [&](double x) { return detail::analytic_p_sys(spec, protocol, x) - benchmark; };
    auto refine = [&](double below, double above) {
        for (int i = 0; i < bisection_steps; ++i) {
            const double mid = 0.5 * (below + above);
            (gap(mid) < 0.0 ? below : above) = mid;
        }
        return 0.5 * (below + above);
    };

    std::vector<factor_interval> out;
    double open = spec.grid.front();
    double prev_x = spec.grid.front();
    bool prev_good = gap(prev_x) < 0.0;
    for (std::size_t i = 1; i < spec.grid.size(); ++i) {
        const double x = spec.grid[i];
        const bool good = gap(x) < 0.0;
        if (good && !prev_good) {
            open = refine(x, prev_x);
        } else if (!good && prev_good) {
            out.push_back({open, refine(prev_x, x)});
        }
        prev_x = x;
        prev_good = good;
    }
    if (prev_good) {
        out.push_back({open, spec.grid.back()});
    }
    return out;
}

// ----- Figure presets -------------------------------------------------------

struct figure_preset {
    std::string name;
    std::string title;
    outage_metric metric = outage_metric::system;
    std::vector<sweep_spec> families;
};

// start, start + step, ... up to and including stop, rounded to 1e-12.
inline std::vector<double> linear_grid(double start, double stop, double step)
{
    std::vector<double> g;
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) {
        g.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return g;
}

inline std::vector<double> default_snr_grid() { return linear_grid(0.0, 50.0, 2.5); }
inline std::vector<double> default_factor_grid() { return linear_grid(0.05, 0.95, 0.05); }
inline std::vector<double> default_alpha_grid() { return linear_grid(0.05, 0.45, 0.05); }
inline std::vector<double> default_rate_grid() { return linear_grid(100e3, 1000e3, 100e3); }

// Residual levels from -30 dB to 0 dB in 2.5 dB steps, as linear values.
inline std::vector<double> default_delta_grid()
{
    std::vector<double> g;
    for (double db : linear_grid(-30.0, 0.0, 2.5)) {
        g.push_back(db_to_linear(db));
    }
    g.back() = 1.0;
    return g;
}

// Reference scenario: 1 MHz, targets 500/100 kbit/s, eta 0.95, sigma^2 = 1.
inline system_config reference_config(double snr_db = 30.0, double alpha = 0.2)
{
    system_config cfg;
    cfg.noise_variance = 1.0;
    cfg.total_power = snr_db_to_total_power(snr_db, cfg.noise_variance);
    cfg.pa_alpha = alpha;
    cfg.eta = 0.95;
    cfg.csi_error = 0.0;
    cfg.sic_delta = 0.0;
    cfg.target_rate_1 = 500e3;
    cfg.target_rate_2 = 100e3;
    cfg.bandwidth = 1e6;
    return cfg;
}

inline fading_topology reference_topology() { return {10.0, 2.0, 10.0}; }

inline std::vector<eh_protocol> all_protocols(double rho, double xi)
{
    return {no_eh{}, power_sharing{rho}, time_sharing{xi}, ideal{}};
}

inline std::vector<std::string> figure_names()
{
    return {"fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b", "fig6a", "fig6b",
            "fig7a", "fig7b", "fig7c", "fig8a", "fig8b", "fig8c", "fig8d"};
}

namespace detail
{

inline std::string format_value(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline void add_csi_families(figure_preset &fig, double alpha, double delta)
{
    for (double kappa : {0.0, 0.01}) {
        sweep_spec s;
        s.label = "kappa=" + format_value(kappa);
        s.axis = sweep_axis::snr_db;
        s.grid = default_snr_grid();
        s.base = reference_config(30.0, alpha);
        s.base.csi_error = kappa;
        s.base.sic_delta = delta;
        s.topo = reference_topology();
        s.protocols = all_protocols(0.2, 0.2);
        fig.families.push_back(std::move(s));
    }
}

} // namespace detail

inline figure_preset make_figure_preset(std::string_view name)
{
    figure_preset fig;
    fig.name = std::string(name);

    if (name == "fig3a" || name == "fig3b" || name == "fig4a" || name == "fig4b") {
        const double alpha = name.back() == 'a' ? 0.1 : 0.2;
        const double delta = name[3] == '3' ? 0.0 : 0.001;
        fig.title = "x1 outage vs transmit SNR, alpha=" + detail::format_value(alpha)
                    + ", delta=" + detail::format_value(delta);
        fig.metric = outage_metric::x1;
        detail::add_csi_families(fig, alpha, delta);
    } else if (name == "fig5a" || name == "fig5b") {
        const double alpha = name.back() == 'a' ? 0.1 : 0.2;
        fig.title = "x2 outage vs transmit SNR, alpha=" + detail::format_value(alpha);
        fig.metric = outage_metric::x2;
        detail::add_csi_families(fig, alpha, 0.0);
    } else if (name == "fig6a" || name == "fig6b") {
        const double kappa = name.back() == 'a' ? 0.0 : 0.01;
        fig.title = "system outage vs SIC residual at 30 dB, kappa=" + detail::format_value(kappa);
        for (double alpha : {0.1, 0.2}) {
            sweep_spec s;
            s.label = "alpha=" + detail::format_value(alpha);
            s.axis = sweep_axis::delta;
            s.grid = default_delta_grid();
            s.base = reference_config(30.0, alpha);
            s.base.csi_error = kappa;
            s.topo = reference_topology();
            s.protocols = all_protocols(0.2, 0.2);
            fig.families.push_back(std::move(s));
        }
    } else if (name == "fig7a" || name == "fig7b" || name == "fig7c") {
        sweep_spec s;
        s.base = reference_config(30.0, 0.2);
        s.topo = reference_topology();
        if (name == "fig7a") {
            fig.title = "system outage vs power-sharing factor at 30 dB";
            s.label = "alpha=0.2";
            s.axis = sweep_axis::rho;
            s.grid = default_factor_grid();
            s.protocols = {power_sharing{0.2}, ideal{}, no_eh{}};
        } else if (name == "fig7b") {
            fig.title = "system outage vs time-sharing factor at 30 dB";
            s.label = "alpha=0.2";
            s.axis = sweep_axis::xi;
            s.grid = default_factor_grid();
            s.protocols = {time_sharing{0.2}, ideal{}, no_eh{}};
        } else {
            fig.title = "system outage vs power allocation at 30 dB, rho=0.25, xi=0.15";
            s.label = "rho=0.25,xi=0.15";
            s.axis = sweep_axis::alpha;
            s.grid = default_alpha_grid();
            s.protocols = all_protocols(0.25, 0.15);
        }
        fig.families.push_back(std::move(s));
    } else if (name == "fig8a" || name == "fig8b" || name == "fig8c" || name == "fig8d") {
        eh_protocol protocol = no_eh{};
        switch (name.back()) {
            case 'b':
                protocol = power_sharing{0.25};
                break;
            case 'c':
                protocol = time_sharing{0.15};
                break;
            case 'd':
                protocol = ideal{};
                break;
            default:
                break;
        }
        fig.title = "system outage vs target rates at 30 dB, " + std::string(protocol_name(protocol));
        for (double rate2 : default_rate_grid()) {
            sweep_spec s;
            s.label = "rate2=" + detail::format_value(rate2);
            s.axis = sweep_axis::rate1;
            s.grid = default_rate_grid();
            s.base = reference_config(30.0, 0.35);
            s.base.target_rate_2 = rate2;
            s.topo = reference_topology();
            s.protocols = {protocol};
            fig.families.push_back(std::move(s));
        }
    } else {
        std::string valid;
        for (const auto &n : figure_names()) {
            valid += (valid.empty() ? "" : ", ") + n;
        }
        throw invalid_config("unknown figure '" + std::string(name) + "'; valid names: " + valid);
    }
    return fig;
}

} // namespace swiptnoma

#endif
