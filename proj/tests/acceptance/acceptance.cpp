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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "swiptnoma/swiptnoma.hpp"

using namespace swiptnoma;

namespace
{

// Pinned tolerances.
constexpr double mc_sigma_band = 3.0;
constexpr std::uint64_t mc_trials = 1'000'000;
constexpr double approx_rel_tolerance = 0.10;
constexpr double approx_min_outage = 1e-4;
constexpr double bessel_abs_tolerance = 1e-9;
constexpr double tolerance_halving_shift = 1e-8;
constexpr double gain_target = 1e-3;
constexpr double x2_gain_lo = 2.5;
constexpr double x2_gain_hi = 5.5;
constexpr double x1_gain_lo = 2.0;
constexpr double x1_gain_hi = 4.5;
constexpr double factor_tolerance = 0.05 + 1e-9;
constexpr double rho_star_expected = 0.25;
constexpr double ts_range_lo_expected = 0.05;
constexpr double ts_range_hi_expected = 0.25;
constexpr double alpha_star_expected = 0.35;
constexpr double alpha_floor_rel_change = 0.10;
constexpr double saturation_floor = 0.98;
constexpr double starved_relay_outage = 1.0 - 1e-6;

struct verdict {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

system_config point(eh_protocol p, double snr_db, double alpha = 0.2)
{
    auto cfg = reference_config(snr_db, alpha);
    cfg.protocol = p;
    return cfg;
}

simulation_plan plan_of(std::uint64_t trials, std::uint64_t seed)
{
    simulation_plan plan;
    plan.trials = trials;
    plan.seed = seed;
    plan.residual_mode = sic_residual_mode::mean_power;
    return plan;
}

std::vector<eh_protocol> reference_protocols() { return all_protocols(0.2, 0.2); }

std::vector<eh_protocol> harvesting_protocols() { return {power_sharing{0.2}, time_sharing{0.2}, ideal{}}; }

verdict exact_formulas()
{
    const auto topo = reference_topology();
    double worst = 0.0;
    int checks = 0;
    std::string where;
    std::uint64_t seed = 100;
    for (double kappa : {0.0, 0.01}) {
        for (double snr : {10.0, 20.0, 30.0}) {
            for (const auto &p : reference_protocols()) {
                auto cfg = point(p, snr);
                cfg.csi_error = kappa;
                const auto r = estimate_outage(cfg, topo, plan_of(mc_trials, ++seed));
                auto check = [&](double mc, double se, double exact, const char *what) {
                    const double z = std::abs(mc - exact) / se;
                    ++checks;
                    if (z > worst) {
                        worst = z;
                        where = std::string(protocol_name(p)) + " " + what + " snr=" + fmt("%g", snr)
                                + " kappa=" + fmt("%g", kappa);
                    }
                };
                check(r.p2_hat, r.se_p2, outage_x2(cfg, topo), "p2");
                if (kind_of(p) == protocol_kind::no_eh) {
                    check(r.p1_hat, r.se_p1, outage_x1_benchmark(cfg, topo), "p1");
                }
            }
        }
    }
    return {worst <= mc_sigma_band,
            std::to_string(checks) + " checks, worst |mc-exact|/se = " + fmt("%.2f", worst) + " (" + where + ")"};
}

verdict approximation_tightness()
{
    const auto topo = reference_topology();
    verdict v;
    std::uint64_t seed = 200;
    for (const auto &p : harvesting_protocols()) {
        double worst = 0.0;
        double worst_snr = 0.0;
        double worst_vs_exact = 0.0; // closed form against the exact correlated integral
        for (double snr : linear_grid(0.0, 40.0, 2.5)) {
            const auto cfg = point(p, snr);
            const auto r = estimate_outage(cfg, topo, plan_of(mc_trials, ++seed));
            if (r.p1_hat < approx_min_outage) {
                continue;
            }
            const double analytic = outage_x1_swipt(cfg, topo);
            const double rel = std::abs(analytic - r.p1_hat) / r.p1_hat;
            if (rel > worst) {
                worst = rel;
                worst_snr = snr;
            }
            const auto d = derive_coefficients(cfg, topo);
            const double exact = oracle::exact_x1_outage(d.a2, d.omega_hat.sr, d.omega_hat.rd, d.phi1, cfg.csi_error,
                                                         cfg.noise_variance, *d.upsilon * d.source_power);
            worst_vs_exact = std::max(worst_vs_exact, std::abs(analytic - exact) / exact);
        }
        v.pass = v.pass && worst <= approx_rel_tolerance;
        v.detail += std::string(v.detail.empty() ? "" : ", ") + std::string(protocol_name(p)) + " max rel err "
                    + fmt("%.3f", worst) + " at " + fmt("%g", worst_snr) + " dB (vs exact integral "
                    + fmt("%.3f", worst_vs_exact) + ")";
    }
    return v;
}

verdict quadrature_oracle()
{
    const auto topo = reference_topology();
    double worst = 0.0;
    double worst_shift = 0.0;
    quadrature_settings tight;
    tight.relative_tolerance /= 2.0;
    tight.absolute_tolerance /= 2.0;
    for (int i = 0; i < 10; ++i) {
        const double phi1 = 0.05 * std::pow(10.0, 0.3 * i);
        for (int j = 0; j < 10; ++j) {
            const auto cfg = point(ideal{}, -5.0 + 5.5 * j);
            const auto gains = topo.estimated(cfg.csi_error);
            const double c = phi1 * cfg.noise_variance / (derive_upsilon(cfg) * derive_source_power(cfg) * gains.sr);
            const double got = joint_cdf_second_hop(cfg, topo, phi1);
            worst = std::max(worst, std::abs(got - oracle::bessel_joint_cdf(c, gains.rd)));
            worst_shift = std::max(worst_shift, std::abs(got - joint_cdf_second_hop(cfg, topo, phi1, tight)));
        }
    }
    return {worst <= bessel_abs_tolerance && worst_shift < tolerance_halving_shift,
            "100 points, max |quad-bessel| = " + fmt("%.2e", worst) + ", tolerance-halving shift "
                + fmt("%.2e", worst_shift)};
}

verdict energy_gains()
{
    sweep_spec s;
    s.label = "gains";
    s.grid = linear_grid(0.0, 50.0, 0.25);
    s.base = reference_config();
    s.topo = reference_topology();
    s.protocols = {no_eh{}, power_sharing{0.2}, ideal{}};
    const auto r = run_sweep(s);
    auto gain = [&](protocol_kind k, outage_metric m) {
        return gain_db(extract_curve(r, k, engine_kind::analytic, m),
                       extract_curve(r, protocol_kind::no_eh, engine_kind::analytic, m), gain_target);
    };
    const double ps_x2 = gain(protocol_kind::power_sharing, outage_metric::x2);
    const double id_x2 = gain(protocol_kind::ideal, outage_metric::x2);
    const double ps_x1 = gain(protocol_kind::power_sharing, outage_metric::x1);
    const double id_x1 = gain(protocol_kind::ideal, outage_metric::x1);
    auto in = [](double g, double lo, double hi) { return g >= lo && g <= hi; };
    const bool x2_ok = in(ps_x2, x2_gain_lo, x2_gain_hi) || in(id_x2, x2_gain_lo, x2_gain_hi);
    const bool x1_ok = in(ps_x1, x1_gain_lo, x1_gain_hi) || in(id_x1, x1_gain_lo, x1_gain_hi);
    return {x2_ok && x1_ok, "x2 gain ps " + fmt("%.2f", ps_x2) + " dB, ideal " + fmt("%.2f", id_x2) + " dB; x1 gain ps "
                                + fmt("%.2f", ps_x1) + " dB, ideal " + fmt("%.2f", id_x1) + " dB"};
}

verdict optimal_factors()
{
    verdict v;
    auto rho_spec = make_figure_preset("fig7a").families.front();
    rho_spec.protocols = {power_sharing{0.5}};
    const auto rho = optimize_parameter(rho_spec, 4);
    const bool rho_ok = std::abs(rho.argmin - rho_star_expected) <= factor_tolerance;

    auto xi_spec = make_figure_preset("fig7b").families.front();
    xi_spec.protocols = {time_sharing{0.5}};
    const auto ranges = beneficial_range(xi_spec);
    const bool range_ok = ranges.size() == 1 && std::abs(ranges[0].lo - ts_range_lo_expected) <= factor_tolerance
                          && std::abs(ranges[0].hi - ts_range_hi_expected) <= factor_tolerance;

    const auto alpha_family = make_figure_preset("fig7c").families.front();
    bool alpha_ok = true;
    std::string alpha_detail;
    for (const auto &p : alpha_family.protocols) {
        auto spec = alpha_family;
        spec.protocols = {p};
        const auto rep = optimize_parameter(spec, 3);
        const auto at = [&](double a) { return evaluate_analytic(apply_axis(spec.base, p, spec.axis, a), spec.topo).p_system; };
        const double change = std::abs(at(0.45) - at(0.35)) / at(0.35);
        alpha_ok = alpha_ok && std::abs(rep.floor_onset - alpha_star_expected) <= factor_tolerance
                   && change < alpha_floor_rel_change;
        alpha_detail += std::string(alpha_detail.empty() ? "" : ", ") + std::string(protocol_name(p)) + " "
                        + fmt("%.2f", rep.floor_onset) + " (change " + fmt("%.3f", change) + ")";
    }

    v.pass = rho_ok && range_ok && alpha_ok;
    v.detail = "rho* " + fmt("%.4f", rho.argmin) + "; ts range ";
    for (const auto &r : ranges) {
        v.detail += "[" + fmt("%.4f", r.lo) + ", " + fmt("%.4f", r.hi) + "]";
    }
    if (ranges.empty()) {
        v.detail += "empty";
    }
    v.detail += "; alpha floor onset " + alpha_detail;
    return v;
}

verdict ordering()
{
    const auto spec = make_figure_preset("fig7c").families.front();
    const auto r = run_sweep(spec);
    auto y = [&](protocol_kind k) { return extract_curve(r, k, engine_kind::analytic, outage_metric::system).y; };
    const auto no = y(protocol_kind::no_eh);
    const auto ps = y(protocol_kind::power_sharing);
    const auto ts = y(protocol_kind::time_sharing);
    const auto id = y(protocol_kind::ideal);
    verdict v;
    std::vector<std::string> broken;
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        const std::string at = "alpha=" + fmt("%.2f", spec.grid[i]);
        if (!(id[i] <= ps[i])) {
            broken.push_back(at + " ideal>ps");
        }
        if (!(ps[i] <= ts[i])) {
            broken.push_back(at + " ps>ts");
        }
        for (const auto &[name, p] : {std::pair{"ps", ps[i]}, std::pair{"ts", ts[i]}, std::pair{"ideal", id[i]}}) {
            if (!(p <= no[i])) {
                broken.push_back(at + " " + name + " " + fmt("%.4e", p) + ">no_eh " + fmt("%.4e", no[i]));
            }
        }
    }
    v.pass = broken.empty();
    v.detail = std::to_string(spec.grid.size()) + " alpha points";
    for (const auto &b : broken) {
        v.detail += "; " + b;
    }
    return v;
}

verdict properties()
{
    std::vector<std::string> broken;

    // Bounds under fuzzing, analytic and simulated.
    std::mt19937_64 gen(7);
    auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
    for (int trial = 0; trial < 200; ++trial) {
        system_config cfg;
        const int k = trial % 4;
        cfg.protocol = k == 0 ? eh_protocol{no_eh{}}
                       : k == 1 ? eh_protocol{power_sharing{uni(0.001, 0.999)}}
                       : k == 2 ? eh_protocol{time_sharing{uni(0.001, 0.999)}}
                                : eh_protocol{ideal{}};
        cfg.total_power = db_to_linear(uni(-20.0, 70.0));
        cfg.pa_alpha = uni(0.001, 0.5);
        cfg.eta = uni(0.01, 0.99);
        cfg.csi_error = uni(0.0, 0.5);
        cfg.sic_delta = uni(0.0, 1.0);
        cfg.target_rate_1 = uni(0.0, 2e6);
        cfg.target_rate_2 = uni(0.0, 2e6);
        const fading_topology topo{uni(0.6, 50.0), uni(0.6, 50.0), uni(0.6, 50.0)};
        const auto a = evaluate_analytic(cfg, topo);
        const auto m = estimate_outage(cfg, topo, plan_of(2000, 1000 + trial));
        for (double p : {a.p1, a.p2, a.p_system, m.p1_hat, m.p2_hat, m.psys_hat}) {
            if (!(p >= 0.0 && p <= 1.0)) {
                broken.push_back("bounds at fuzz case " + std::to_string(trial));
                break;
            }
        }
    }

    // Monotone in total power.
    for (double kappa : {0.0, 0.01}) {
        auto s = make_figure_preset("fig3a").families.front();
        s.base.csi_error = kappa;
        s.base.sic_delta = 0.001;
        s.grid = linear_grid(-10.0, 60.0, 1.0);
        const auto r = run_sweep(s);
        for (const auto &p : s.protocols) {
            for (auto m : {outage_metric::x1, outage_metric::x2, outage_metric::system}) {
                const auto c = extract_curve(r, kind_of(p), engine_kind::analytic, m);
                for (std::size_t i = 1; i < c.y.size(); ++i) {
                    if (c.y[i] > c.y[i - 1] * (1.0 + 1e-9)) {
                        broken.push_back("power monotonicity " + c.name + " at " + fmt("%g", c.x[i]) + " dB");
                        break;
                    }
                }
            }
        }
    }

    // Monotone in both target rates.
    for (const char *name : {"fig8a", "fig8b", "fig8c", "fig8d"}) {
        for (auto axis : {sweep_axis::rate1, sweep_axis::rate2}) {
            auto s = make_figure_preset(name).families.front();
            s.axis = axis;
            const auto c = extract_curve(run_sweep(s), kind_of(s.protocols.front()), engine_kind::analytic,
                                         outage_metric::system);
            for (std::size_t i = 1; i < c.y.size(); ++i) {
                if (c.y[i] < c.y[i - 1]) {
                    broken.push_back(std::string("rate monotonicity ") + name + " " + std::string(axis_name(axis)));
                    break;
                }
            }
        }
    }

    // Saturation as the SIC residual grows.
    double lowest_saturation = 1.0;
    for (const char *name : {"fig6a", "fig6b"}) {
        for (const auto &fam : make_figure_preset(name).families) {
            const auto r = run_sweep(fam);
            for (const auto &p : fam.protocols) {
                const auto c = extract_curve(r, kind_of(p), engine_kind::analytic, outage_metric::system);
                lowest_saturation = std::min(lowest_saturation, c.y.back());
                for (std::size_t i = 1; i < c.y.size(); ++i) {
                    if (c.y[i] < c.y[i - 1] * (1.0 - 1e-12)) {
                        broken.push_back(std::string("residual monotonicity ") + name + " " + c.name);
                        break;
                    }
                }
            }
        }
    }
    if (lowest_saturation < saturation_floor) {
        broken.push_back("saturation " + fmt("%.4f", lowest_saturation));
    }

    // Byte-identical simulation output for a fixed seed, whatever the thread count.
    auto report_bytes = [](std::size_t threads) {
        auto cfg = point(power_sharing{0.2}, 15.0);
        cfg.csi_error = 0.01;
        cfg.sic_delta = 0.001;
        auto plan = plan_of(500'000, 77);
        plan.threads = threads;
        std::ostringstream out;
        const std::vector<csv_row> rows{to_csv_row(cfg, estimate_outage(cfg, reference_topology(), plan))};
        write_csv(out, rows);
        return out.str();
    };
    const auto first = report_bytes(1);
    if (first != report_bytes(1) || first != report_bytes(4)) {
        broken.push_back("seed determinism");
    }

    verdict v;
    v.pass = broken.empty();
    v.detail = "fuzz, power, rate, residual and seed checks; lowest saturation " + fmt("%.4f", lowest_saturation);
    for (const auto &b : broken) {
        v.detail += "; " + b;
    }
    return v;
}

verdict degenerate_cases()
{
    const auto topo = reference_topology();
    std::vector<std::string> broken;

    for (const auto &p : reference_protocols()) {
        auto cfg = point(p, 30.0, 0.5);
        cfg.target_rate_2 = 500e3;
        if (evaluate_analytic(cfg, topo).p2 != 1.0 || estimate_outage(cfg, topo, plan_of(10000, 3)).p2_hat != 1.0) {
            broken.push_back(std::string("infeasible allocation ") + std::string(protocol_name(p)));
        }
    }

    double prev = 0.0;
    for (double rho : {1e-1, 1e-3, 1e-5, 1e-7, 1e-9}) {
        const double p1 = outage_x1_swipt(point(power_sharing{rho}, 30.0), topo);
        if (p1 < prev) {
            broken.push_back("starved relay not monotone");
        }
        prev = p1;
    }
    if (prev < starved_relay_outage) {
        broken.push_back("starved relay P1 " + fmt("%.6f", prev));
    }

    for (const auto &p : reference_protocols()) {
        auto cfg = point(p, 10.0);
        cfg.target_rate_1 = 0.0;
        cfg.target_rate_2 = 0.0;
        cfg.sic_delta = 0.01;
        cfg.csi_error = 0.01;
        const auto a = evaluate_analytic(cfg, topo);
        const auto m = estimate_outage(cfg, topo, plan_of(10000, 4));
        if (a.p1 != 0.0 || a.p2 != 0.0 || a.p_system != 0.0 || m.psys_hat != 0.0) {
            broken.push_back(std::string("zero rates ") + std::string(protocol_name(p)));
        }
    }

    verdict v;
    v.pass = broken.empty();
    v.detail = "P1 at rho=1e-9 is " + fmt("%.9f", prev);
    for (const auto &b : broken) {
        v.detail += "; " + b;
    }
    return v;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<verdict()>>> criteria{
        {"exact-formulas", exact_formulas},       {"approximation-tightness", approximation_tightness},
        {"quadrature-oracle", quadrature_oracle}, {"energy-gains", energy_gains},
        {"optimal-factors", optimal_factors},     {"ordering", ordering},
        {"properties", properties},               {"degenerate-cases", degenerate_cases}};

    int failed = 0;
    for (const auto &[name, check] : criteria) {
        verdict v;
        try {
            v = check();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
