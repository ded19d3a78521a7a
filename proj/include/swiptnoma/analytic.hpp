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

#ifndef SWIPTNOMA_ANALYTIC_HPP
#define SWIPTNOMA_ANALYTIC_HPP

#include <algorithm>
#include <array>
#include <cmath>

#include "errors.hpp"
#include "model.hpp"
#include "quadrature.hpp"

namespace swiptnoma
{

struct analytic_outage {
    double p1 = 0.0;
    double p2 = 0.0;
    double p_system = 0.0;
    bool p1_is_approximate = false; // independence approximation for harvesting relays
    bool x2_infeasible = false;     // (1 + phi2) alpha >= 1
};

namespace detail
{

inline double clamp_probability(double p) noexcept { return std::clamp(p, 0.0, 1.0); }

// P(X < x) for X exponential with the given mean, without cancellation near 0.
inline double exponential_cdf(double x, double mean) noexcept { return -std::expm1(-x / mean); }

inline double union_of_independent(double a, double b) noexcept
{
    if (a >= 1.0 || b >= 1.0) {
        return 1.0;
    }
    return clamp_probability(a + b - a * b);
}

} // namespace detail

// P(min(SINR_x2 at relay, SINR_x2 at destination) < phi2). Exact.
inline double outage_x2(const system_config &cfg, const fading_topology &topo)
{
    const auto d = derive_coefficients(cfg, topo);
    if (!d.a1) {
        return 1.0;
    }
    const double exponent = *d.a1 * (1.0 / d.omega_hat.sr + 1.0 / d.omega_hat.sd);
    return detail::clamp_probability(-std::expm1(-exponent));
}

// CDF at phi1 of the second-hop SINR of a harvesting relay,
//   Y P_s g_sr g_rd / (Y P_s g_sr kappa + sigma^2),
// averaged over both estimated gains.
//
// The SINR cannot exceed g_rd / kappa, so g_rd <= phi1 kappa is always an
// outage. Above that point the gain g_sr must exceed
// phi1 sigma^2 / ((g_rd - phi1 kappa) Y P_s), and with u = g_rd - phi1 kappa,
//
//   F = 1 - e^{-a} J,  a = phi1 kappa / W_rd,
//   J = int_0^inf (1/W_rd) exp(-u / W_rd - c / u) du,  c = phi1 sigma^2 / (Y P_s W_sr).
//
// We integrate 1 - J directly, (1/W_rd) e^{-u/W_rd} (1 - e^{-c/u}), so that tiny
// outage probabilities keep their relative accuracy. The half-line is mapped
// onto (0, 1) by t = u / (1 + u).
inline double joint_cdf_second_hop(const system_config &cfg, const fading_topology &topo, double phi1,
                                   const quadrature_settings &quad = {})
{
    cfg.validate();
    quad.validate();
    if (!harvests(cfg.protocol)) {
        throw invalid_config("joint second-hop CDF requires a harvesting protocol");
    }
    if (!(phi1 >= 0.0) || !std::isfinite(phi1)) {
        throw invalid_config("phi1 must be a finite non-negative threshold");
    }
    if (phi1 == 0.0) {
        return 0.0;
    }
    const auto gains = topo.estimated(cfg.csi_error);
    const double upsilon = derive_upsilon(cfg);
    const double source_power = derive_source_power(cfg);
    const double mean_rd = gains.rd;
    const double c = phi1 * cfg.noise_variance / (upsilon * source_power * gains.sr);
    const double a = phi1 * cfg.csi_error / mean_rd;

    auto integrand = [&](double t) {
        const double one_minus_t = 1.0 - t;
        const double u = t / one_minus_t;
        if (!(u < mean_rd * 1e3)) {
            return 0.0; // e^{-1000} below double range
        }
        const double jacobian = 1.0 / (one_minus_t * one_minus_t);
        const double density = std::exp(-u / mean_rd) / mean_rd;
        return density * (-std::expm1(-c / u)) * jacobian;
    };

    auto to_unit = [](double u) { return u / (1.0 + u); };
    const std::array<double, 4> breaks{to_unit(c), to_unit(std::sqrt(c * mean_rd)), to_unit(mean_rd),
                                       to_unit(10.0 * mean_rd)};

    const auto r = integrate_adaptive(integrand, 0.0, 1.0, quad, breaks);
    if (!r.converged) {
        throw numerical_failure("second-hop CDF quadrature did not converge", r.error_estimate);
    }
    const double below_cap = -std::expm1(-a);
    return detail::clamp_probability(below_cap + std::exp(-a) * r.value);
}

// Outage of x1 for a harvesting relay: first-hop SIC and second-hop events
// treated as independent, so the result is an approximation.
inline double outage_x1_swipt(const system_config &cfg, const fading_topology &topo,
                              const quadrature_settings &quad = {})
{
    if (!harvests(cfg.protocol)) {
        throw invalid_config("outage_x1_swipt requires a harvesting protocol");
    }
    const auto d = derive_coefficients(cfg, topo);
    const double first_hop = detail::exponential_cdf(d.a2, d.omega_hat.sr);
    const double second_hop = joint_cdf_second_hop(cfg, topo, d.phi1, quad);
    return detail::union_of_independent(first_hop, second_hop);
}

// Outage of x1 without harvesting. Exact: both hops are independent.
inline double outage_x1_benchmark(const system_config &cfg, const fading_topology &topo)
{
    if (harvests(cfg.protocol)) {
        throw invalid_config("outage_x1_benchmark requires the no_eh protocol");
    }
    const auto d = derive_coefficients(cfg, topo);
    const double first_hop = detail::exponential_cdf(d.a2, d.omega_hat.sr);
    const double second_hop = detail::exponential_cdf(*d.a3, d.omega_hat.rd);
    return detail::union_of_independent(first_hop, second_hop);
}

// Union of the two symbol outages.
inline double outage_system(double p1, double p2)
{
    if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
        throw invalid_config("outage_system arguments must be probabilities in [0, 1]");
    }
    return detail::union_of_independent(p1, p2);
}

inline analytic_outage evaluate_analytic(const system_config &cfg, const fading_topology &topo,
                                         const quadrature_settings &quad = {})
{
    analytic_outage out;
    const auto d = derive_coefficients(cfg, topo);
    out.x2_infeasible = !d.x2_feasible();
    out.p2 = outage_x2(cfg, topo);
    if (harvests(cfg.protocol)) {
        out.p1 = outage_x1_swipt(cfg, topo, quad);
        out.p1_is_approximate = true;
    } else {
        out.p1 = outage_x1_benchmark(cfg, topo);
    }
    out.p_system = outage_system(out.p1, out.p2);
    return out;
}

} // namespace swiptnoma

#endif
