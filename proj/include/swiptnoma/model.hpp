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

#ifndef SWIPTNOMA_MODEL_HPP
#define SWIPTNOMA_MODEL_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "errors.hpp"

namespace swiptnoma
{

// ----- Energy-harvesting protocols ------------------------------------------

// Relay has its own supply; source and relay split the block energy.
struct no_eh {
};

// Source power split: fraction rho feeds the harvester, 1 - rho carries data.
struct power_sharing {
    double rho;
};

// Time split: the first xi*T seconds are spent on power transfer only.
struct time_sharing {
    double xi;
};

// Same signal carries energy and data with no split.
struct ideal {
};

using eh_protocol = std::variant<no_eh, power_sharing, time_sharing, ideal>;

enum class protocol_kind { no_eh, power_sharing, time_sharing, ideal };

inline protocol_kind kind_of(const eh_protocol &p) noexcept
{
    return static_cast<protocol_kind>(p.index());
}

inline bool harvests(const eh_protocol &p) noexcept
{
    return kind_of(p) != protocol_kind::no_eh;
}

// Short names used by scenario files and CSV output.
inline std::string_view protocol_name(protocol_kind k) noexcept
{
    switch (k) {
        case protocol_kind::no_eh:
            return "no_eh";
        case protocol_kind::power_sharing:
            return "ps";
        case protocol_kind::time_sharing:
            return "ts";
        case protocol_kind::ideal:
            return "ideal";
    }
    return "?";
}

inline std::string_view protocol_name(const eh_protocol &p) noexcept { return protocol_name(kind_of(p)); }

// ----- Units ----------------------------------------------------------------

inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) noexcept { return 10.0 * std::log10(x); }

// ----- Scenario -------------------------------------------------------------

enum class symbol { x1, x2 };

// Everything except the large-scale channel gains. Powers in watts, rates in
// bit/s, bandwidth in Hz. The "transmit SNR" axis of the figures is
// total_power / noise_variance.
struct system_config {
    eh_protocol protocol = no_eh{};
    double total_power = 1000.0;
    double noise_variance = 1.0;
    double pa_alpha = 0.2;
    double eta = 0.95;
    double csi_error = 0.0;  // kappa, variance of the channel-estimation error
    double sic_delta = 0.0;  // 0 = perfect SIC, 1 = no SIC
    double target_rate_1 = 500e3;
    double target_rate_2 = 100e3;
    double bandwidth = 1e6;
    std::optional<double> block_time; // defaults to 1 / bandwidth

    double block_duration() const noexcept { return block_time ? *block_time : 1.0 / bandwidth; }

    void validate() const
    {
        auto require = [](bool ok, const char *msg) {
            if (!ok) {
                throw invalid_config(msg);
            }
        };
        require(std::isfinite(total_power) && total_power > 0.0, "total_power must be positive");
        require(std::isfinite(noise_variance) && noise_variance > 0.0, "noise_variance must be positive");
        require(pa_alpha > 0.0 && pa_alpha <= 0.5, "pa_alpha must lie in (0, 0.5]");
        require(eta > 0.0 && eta < 1.0, "eta must lie in (0, 1)");
        require(std::isfinite(csi_error) && csi_error >= 0.0, "csi_error must be non-negative");
        require(sic_delta >= 0.0 && sic_delta <= 1.0, "sic_delta must lie in [0, 1]");
        require(std::isfinite(target_rate_1) && target_rate_1 >= 0.0, "target_rate_1 must be non-negative");
        require(std::isfinite(target_rate_2) && target_rate_2 >= 0.0, "target_rate_2 must be non-negative");
        require(std::isfinite(bandwidth) && bandwidth > 0.0, "bandwidth must be positive");
        require(!block_time || (std::isfinite(*block_time) && *block_time > 0.0), "block_time must be positive");
        std::visit(
            [&](const auto &p) {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, power_sharing>) {
                    require(p.rho > 0.0 && p.rho < 1.0, "rho must lie in (0, 1)");
                } else if constexpr (std::is_same_v<P, time_sharing>) {
                    require(p.xi > 0.0 && p.xi < 1.0, "xi must lie in (0, 1)");
                }
            },
            protocol);
    }
};

inline double snr_db_to_total_power(double snr_db, double noise_variance = 1.0) noexcept
{
    return db_to_linear(snr_db) * noise_variance;
}

// Estimated-channel means, Omega_k - kappa.
struct estimated_gains {
    double sr;
    double sd;
    double rd;
};

struct fading_topology {
    double omega_sr = 10.0;
    double omega_sd = 2.0;
    double omega_rd = 10.0;

    // Throws unless every link satisfies Omega_k > kappa.
    estimated_gains estimated(double csi_error) const
    {
        if (!(omega_sr > csi_error && omega_sd > csi_error && omega_rd > csi_error)) {
            throw invalid_config("every omega must exceed csi_error (estimated-gain mean must be positive)");
        }
        return {omega_sr - csi_error, omega_sd - csi_error, omega_rd - csi_error};
    }
};

// ----- Derived quantities ---------------------------------------------------

inline double derive_source_power(const system_config &cfg)
{
    return std::visit(
        [&](const auto &p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, no_eh>) {
                return cfg.total_power;
            } else if constexpr (std::is_same_v<P, time_sharing>) {
                return 2.0 * cfg.total_power / (1.0 + p.xi);
            } else {
                return 2.0 * cfg.total_power;
            }
        },
        cfg.protocol);
}

// Share of the source power carrying information.
inline double derive_info_fraction(const system_config &cfg) noexcept
{
    if (const auto *ps = std::get_if<power_sharing>(&cfg.protocol)) {
        return 1.0 - ps->rho;
    }
    return 1.0;
}

// Fraction of the block each information phase occupies.
inline double derive_time_fraction(const system_config &cfg) noexcept
{
    if (const auto *ts = std::get_if<time_sharing>(&cfg.protocol)) {
        return (1.0 - ts->xi) / 2.0;
    }
    return 0.5;
}

// Relay transmit power divided by P_s * |h_sr|^2.
inline double derive_upsilon(const system_config &cfg)
{
    return std::visit(
        [&](const auto &p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, no_eh>) {
                throw invalid_config("no harvesting transformation exists; relay power is P_T");
            } else if constexpr (std::is_same_v<P, power_sharing>) {
                return cfg.eta * p.rho;
            } else if constexpr (std::is_same_v<P, time_sharing>) {
                return 2.0 * cfg.eta * p.xi / (1.0 - p.xi);
            } else {
                return cfg.eta;
            }
        },
        cfg.protocol);
}

// SINR threshold 2^(R / (zeta B)) - 1 of the given symbol.
inline double derive_threshold(const system_config &cfg, symbol s) noexcept
{
    const double rate = s == symbol::x1 ? cfg.target_rate_1 : cfg.target_rate_2;
    const double exponent = rate / (derive_time_fraction(cfg) * cfg.bandwidth);
    return std::expm1(exponent * std::numbers::ln2);
}

// Energy the transmitters spend over one block of length T. Equal to
// total_power * T for every protocol when the power rules are right.
inline double energy_audit(const system_config &cfg)
{
    const double t = cfg.block_duration();
    const double ps = derive_source_power(cfg);
    return std::visit(
        [&](const auto &p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, no_eh>) {
                const double relay_power = cfg.total_power;
                return ps * t / 2.0 + relay_power * t / 2.0;
            } else if constexpr (std::is_same_v<P, time_sharing>) {
                return ps * p.xi * t + ps * (1.0 - p.xi) * t / 2.0;
            } else {
                return ps * t / 2.0;
            }
        },
        cfg.protocol);
}

// All per-scenario constants consumed by the outage engines.
struct derived_coefficients {
    double source_power;
    double info_fraction;
    double time_fraction;
    std::optional<double> upsilon;     // absent for no_eh
    std::optional<double> relay_power; // present only for no_eh
    double phi1;
    double phi2;
    std::optional<double> a1; // absent when (1 + phi2) alpha >= 1
    double a2;
    std::optional<double> a3; // no_eh only
    estimated_gains omega_hat;

    bool x2_feasible() const noexcept { return a1.has_value(); }
};

inline derived_coefficients derive_coefficients(const system_config &cfg, const fading_topology &topo)
{
    cfg.validate();
    derived_coefficients d{};
    d.omega_hat = topo.estimated(cfg.csi_error);
    d.source_power = derive_source_power(cfg);
    d.info_fraction = derive_info_fraction(cfg);
    d.time_fraction = derive_time_fraction(cfg);
    d.phi1 = derive_threshold(cfg, symbol::x1);
    d.phi2 = derive_threshold(cfg, symbol::x2);

    const double alpha = cfg.pa_alpha;
    const double kappa = cfg.csi_error;
    const double noise = cfg.noise_variance;
    const double info_power = d.info_fraction * d.source_power;

    const double x2_margin = 1.0 - (1.0 + d.phi2) * alpha;
    if (x2_margin > 0.0) {
        d.a1 = d.phi2 * (info_power * kappa + noise) / (x2_margin * info_power);
    }
    d.a2 = d.phi1 * ((1.0 - alpha) * info_power * cfg.sic_delta * d.omega_hat.sr + info_power * kappa + noise)
           / (alpha * info_power);

    if (harvests(cfg.protocol)) {
        d.upsilon = derive_upsilon(cfg);
    } else {
        d.relay_power = cfg.total_power;
        d.a3 = d.phi1 * (cfg.total_power * kappa + noise) / cfg.total_power;
    }
    return d;
}

} // namespace swiptnoma

#endif
