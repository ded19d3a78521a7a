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

#ifndef SWIPTNOMA_SCENARIO_HPP
#define SWIPTNOMA_SCENARIO_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "model.hpp"

namespace swiptnoma
{

// Scenario files are flat "key = value" text, one pair per line; '#' starts a
// comment. Keys:
//
//   protocol        no_eh | ps | ts | ideal              (required)
//   rho             power-sharing factor                 (required for ps)
//   xi              time-sharing factor                  (required for ts)
//   total_power     P_T; watts, or "<x> dB"              (required)
//   noise_variance  sigma^2; watts or dB                 (default 1)
//   pa_alpha        power allocation of x1, in (0, 0.5)  (required)
//   eta             conversion efficiency                (default 0.95)
//   csi_error       kappa; linear or dB                  (default 0)
//   sic_delta       delta; linear or dB                  (default 0)
//   target_rate_1   bit/s, or with bps/kbps/Mbps         (required)
//   target_rate_2   bit/s, or with bps/kbps/Mbps         (required)
//   bandwidth       Hz, or with kHz/MHz/GHz              (required)
//   block_time      seconds, or with ms/us               (default 1/bandwidth)
//   omega_sr, omega_sd, omega_rd  mean link gains        (required)
//
// A value without a suffix is taken in the base unit.

class scenario_error : public invalid_config
{
public:
    scenario_error(std::string key, const std::string &what) : invalid_config(what), key_(std::move(key)) {}

    const std::string &key() const noexcept { return key_; }

private:
    std::string key_;
};

struct scenario {
    system_config config;
    fading_topology topology;
};

namespace detail
{

inline std::string trim(std::string_view s)
{
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return std::string(s.substr(b, e - b));
}

inline std::string lower(std::string s)
{
    for (auto &ch : s) {
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    return s;
}

struct unit_suffix {
    std::string_view name;
    double scale;
    bool decibel;
};

inline constexpr std::array<unit_suffix, 12> known_units{{{"db", 1.0, true},
                                                          {"w", 1.0, false},
                                                          {"hz", 1.0, false},
                                                          {"khz", 1e3, false},
                                                          {"mhz", 1e6, false},
                                                          {"ghz", 1e9, false},
                                                          {"bps", 1.0, false},
                                                          {"kbps", 1e3, false},
                                                          {"mbps", 1e6, false},
                                                          {"s", 1.0, false},
                                                          {"ms", 1e-3, false},
                                                          {"us", 1e-6, false}}};

// Number with an optional unit suffix, returned in base units.
inline double parse_quantity(const std::string &key, const std::string &text)
{
    const char *begin = text.c_str();
    char *end = nullptr;
    const double number = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(number)) {
        throw scenario_error(key, "key '" + key + "': cannot parse a number from '" + text + "'");
    }
    const std::string suffix = lower(trim(std::string_view(end)));
    if (suffix.empty()) {
        return number;
    }
    for (const auto &u : known_units) {
        if (suffix == u.name) {
            return u.decibel ? db_to_linear(number) : number * u.scale;
        }
    }
    throw scenario_error(key, "key '" + key + "': unknown unit '" + suffix + "'");
}

} // namespace detail

inline scenario parse_scenario(std::istream &in)
{
    static const std::array<std::string_view, 16> keys{
        "protocol",      "rho",       "xi",        "total_power", "noise_variance", "pa_alpha",
        "eta",           "csi_error", "sic_delta", "target_rate_1", "target_rate_2", "bandwidth",
        "block_time",    "omega_sr",  "omega_sd",  "omega_rd"};

    std::map<std::string, std::string> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string body = detail::trim(line);
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw scenario_error("", "line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = detail::trim(std::string_view(body).substr(0, eq));
        const std::string value = detail::trim(std::string_view(body).substr(eq + 1));
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw scenario_error(key, "unknown key '" + key + "'");
        }
        if (value.empty()) {
            throw scenario_error(key, "key '" + key + "' has no value");
        }
        if (!values.emplace(key, value).second) {
            throw scenario_error(key, "duplicate key '" + key + "'");
        }
    }

    auto required = [&](const std::string &key) -> const std::string & {
        const auto it = values.find(key);
        if (it == values.end()) {
            throw scenario_error(key, "missing required key '" + key + "'");
        }
        return it->second;
    };
    auto number = [&](const std::string &key) { return detail::parse_quantity(key, required(key)); };
    auto optional_number = [&](const std::string &key) -> std::optional<double> {
        if (!values.count(key)) {
            return std::nullopt;
        }
        return number(key);
    };

    scenario s;
    auto &cfg = s.config;
    const std::string protocol = detail::lower(required("protocol"));
    if (protocol == "no_eh") {
        cfg.protocol = no_eh{};
    } else if (protocol == "ps") {
        cfg.protocol = power_sharing{number("rho")};
    } else if (protocol == "ts") {
        cfg.protocol = time_sharing{number("xi")};
    } else if (protocol == "ideal") {
        cfg.protocol = ideal{};
    } else {
        throw scenario_error("protocol", "key 'protocol': expected no_eh, ps, ts or ideal, got '" + protocol + "'");
    }

    cfg.total_power = number("total_power");
    cfg.noise_variance = optional_number("noise_variance").value_or(1.0);
    cfg.pa_alpha = number("pa_alpha");
    cfg.eta = optional_number("eta").value_or(0.95);
    cfg.csi_error = optional_number("csi_error").value_or(0.0);
    cfg.sic_delta = optional_number("sic_delta").value_or(0.0);
    cfg.target_rate_1 = number("target_rate_1");
    cfg.target_rate_2 = number("target_rate_2");
    cfg.bandwidth = number("bandwidth");
    cfg.block_time = optional_number("block_time");
    s.topology.omega_sr = number("omega_sr");
    s.topology.omega_sd = number("omega_sd");
    s.topology.omega_rd = number("omega_rd");

    cfg.validate();
    (void)s.topology.estimated(cfg.csi_error);
    return s;
}

inline scenario parse_scenario_string(const std::string &text)
{
    std::istringstream in(text);
    return parse_scenario(in);
}

inline scenario load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw scenario_error("", "cannot open scenario file '" + path + "'");
    }
    return parse_scenario(in);
}

} // namespace swiptnoma

#endif
