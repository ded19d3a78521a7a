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

#ifndef SWIPTNOMA_CSV_HPP
#define SWIPTNOMA_CSV_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "model.hpp"
#include "montecarlo.hpp"

namespace swiptnoma
{

inline constexpr std::array<const char *, 12> csv_columns{"protocol", "axis_name", "axis_value", "engine",
                                                          "p1",       "p2",        "p_sys",      "se_p1",
                                                          "se_p2",    "se_psys",   "trials",     "approx_flag"};

// One output row. Absent optionals are written as empty fields.
struct csv_row {
    std::string protocol;
    std::string axis_name;
    std::optional<double> axis_value;
    std::string engine;
    std::optional<double> p1;
    std::optional<double> p2;
    std::optional<double> p_sys;
    std::optional<double> se_p1;
    std::optional<double> se_p2;
    std::optional<double> se_psys;
    std::optional<std::uint64_t> trials;
    std::optional<bool> approx_flag;

    bool operator==(const csv_row &) const = default;
};

namespace detail
{

inline std::string format_full(std::optional<double> v)
{
    if (!v || std::isnan(*v)) {
        return {};
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", *v);
    return buf;
}

inline std::optional<double> finite_or_empty(double v)
{
    return std::isnan(v) ? std::nullopt : std::optional<double>(v);
}

inline std::vector<std::string> split_fields(const std::string &line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

inline std::optional<double> parse_optional_double(const std::string &s)
{
    if (s.empty()) {
        return std::nullopt;
    }
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw invalid_config("csv: bad numeric field '" + s + "'");
    }
    return v;
}

} // namespace detail

inline void write_csv_header(std::ostream &out)
{
    for (std::size_t i = 0; i < csv_columns.size(); ++i) {
        out << (i ? "," : "") << csv_columns[i];
    }
    out << '\n';
}

inline void write_csv_row(std::ostream &out, const csv_row &r)
{
    using detail::format_full;
    out << r.protocol << ',' << r.axis_name << ',' << format_full(r.axis_value) << ',' << r.engine << ','
        << format_full(r.p1) << ',' << format_full(r.p2) << ',' << format_full(r.p_sys) << ','
        << format_full(r.se_p1) << ',' << format_full(r.se_p2) << ',' << format_full(r.se_psys) << ','
        << (r.trials ? std::to_string(*r.trials) : std::string{}) << ','
        << (r.approx_flag ? (*r.approx_flag ? "1" : "0") : "") << '\n';
}

// Header first, always, even for an empty table.
inline void write_csv(std::ostream &out, std::span<const csv_row> rows)
{
    write_csv_header(out);
    for (const auto &r : rows) {
        write_csv_row(out, r);
    }
}

inline std::vector<csv_row> read_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw invalid_config("csv: missing header");
    }
    const auto header = detail::split_fields(line);
    if (header.size() != csv_columns.size()) {
        throw invalid_config("csv: unexpected header");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] != csv_columns[i]) {
            throw invalid_config("csv: unexpected column '" + header[i] + "'");
        }
    }
    std::vector<csv_row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = detail::split_fields(line);
        if (f.size() != csv_columns.size()) {
            throw invalid_config("csv: row has " + std::to_string(f.size()) + " fields");
        }
        csv_row r;
        r.protocol = f[0];
        r.axis_name = f[1];
        r.axis_value = detail::parse_optional_double(f[2]);
        r.engine = f[3];
        r.p1 = detail::parse_optional_double(f[4]);
        r.p2 = detail::parse_optional_double(f[5]);
        r.p_sys = detail::parse_optional_double(f[6]);
        r.se_p1 = detail::parse_optional_double(f[7]);
        r.se_p2 = detail::parse_optional_double(f[8]);
        r.se_psys = detail::parse_optional_double(f[9]);
        if (!f[10].empty()) {
            r.trials = std::stoull(f[10]);
        }
        if (!f[11].empty()) {
            r.approx_flag = f[11] == "1";
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

// ----- Conversions ----------------------------------------------------------

inline csv_row to_csv_row(const system_config &cfg, const analytic_outage &a)
{
    csv_row r;
    r.protocol = std::string(protocol_name(cfg.protocol));
    r.engine = "analytic";
    r.p1 = a.p1;
    r.p2 = a.p2;
    r.p_sys = a.p_system;
    r.approx_flag = a.p1_is_approximate;
    return r;
}

inline csv_row to_csv_row(const system_config &cfg, const outage_report &m)
{
    csv_row r;
    r.protocol = std::string(protocol_name(cfg.protocol));
    r.engine = "mc";
    r.p1 = m.p1_hat;
    r.p2 = m.p2_hat;
    r.p_sys = m.psys_hat;
    r.se_p1 = m.se_p1;
    r.se_p2 = m.se_p2;
    r.se_psys = m.se_psys;
    r.trials = m.trials;
    r.approx_flag = false;
    return r;
}

inline std::vector<csv_row> to_csv_rows(const sweep_result &result)
{
    std::vector<csv_row> rows;
    rows.reserve(result.records.size());
    for (const auto &rec : result.records) {
        csv_row r;
        r.protocol = std::string(protocol_name(rec.protocol));
        r.axis_name = std::string(axis_name(result.axis));
        r.axis_value = rec.axis_value;
        r.engine = std::string(engine_name(rec.engine));
        r.p1 = detail::finite_or_empty(rec.p1);
        r.p2 = detail::finite_or_empty(rec.p2);
        r.p_sys = detail::finite_or_empty(rec.p_sys);
        r.se_p1 = rec.se_p1;
        r.se_p2 = rec.se_p2;
        r.se_psys = rec.se_psys;
        r.trials = rec.trials;
        r.approx_flag = rec.approximate;
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace swiptnoma

#endif
