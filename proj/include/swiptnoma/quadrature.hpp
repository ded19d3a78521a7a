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

#ifndef SWIPTNOMA_QUADRATURE_HPP
#define SWIPTNOMA_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "errors.hpp"

namespace swiptnoma
{

struct quadrature_settings {
    double relative_tolerance = 1e-10;
    double absolute_tolerance = 1e-14;
    std::size_t max_subdivisions = 4000;

    void validate() const
    {
        if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0)) {
            throw invalid_config("quadrature tolerances must be positive");
        }
        if (max_subdivisions == 0) {
            throw invalid_config("max_subdivisions must be at least 1");
        }
    }
};

struct quadrature_result {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t intervals = 0;
    bool converged = false;
};

namespace detail
{

// 15-point Kronrod extension of the 7-point Gauss rule. Nodes are on [0, 1],
// symmetric about 0; index 7 is the centre.
struct gauss_kronrod_15 {
    static constexpr std::array<double, 8> nodes{
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    static constexpr std::array<double, 8> kronrod_weights{
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    // Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
    static constexpr std::array<double, 4> gauss_weights{
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

struct interval_estimate {
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(const interval_estimate &other) const noexcept { return error < other.error; }
};

template <typename F>
interval_estimate integrate_interval(F &f, double lo, double hi)
{
    using rule = gauss_kronrod_15;
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double fc = f(centre);
    double kronrod = fc * rule::kronrod_weights[7];
    double gauss = fc * rule::gauss_weights[3];
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * rule::nodes[i];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += rule::kronrod_weights[i] * pair;
        if (i % 2 == 1) {
            gauss += rule::gauss_weights[i / 2] * pair;
        }
    }
    kronrod *= half;
    gauss *= half;
    return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

} // namespace detail

// Globally adaptive Gauss-Kronrod quadrature on [lo, hi]. The interval with the
// largest error estimate is bisected until the summed estimate drops below
// max(absolute_tolerance, relative_tolerance * |value|) or the subdivision
// budget is spent. Interior breakpoints (sorted or not) seed the initial
// partition. The integrand is never evaluated at the end points.
template <typename F>
quadrature_result integrate_adaptive(F &&f, double lo, double hi, const quadrature_settings &settings,
                                     std::span<const double> breakpoints = {})
{
    settings.validate();
    std::vector<double> edges{lo};
    for (double b : breakpoints) {
        if (b > lo && b < hi) {
            edges.push_back(b);
        }
    }
    edges.push_back(hi);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::priority_queue<detail::interval_estimate> heap;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto piece = detail::integrate_interval(f, edges[i], edges[i + 1]);
        total += piece.value;
        error += piece.error;
        heap.push(piece);
    }

    auto target = [&] { return std::max(settings.absolute_tolerance, settings.relative_tolerance * std::abs(total)); };

    while (error > target() && heap.size() < settings.max_subdivisions) {
        const auto worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            break; // interval no longer representable
        }
        heap.pop();
        const auto left = detail::integrate_interval(f, worst.lo, mid);
        const auto right = detail::integrate_interval(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum to shed the drift of the running updates.
    quadrature_result out;
    out.intervals = heap.size();
    while (!heap.empty()) {
        out.value += heap.top().value;
        out.error_estimate += heap.top().error;
        heap.pop();
    }
    out.converged = out.error_estimate
                    <= std::max(settings.absolute_tolerance, settings.relative_tolerance * std::abs(out.value));
    return out;
}

} // namespace swiptnoma

#endif
