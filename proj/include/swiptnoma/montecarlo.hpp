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

#ifndef SWIPTNOMA_MONTECARLO_HPP
#define SWIPTNOMA_MONTECARLO_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <thread>
#include <type_traits>
#include <vector>

#include "analytic.hpp"
#include "errors.hpp"
#include "model.hpp"

namespace swiptnoma
{

// How |g|^2, the residual of imperfect SIC, is drawn per realization.
enum class sic_residual_mode {
    mean_power, // fixed at delta * W_sr
    random      // exponential with mean delta * W_sr
};

struct simulation_plan {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    sic_residual_mode residual_mode = sic_residual_mode::mean_power;
    std::size_t worker_chunks = 16;
    std::size_t threads = 0; // 0 = hardware concurrency; never affects results

    void validate() const
    {
        if (trials < 1) {
            throw invalid_config("trials must be at least 1");
        }
        if (worker_chunks < 1) {
            throw invalid_config("worker_chunks must be at least 1");
        }
    }
};

// Raw event counts; estimates are recomputed from these.
struct outage_counts {
    std::uint64_t trials = 0;
    std::uint64_t x1 = 0;
    std::uint64_t x2 = 0;
    std::uint64_t both = 0;
    std::uint64_t system = 0;

    outage_counts &operator+=(const outage_counts &o) noexcept
    {
        trials += o.trials;
        x1 += o.x1;
        x2 += o.x2;
        both += o.both;
        system += o.system;
        return *this;
    }

    bool operator==(const outage_counts &) const = default;
};

struct outage_report {
    double p1_hat = 0.0;
    double p2_hat = 0.0;
    double psys_hat = 0.0;
    double se_p1 = 0.0;
    double se_p2 = 0.0;
    double se_psys = 0.0;
    std::uint64_t trials = 0;
    outage_counts counts;
    std::optional<analytic_outage> analytic_companion;
};

// Wald standard error of a binomial proportion.
inline double binomial_standard_error(double p, std::uint64_t n) noexcept
{
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

inline outage_report make_report(const outage_counts &c)
{
    outage_report r;
    const auto n = static_cast<double>(c.trials);
    r.trials = c.trials;
    r.counts = c;
    r.p1_hat = static_cast<double>(c.x1) / n;
    r.p2_hat = static_cast<double>(c.x2) / n;
    r.psys_hat = static_cast<double>(c.system) / n;
    r.se_p1 = binomial_standard_error(r.p1_hat, c.trials);
    r.se_p2 = binomial_standard_error(r.p2_hat, c.trials);
    r.se_psys = binomial_standard_error(r.psys_hat, c.trials);
    return r;
}

// ----- Random streams -------------------------------------------------------

// Per-chunk generator. The seed sequence depends only on (seed, chunk), so a
// chunk produces the same draws whichever thread runs it.
class chunk_stream
{
public:
    chunk_stream(std::uint64_t seed, std::uint64_t chunk)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
        engine_.seed(seq);
    }

    // Uniform on (0, 1]. Built from the top 53 bits so the value is portable.
    double uniform() noexcept { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    double exponential(double mean) noexcept { return -mean * std::log(uniform()); }

private:
    std::mt19937_64 engine_;
};

// ----- Per-realization model ------------------------------------------------

// Estimated power gains |h_k|^2 of one block plus the SIC residual |g|^2.
struct channel_draw {
    double sr;
    double sd;
    double rd;
    double residual;
};

struct realization_sinr {
    double x2_sr;
    double x2_sd;
    double x1_sr;
    double x1_rd;
};

// Consumes exactly four uniforms regardless of mode, so the two residual modes
// share every channel draw for a given seed.
inline channel_draw sample_realization(const estimated_gains &gains, double sic_delta, sic_residual_mode mode,
                                       chunk_stream &rng) noexcept
{
    channel_draw d{};
    d.sr = rng.exponential(gains.sr);
    d.sd = rng.exponential(gains.sd);
    d.rd = rng.exponential(gains.rd);
    const double residual_mean = sic_delta * gains.sr;
    const double draw = rng.exponential(1.0);
    d.residual = mode == sic_residual_mode::random ? residual_mean * draw : residual_mean;
    return d;
}

// Relay transmit power for one block: harvested energy divided by the relay's
// transmission time, or the fixed budget without harvesting.
inline double relay_power(const system_config &cfg, double source_power, double gain_sr)
{
    const double t = cfg.block_duration();
    return std::visit(
        [&](const auto &p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, no_eh>) {
                return cfg.total_power;
            } else if constexpr (std::is_same_v<P, power_sharing>) {
                const double harvested = cfg.eta * p.rho * source_power * gain_sr * (t / 2.0);
                return harvested / (t / 2.0);
            } else if constexpr (std::is_same_v<P, time_sharing>) {
                const double harvested = cfg.eta * source_power * gain_sr * (p.xi * t);
                return harvested / ((1.0 - p.xi) * t / 2.0);
            } else {
                const double harvested = cfg.eta * source_power * gain_sr * (t / 2.0);
                return harvested / (t / 2.0);
            }
        },
        cfg.protocol);
}

inline realization_sinr realization_sinrs(const system_config &cfg, const channel_draw &draw)
{
    const double alpha = cfg.pa_alpha;
    const double kappa = cfg.csi_error;
    const double noise = cfg.noise_variance;
    const double source_power = derive_source_power(cfg);
    const double info_power = derive_info_fraction(cfg) * source_power;

    realization_sinr s{};
    s.x2_sr = (1.0 - alpha) * info_power * draw.sr / (alpha * info_power * draw.sr + info_power * kappa + noise);
    s.x2_sd = (1.0 - alpha) * info_power * draw.sd / (alpha * info_power * draw.sd + info_power * kappa + noise);
    s.x1_sr = alpha * info_power * draw.sr / ((1.0 - alpha) * info_power * draw.residual + info_power * kappa + noise);
    const double pr = relay_power(cfg, source_power, draw.sr);
    s.x1_rd = pr * draw.rd / (pr * kappa + noise);
    return s;
}

namespace detail
{

inline outage_counts run_chunk(const system_config &cfg, const estimated_gains &gains, const simulation_plan &plan,
                               std::uint64_t chunk, std::uint64_t trials)
{
    chunk_stream rng(plan.seed, chunk);
    const double rate_scale = derive_time_fraction(cfg) * cfg.bandwidth;
    outage_counts c;
    c.trials = trials;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const auto draw = sample_realization(gains, cfg.sic_delta, plan.residual_mode, rng);
        const auto s = realization_sinrs(cfg, draw);
        const double rate1 = rate_scale * std::log2(1.0 + std::min(s.x1_sr, s.x1_rd));
        const double rate2 = rate_scale * std::log2(1.0 + std::min(s.x2_sr, s.x2_sd));
        const bool out1 = rate1 < cfg.target_rate_1;
        const bool out2 = rate2 < cfg.target_rate_2;
        c.x1 += out1;
        c.x2 += out2;
        c.both += out1 && out2;
        c.system += out1 || out2;
    }
    return c;
}

} // namespace detail

// Number of trials given to each chunk: an even split with the remainder
// spread over the leading chunks.
inline std::vector<std::uint64_t> chunk_partition(std::uint64_t trials, std::size_t chunks)
{
    const std::uint64_t n = std::min<std::uint64_t>(chunks, trials);
    std::vector<std::uint64_t> sizes(n, trials / n);
    for (std::uint64_t i = 0; i < trials % n; ++i) {
        ++sizes[i];
    }
    return sizes;
}

inline outage_report estimate_outage(const system_config &cfg, const fading_topology &topo,
                                     const simulation_plan &plan)
{
    cfg.validate();
    plan.validate();
    const auto gains = topo.estimated(cfg.csi_error);
    const auto sizes = chunk_partition(plan.trials, plan.worker_chunks);

    std::vector<outage_counts> per_chunk(sizes.size());
    std::size_t workers = plan.threads ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, sizes.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < sizes.size(); k = next++) {
            per_chunk[k] = detail::run_chunk(cfg, gains, plan, k, sizes[k]);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }

    outage_counts total;
    for (const auto &c : per_chunk) {
        total += c;
    }
    return make_report(total);
}

} // namespace swiptnoma

#endif
