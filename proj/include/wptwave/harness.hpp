// SPDX-License-Identifier: Apache-2.0
//
// wptwave: channel-adaptive multisine waveform design for wireless power transfer
// Copyright (C) 2026 The wptwave authors
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
#ifndef WPTWAVE_HARNESS_HPP
#define WPTWAVE_HARNESS_HPP

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <exception>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "channel.hpp"
#include "designers.hpp"
#include "metrics.hpp"
#include "signal_model.hpp"

namespace wptwave {

inline double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watts_to_dbm(double watts) noexcept { return 10.0 * std::log10(watts) + 30.0; }

/// A waveform strategy as named on the command line:
/// "up", "mf", "smf:<beta>", "smf-opt-beta" or "opt".
struct Strategy {
    enum class Kind { up, mf, smf, smf_opt_beta, opt };

    Kind kind = Kind::up;
    double beta = 1.0;
    std::string name = "up";

    static Strategy parse(std::string_view text)
    {
        Strategy s;
        s.name = std::string(text);
        if (text == "up") s.kind = Kind::up;
        else if (text == "mf") s.kind = Kind::mf;
        else if (text == "smf-opt-beta") s.kind = Kind::smf_opt_beta;
        else if (text == "opt") s.kind = Kind::opt;
        else if (text.starts_with("smf:")) {
            const std::string_view num = text.substr(4);
            double beta = 0.0;
            const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), beta);
            if (ec != std::errc{} || ptr != num.data() + num.size() || num.empty())
                throw std::invalid_argument("unknown strategy '" + s.name + "': bad beta");
            if (!(beta >= 1.0)) throw std::invalid_argument("strategy '" + s.name + "': beta must be >= 1");
            s.kind = Kind::smf;
            s.beta = beta;
        } else {
            throw std::invalid_argument("unknown strategy '" + s.name + "'");
        }
        return s;
    }
};

struct ExperimentConfig {
    double center_hz = 5.18e9;
    double bandwidth_hz = 10e6;
    std::vector<std::size_t> n_values{1, 2, 4, 8, 16, 32};
    std::vector<std::string> strategies{"up", "mf", "smf:3", "smf-opt-beta", "opt"};
    double received_power_dbm = -20.0;
    // The link budget is folded into the channel normalization; transmit power
    // stays at 1 W so that the average received power is received_power_dbm.
    double transmit_power_w = 1.0;
    std::vector<PdpEntry> pdp = exponential_profile(1.0).entries();
    // Replaces the random draws with one deterministic channel when set.
    std::optional<std::vector<Tap>> fixed_channel;
    std::size_t n_realizations = 500;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    DiodeParams diode{};
    BetaSearchOptions beta_search{};
    OptSearchOptions opt_search{};
    std::size_t profile_n_tones = 16;
    std::vector<std::string> profile_strategies{"smf:1", "smf:3", "opt"};

    static constexpr std::size_t max_tones = 64;

    void validate() const
    {
        if (n_values.empty()) throw std::invalid_argument("config: n_values must not be empty");
        for (std::size_t n : n_values)
            if (n < 1 || n > max_tones) throw std::invalid_argument("config: each N must lie in [1, 64]");
        if (profile_n_tones < 1 || profile_n_tones > max_tones)
            throw std::invalid_argument("config: profile_n_tones must lie in [1, 64]");
        if (n_realizations < 1) throw std::invalid_argument("config: n_realizations must be at least 1");
        if (workers < 1) throw std::invalid_argument("config: workers must be at least 1");
        if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("config: bandwidth must be positive");
        if (!(center_hz > bandwidth_hz)) throw std::invalid_argument("config: center frequency must exceed bandwidth");
        if (strategies.empty()) throw std::invalid_argument("config: strategies must not be empty");
        for (const auto &s : strategies) Strategy::parse(s);
        for (const auto &s : profile_strategies) Strategy::parse(s);
        (void)PowerBudget{transmit_power_w};
        (void)normalization_constant(power_delay_profile());
        if (fixed_channel) (void)MultipathChannel{*fixed_channel};
        diode.validate();
        beta_search.validate();
        opt_search.validate();
    }

    // OPT starts from SMF(beta*) found with the same search settings as smf-opt-beta.
    OptSearchOptions opt_options() const
    {
        OptSearchOptions o = opt_search;
        o.beta = beta_search;
        return o;
    }

    PowerDelayProfile power_delay_profile() const { return {pdp, dbm_to_watts(received_power_dbm)}; }
};

struct SweepRow {
    std::size_t n_tones = 0;
    std::string strategy;
    double mean_zdc = 0.0;
    double stderr_zdc = 0.0;
    std::optional<double> mean_beta;
    std::size_t realizations = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const SweepRow &, const SweepRow &) = default;
};

struct SweepResult {
    std::vector<SweepRow> rows;

    const SweepRow *find(std::size_t n_tones, std::string_view strategy) const
    {
        for (const auto &r : rows)
            if (r.n_tones == n_tones && r.strategy == strategy) return &r;
        return nullptr;
    }

    friend bool operator==(const SweepResult &, const SweepResult &) = default;
};

// One strategy evaluated on one realization.
struct TraceRecord {
    std::size_t n_tones = 0;
    std::size_t realization = 0;
    std::string strategy;
    std::uint64_t channel_hash = 0;
    double z = 0.0;
    std::optional<double> beta;
};

namespace detail {

// Neumaier compensated sum.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline std::uint64_t hash_response(const ChannelResponse &ch) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](double v) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &v, sizeof v);
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
    };
    for (double a : ch.gains()) mix(a);
    for (double p : ch.phases()) mix(p);
    return h;
}

// Stream for realization r depends only on (seed, r), never on the worker.
inline std::mt19937_64 realization_rng(std::uint64_t seed, std::size_t realization)
{
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(realization)));
}

struct Evaluation {
    double z = 0.0;
    std::optional<double> beta;
};

inline Evaluation evaluate_strategy(const Strategy &s, const ChannelResponse &ch, const FrequencyGrid &grid,
                                    const PowerBudget &budget, const ExperimentConfig &cfg)
{
    switch (s.kind) {
    case Strategy::Kind::up: return {z_dc(design_up(grid, budget), ch, cfg.diode), {}};
    case Strategy::Kind::mf: return {z_dc(design_mf(ch, budget), ch, cfg.diode), {}};
    case Strategy::Kind::smf: return {z_dc(design_smf(ch, budget, s.beta), ch, cfg.diode), {}};
    case Strategy::Kind::smf_opt_beta: {
        const BetaSearchResult b = optimize_beta(ch, budget, cfg.diode, cfg.beta_search);
        return {z_dc(design_smf(ch, budget, b.beta), ch, cfg.diode), b.beta};
    }
    case Strategy::Kind::opt:
        return {z_dc(design_opt_numeric(ch, budget, cfg.diode, cfg.opt_options()), ch, cfg.diode), {}};
    }
    throw std::logic_error("unreachable strategy kind");
}

inline Waveform design_for_strategy(const Strategy &s, const ChannelResponse &ch, const FrequencyGrid &grid,
                                    const PowerBudget &budget, const ExperimentConfig &cfg)
{
    switch (s.kind) {
    case Strategy::Kind::up: return design_up(grid, budget);
    case Strategy::Kind::mf: return design_mf(ch, budget);
    case Strategy::Kind::smf: return design_smf(ch, budget, s.beta);
    case Strategy::Kind::smf_opt_beta:
        return design_smf(ch, budget, optimize_beta(ch, budget, cfg.diode, cfg.beta_search).beta);
    case Strategy::Kind::opt: return design_opt_numeric(ch, budget, cfg.diode, cfg.opt_options());
    }
    throw std::logic_error("unreachable strategy kind");
}

// Runs body(i) for i in [0, count) on `workers` threads; rethrows the first failure.
template <class Body>
void parallel_for(std::size_t count, std::size_t workers, Body &&body)
{
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next.store(count);
                }
            }
        });
    }
    for (auto &t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace detail

// Channel realization r of a sweep; the same taps are reused for every N.
inline MultipathChannel sweep_channel(const ExperimentConfig &cfg, std::size_t realization)
{
    if (cfg.fixed_channel) return MultipathChannel{*cfg.fixed_channel};
    auto rng = detail::realization_rng(cfg.seed, realization);
    return sample_channel(cfg.power_delay_profile(), rng);
}

/// Monte Carlo sweep over N and strategies.
///
/// For every N the grid has spacing bandwidth/N around the center frequency.
/// All strategies are evaluated on the same channel per realization, and the
/// result does not depend on cfg.workers: per-realization values are stored by
/// index and reduced in index order.
inline SweepResult run_sweep(const ExperimentConfig &cfg, std::vector<TraceRecord> *trace = nullptr)
{
    cfg.validate();
    std::vector<Strategy> strategies;
    for (const auto &name : cfg.strategies) strategies.push_back(Strategy::parse(name));
    const PowerBudget budget{cfg.transmit_power_w};
    const std::size_t n_strat = strategies.size();
    const std::size_t n_real = cfg.n_realizations;

    SweepResult result;
    for (std::size_t n_tones : cfg.n_values) {
        const FrequencyGrid grid = FrequencyGrid::centered(cfg.center_hz, cfg.bandwidth_hz, n_tones);
        std::vector<detail::Evaluation> evals(n_real * n_strat);
        std::vector<std::uint64_t> hashes(n_real * n_strat);

        detail::parallel_for(n_real, cfg.workers, [&](std::size_t r) {
            const ChannelResponse ch = frequency_response(sweep_channel(cfg, r), grid);
            for (std::size_t k = 0; k < n_strat; ++k) {
                hashes[r * n_strat + k] = detail::hash_response(ch);
                evals[r * n_strat + k] = detail::evaluate_strategy(strategies[k], ch, grid, budget, cfg);
            }
        });

        for (std::size_t k = 0; k < n_strat; ++k) {
            detail::CompensatedSum sum;
            detail::CompensatedSum beta_sum;
            std::size_t beta_count = 0;
            for (std::size_t r = 0; r < n_real; ++r) {
                const auto &e = evals[r * n_strat + k];
                sum.add(e.z);
                if (e.beta) {
                    beta_sum.add(*e.beta);
                    ++beta_count;
                }
            }
            const double mean = sum.value() / static_cast<double>(n_real);
            detail::CompensatedSum sq;
            for (std::size_t r = 0; r < n_real; ++r) {
                const double d = evals[r * n_strat + k].z - mean;
                sq.add(d * d);
            }
            const double var = n_real > 1 ? sq.value() / static_cast<double>(n_real - 1) : 0.0;

            SweepRow row;
            row.n_tones = n_tones;
            row.strategy = strategies[k].name;
            row.mean_zdc = mean;
            row.stderr_zdc = std::sqrt(var / static_cast<double>(n_real));
            if (beta_count > 0) row.mean_beta = beta_sum.value() / static_cast<double>(beta_count);
            row.realizations = n_real;
            row.seed = cfg.seed;
            result.rows.push_back(std::move(row));
        }

        if (trace) {
            for (std::size_t r = 0; r < n_real; ++r)
                for (std::size_t k = 0; k < n_strat; ++k) {
                    const auto &e = evals[r * n_strat + k];
                    trace->push_back({n_tones, r, strategies[k].name, hashes[r * n_strat + k], e.z, e.beta});
                }
        }
    }
    return result;
}

struct ProfileTable {
    std::vector<std::string> strategies;
    std::vector<double> frequencies;
    std::vector<double> gains;
    // amplitudes[k][n]: amplitude of tone n under strategy k
    std::vector<std::vector<double>> amplitudes;
};

// Per-tone channel gain and transmit amplitude of each strategy on one channel.
inline ProfileTable emit_waveform_profile(const ExperimentConfig &cfg, const ChannelResponse &ch,
                                          const FrequencyGrid &grid, const std::vector<std::string> &strategies)
{
    detail::require_same_length(ch.size(), grid.size(), "emit_waveform_profile");
    const PowerBudget budget{cfg.transmit_power_w};
    ProfileTable table;
    table.strategies = strategies;
    table.frequencies = grid.frequencies();
    table.gains.assign(ch.gains().begin(), ch.gains().end());
    for (const auto &name : strategies) {
        const Waveform w = detail::design_for_strategy(Strategy::parse(name), ch, grid, budget, cfg);
        table.amplitudes.emplace_back(w.amplitudes().begin(), w.amplitudes().end());
    }
    return table;
}

struct SelfTestReport {
    std::size_t instances = 0;
    double max_relative_error = 0.0;
    bool passed = false;
};

/// Compares z_dc against the time-domain oracle on random instances with
/// N in {1, 2, 4, 8}; passes when every relative error is at most tolerance.
inline SelfTestReport oracle_self_test(std::size_t instances = 200, std::uint64_t seed = 7, double tolerance = 1e-6)
{
    constexpr std::size_t sizes[] = {1, 2, 4, 8};
    const DiodeParams diode{};
    std::mt19937_64 rng(detail::splitmix64(seed));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

    SelfTestReport report;
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t n_tones = sizes[i % 4];
        const std::size_t k_index = 2 * n_tones + static_cast<std::size_t>(unit(rng) * 8.0);
        const double df = 1e6;
        const FrequencyGrid grid{static_cast<double>(k_index) * df, df, n_tones};
        const double scale = std::pow(10.0, -2.0 * unit(rng));
        std::vector<double> s(n_tones), phi(n_tones), a(n_tones), psi(n_tones);
        for (std::size_t n = 0; n < n_tones; ++n) {
            s[n] = scale * unit(rng);
            phi[n] = angle(rng);
            a[n] = unit(rng);
            psi[n] = angle(rng);
        }
        const Waveform w{s, phi};
        const ChannelResponse ch{a, psi};
        const double closed = z_dc(w, ch, diode);
        const double oracle = z_dc_time_domain_oracle(w, ch, grid, diode, 16 * (k_index + n_tones));
        const double rel = closed > 0.0 ? std::abs(oracle - closed) / closed : std::abs(oracle);
        report.max_relative_error = std::max(report.max_relative_error, rel);
        ++report.instances;
    }
    report.passed = report.max_relative_error <= tolerance;
    return report;
}

} // namespace wptwave

#endif
