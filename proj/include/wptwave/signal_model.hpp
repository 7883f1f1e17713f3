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
#ifndef WPTWAVE_SIGNAL_MODEL_HPP
#define WPTWAVE_SIGNAL_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "channel_response.hpp"

namespace wptwave {

// Evenly spaced tone frequencies f_n = f0 + n * delta_f.
class FrequencyGrid {
public:
    FrequencyGrid(double f0_hz, double delta_f_hz, std::size_t n_tones)
        : f0_(f0_hz), delta_f_(delta_f_hz), n_tones_(n_tones)
    {
        if (!(f0_hz > 0.0)) throw std::invalid_argument("FrequencyGrid: f0 must be positive");
        if (!(delta_f_hz > 0.0)) throw std::invalid_argument("FrequencyGrid: delta_f must be positive");
        if (n_tones == 0) throw std::invalid_argument("FrequencyGrid: n_tones must be at least 1");
    }

    // N tones of spacing bandwidth/N centered on center_hz.
    static FrequencyGrid centered(double center_hz, double bandwidth_hz, std::size_t n_tones)
    {
        if (n_tones == 0) throw std::invalid_argument("FrequencyGrid: n_tones must be at least 1");
        const double df = bandwidth_hz / static_cast<double>(n_tones);
        return {center_hz - 0.5 * static_cast<double>(n_tones - 1) * df, df, n_tones};
    }

    double f0() const noexcept { return f0_; }
    double delta_f() const noexcept { return delta_f_; }
    std::size_t size() const noexcept { return n_tones_; }
    double frequency(std::size_t n) const noexcept { return f0_ + static_cast<double>(n) * delta_f_; }

    std::vector<double> frequencies() const
    {
        std::vector<double> f(n_tones_);
        for (std::size_t n = 0; n < n_tones_; ++n) f[n] = frequency(n);
        return f;
    }

private:
    double f0_;
    double delta_f_;
    std::size_t n_tones_;
};

// Transmit power constraint P in watts, P = 1/2 ||s||^2 at the optimum.
class PowerBudget {
public:
    explicit PowerBudget(double watts) : watts_(watts)
    {
        if (!(watts > 0.0) || !std::isfinite(watts))
            throw std::invalid_argument("PowerBudget: power must be positive and finite");
    }
    double watts() const noexcept { return watts_; }

private:
    double watts_;
};

/// Multisine transmit waveform: tone n carries w_n = s_n exp(j phi_n).
///
/// Amplitudes are linear and nonnegative, phases are kept unwrapped. The
/// power unit is chosen so that the transmit power is 1/2 sum s_n^2 watts.
class Waveform {
public:
    Waveform() = default;

    Waveform(std::vector<double> amplitudes, std::vector<double> phases)
        : amplitudes_(std::move(amplitudes)), phases_(std::move(phases))
    {
        if (amplitudes_.size() != phases_.size())
            throw std::invalid_argument("Waveform: amplitudes and phases differ in length");
        for (double s : amplitudes_)
            if (!(s >= 0.0) || !std::isfinite(s))
                throw std::invalid_argument("Waveform: amplitudes must be finite and nonnegative");
    }

    // Zero-phase waveform.
    static Waveform from_amplitudes(std::vector<double> amplitudes)
    {
        std::vector<double> phases(amplitudes.size(), 0.0);
        return {std::move(amplitudes), std::move(phases)};
    }

    std::size_t size() const noexcept { return amplitudes_.size(); }
    std::span<const double> amplitudes() const noexcept { return amplitudes_; }
    std::span<const double> phases() const noexcept { return phases_; }

    friend bool operator==(const Waveform &, const Waveform &) = default;

private:
    std::vector<double> amplitudes_;
    std::vector<double> phases_;
};

inline double transmit_power(const Waveform &w) noexcept
{
    double sum = 0.0;
    for (double s : w.amplitudes()) sum += s * s;
    return 0.5 * sum;
}

// Rescales the amplitudes by one common factor so that transmit_power == budget.
inline Waveform scale_to_power(const Waveform &w, const PowerBudget &budget)
{
    double peak = 0.0;
    for (double s : w.amplitudes()) peak = std::max(peak, s);
    if (!(peak > 0.0)) throw std::invalid_argument("degenerate waveform");

    // normalise by the peak first so tiny or huge amplitudes do not under/overflow
    double sum = 0.0;
    for (double s : w.amplitudes()) sum += (s / peak) * (s / peak);
    const double factor = std::sqrt(2.0 * budget.watts() / sum) / peak;

    std::vector<double> amps(w.amplitudes().begin(), w.amplitudes().end());
    for (double &s : amps) s *= factor;
    return {std::move(amps), std::vector<double>(w.phases().begin(), w.phases().end())};
}

namespace detail {

inline void require_same_length(std::size_t a, std::size_t b, const char *what)
{
    if (a != b) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

inline double multisine_sample(std::span<const double> amplitude, std::span<const double> phase,
                               const FrequencyGrid &grid, double t) noexcept
{
    double y = 0.0;
    for (std::size_t n = 0; n < amplitude.size(); ++n)
        y += amplitude[n] * std::cos(2.0 * std::numbers::pi * grid.frequency(n) * t + phase[n]);
    return y;
}

} // namespace detail

// x(t) = Re{ sum_n w_n exp(j 2 pi f_n t) }
inline double synthesize_transmit(const Waveform &w, const FrequencyGrid &grid, double t)
{
    detail::require_same_length(w.size(), grid.size(), "synthesize_transmit");
    return detail::multisine_sample(w.amplitudes(), w.phases(), grid, t);
}

// y(t) = sum_n s_n A_n cos(2 pi f_n t + phi_n + psi_bar_n), the signal at the rectenna input.
inline double synthesize_received(const Waveform &w, const ChannelResponse &ch, const FrequencyGrid &grid,
                                  double t)
{
    detail::require_same_length(w.size(), grid.size(), "synthesize_received");
    detail::require_same_length(ch.size(), grid.size(), "synthesize_received");
    double y = 0.0;
    for (std::size_t n = 0; n < w.size(); ++n)
        y += w.amplitudes()[n] * ch.gains()[n] *
             std::cos(2.0 * std::numbers::pi * grid.frequency(n) * t + w.phases()[n] + ch.phases()[n]);
    return y;
}

} // namespace wptwave

#endif
