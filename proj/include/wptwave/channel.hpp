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
#ifndef WPTWAVE_CHANNEL_HPP
#define WPTWAVE_CHANNEL_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "channel_response.hpp"
#include "signal_model.hpp"

namespace wptwave {

struct Tap {
    double delay_s = 0.0;
    double amplitude = 0.0;
    double phase_rad = 0.0;

    friend bool operator==(const Tap &, const Tap &) = default;
};

// L-path block-fading channel; tap l contributes alpha_l exp(j(xi_l - 2 pi f tau_l)).
class MultipathChannel {
public:
    explicit MultipathChannel(std::vector<Tap> taps) : taps_(std::move(taps))
    {
        if (taps_.empty()) throw std::invalid_argument("MultipathChannel: at least one tap required");
        for (const Tap &t : taps_) {
            if (!(t.delay_s >= 0.0)) throw std::invalid_argument("MultipathChannel: negative tap delay");
            if (!(t.amplitude >= 0.0)) throw std::invalid_argument("MultipathChannel: negative tap amplitude");
        }
    }

    const std::vector<Tap> &taps() const noexcept { return taps_; }
    std::size_t size() const noexcept { return taps_.size(); }

    friend bool operator==(const MultipathChannel &, const MultipathChannel &) = default;

private:
    std::vector<Tap> taps_;
};

struct PdpEntry {
    double delay_s = 0.0;
    double mean_power = 0.0;

    friend bool operator==(const PdpEntry &, const PdpEntry &) = default;
};

/// Statistical tap template for random channel draws.
///
/// target_received_power is the average received power P_in,av per watt of
/// transmit power, i.e. E{A_n^2} for every tone after normalization.
class PowerDelayProfile {
public:
    PowerDelayProfile(std::vector<PdpEntry> entries, double target_received_power)
        : entries_(std::move(entries)), target_(target_received_power)
    {
        if (entries_.empty()) throw std::invalid_argument("PowerDelayProfile: no entries");
        for (const PdpEntry &e : entries_) {
            if (!(e.mean_power >= 0.0)) throw std::invalid_argument("PowerDelayProfile: negative mean power");
            if (!(e.delay_s >= 0.0)) throw std::invalid_argument("PowerDelayProfile: negative delay");
        }
        if (!(target_received_power > 0.0))
            throw std::invalid_argument("PowerDelayProfile: target received power must be positive");
    }

    const std::vector<PdpEntry> &entries() const noexcept { return entries_; }
    double target_received_power() const noexcept { return target_; }

    double total_power() const noexcept
    {
        double sum = 0.0;
        for (const PdpEntry &e : entries_) sum += e.mean_power;
        return sum;
    }

    friend bool operator==(const PowerDelayProfile &, const PowerDelayProfile &) = default;

private:
    std::vector<PdpEntry> entries_;
    double target_;
};

// Exponentially decaying profile: n_taps taps every spacing_s seconds, p_l = exp(-tau_l / decay_s).
inline PowerDelayProfile exponential_profile(double target_received_power, std::size_t n_taps = 18,
                                             double spacing_s = 10e-9, double decay_s = 30e-9)
{
    std::vector<PdpEntry> entries(n_taps);
    for (std::size_t l = 0; l < n_taps; ++l) {
        const double tau = static_cast<double>(l) * spacing_s;
        entries[l] = {tau, std::exp(-tau / decay_s)};
    }
    return {std::move(entries), target_received_power};
}

// kappa = target / sum_l p_l
inline double normalization_constant(const PowerDelayProfile &pdp)
{
    const double total = pdp.total_power();
    if (!(total > 0.0)) throw std::invalid_argument("normalization_constant: all-zero power delay profile");
    return pdp.target_received_power() / total;
}

// Wraps an angle into (-pi, pi].
inline double wrap_phase(double x) noexcept
{
    double r = std::remainder(x, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
    return r;
}

inline ChannelResponse frequency_response(const MultipathChannel &ch, const FrequencyGrid &grid)
{
    std::vector<double> gains(grid.size());
    std::vector<double> phases(grid.size());
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const double f = grid.frequency(n);
        std::complex<double> h{0.0, 0.0};
        for (const Tap &t : ch.taps())
            h += std::polar(t.amplitude, t.phase_rad - 2.0 * std::numbers::pi * f * t.delay_s);
        gains[n] = std::abs(h);
        phases[n] = wrap_phase(std::arg(h));
    }
    return {std::move(gains), std::move(phases)};
}

/// Draws one realization with i.i.d. circularly symmetric complex Gaussian taps.
///
/// Tap l gets independent real and imaginary parts ~ N(0, kappa p_l / 2), so
/// E{alpha_l^2} = kappa p_l. The number of normal draws is fixed (two per
/// entry) regardless of the powers, which keeps streams aligned across profiles.
template <class Rng>
MultipathChannel sample_channel(const PowerDelayProfile &pdp, Rng &rng)
{
    const double kappa = normalization_constant(pdp);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Tap> taps;
    taps.reserve(pdp.entries().size());
    for (const PdpEntry &e : pdp.entries()) {
        const double sigma = std::sqrt(0.5 * kappa * e.mean_power);
        const double re = normal(rng);
        const double im = normal(rng);
        const std::complex<double> g{sigma * re, sigma * im};
        taps.push_back({e.delay_s, std::abs(g), std::arg(g)});
    }
    return MultipathChannel{std::move(taps)};
}

} // namespace wptwave

#endif
