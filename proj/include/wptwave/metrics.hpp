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
#ifndef WPTWAVE_METRICS_HPP
#define WPTWAVE_METRICS_HPP

#include <array>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "channel_response.hpp"
#include "signal_model.hpp"

namespace wptwave {

/// Diode and antenna constants of the single-diode rectenna model.
///
/// Defaults are a Schottky diode with i_s = 5 uA, ideality 1.05 and
/// v_t = 25.86 mV, and a 50 ohm antenna. k2_override / k4_override pin the
/// Taylor coefficients directly (e.g. to the rounded 0.0034 / 0.3829) instead
/// of deriving them from i_s, n and v_t.
struct DiodeParams {
    double i_s = 5e-6;
    double ideality = 1.05;
    double v_t = 25.86e-3;
    double r_ant = 50.0;
    std::optional<double> k2_override;
    std::optional<double> k4_override;

    static DiodeParams with_coefficients(double k2, double k4, double r_ant)
    {
        DiodeParams p;
        p.r_ant = r_ant;
        p.k2_override = k2;
        p.k4_override = k4;
        p.validate();
        return p;
    }

    void validate() const
    {
        if (!(i_s > 0.0) || !(ideality > 0.0) || !(v_t > 0.0) || !(r_ant > 0.0))
            throw std::invalid_argument("DiodeParams: all fields must be strictly positive");
        if ((k2_override && !(*k2_override > 0.0)) || (k4_override && !(*k4_override > 0.0)))
            throw std::invalid_argument("DiodeParams: k2 and k4 must be strictly positive");
    }

    friend bool operator==(const DiodeParams &, const DiodeParams &) = default;
};

// Taylor coefficient k_i = i_s / (i! (n v_t)^i) of the diode current, i in {2, 4}.
inline double diode_k(int order, const DiodeParams &p)
{
    p.validate();
    const double nvt = p.ideality * p.v_t;
    switch (order) {
    case 2: return p.i_s / (2.0 * nvt * nvt);
    case 4: return p.i_s / (24.0 * nvt * nvt * nvt * nvt);
    default: throw std::invalid_argument("diode_k: unsupported order (only 2 and 4)");
    }
}

// k_i used by the metrics: the override if present, else diode_k.
inline double taylor_coefficient(int order, const DiodeParams &p)
{
    if (order == 2 && p.k2_override) return *p.k2_override;
    if (order == 4 && p.k4_override) return *p.k4_override;
    return diode_k(order, p);
}

using Quadruple = std::array<std::size_t, 4>;

// Calls f(n0, n1, n2, n3) for every index quadruple in [0, N)^4 with n0 + n1 == n2 + n3.
template <class F>
void for_each_quadruple(std::size_t n_tones, F &&f)
{
    for (std::size_t n0 = 0; n0 < n_tones; ++n0)
        for (std::size_t n1 = 0; n1 < n_tones; ++n1) {
            const std::size_t sum = n0 + n1;
            const std::size_t lo = sum >= n_tones ? sum - (n_tones - 1) : 0;
            const std::size_t hi = sum < n_tones ? sum : n_tones - 1;
            for (std::size_t n2 = lo; n2 <= hi; ++n2) f(n0, n1, n2, sum - n2);
        }
}

// (2N^3 + N) / 3
constexpr std::size_t quadruple_count(std::size_t n_tones) noexcept
{
    return (2 * n_tones * n_tones * n_tones + n_tones) / 3;
}

class QuadrupleSet {
public:
    explicit QuadrupleSet(std::size_t n_tones) : n_tones_(n_tones)
    {
        if (n_tones == 0) throw std::invalid_argument("QuadrupleSet: N must be at least 1");
        tuples_.reserve(quadruple_count(n_tones));
        for_each_quadruple(n_tones, [this](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
            tuples_.push_back({a, b, c, d});
        });
    }

    std::size_t n_tones() const noexcept { return n_tones_; }
    std::size_t size() const noexcept { return tuples_.size(); }
    const std::vector<Quadruple> &tuples() const noexcept { return tuples_; }

private:
    std::size_t n_tones_;
    std::vector<Quadruple> tuples_;
};

inline QuadrupleSet enumerate_quadruples(std::size_t n_tones) { return QuadrupleSet{n_tones}; }

/// DC output proxy of the rectifier for a given transmit waveform and channel.
///
/// z = (k2/2) R sum s_n^2 A_n^2
///   + (3 k4/8) R^2 sum_{n0+n1=n2+n3} prod_j s_nj A_nj cos(psi_n0 + psi_n1 - psi_n2 - psi_n3)
///
/// with psi_n = phi_n + psi_bar_n. Evaluated by exhaustive enumeration, O(N^3).
inline double z_dc(const Waveform &w, const ChannelResponse &ch, const DiodeParams &p)
{
    detail::require_same_length(w.size(), ch.size(), "z_dc");
    const std::size_t n_tones = w.size();
    std::vector<double> a(n_tones);
    std::vector<double> psi(n_tones);
    double second = 0.0;
    for (std::size_t n = 0; n < n_tones; ++n) {
        a[n] = w.amplitudes()[n] * ch.gains()[n];
        psi[n] = w.phases()[n] + ch.phases()[n];
        second += a[n] * a[n];
    }
    double fourth = 0.0;
    for_each_quadruple(n_tones, [&](std::size_t n0, std::size_t n1, std::size_t n2, std::size_t n3) {
        fourth += a[n0] * a[n1] * a[n2] * a[n3] * std::cos(psi[n0] + psi[n1] - psi[n2] - psi[n3]);
    });
    const double k2 = taylor_coefficient(2, p);
    const double k4 = taylor_coefficient(4, p);
    return 0.5 * k2 * p.r_ant * second + 0.375 * k4 * p.r_ant * p.r_ant * fourth;
}

/// z_dc of the scaled-matched-filter waveform s_n = c A_n^beta with matched
/// phases, in closed form as a function of beta.
///
/// The 4th-order coefficient is 3 k4 / 2 (one factor of k4), which is what
/// substituting the SMF weights into z_dc gives. Gains are normalized by their
/// peak before exponentiation; the ratios are scale-free so only the overall
/// A_max^2 and A_max^4 factors remain.
inline double z_dc_smf_closed_form(double beta, const ChannelResponse &ch, const PowerBudget &budget,
                                   const DiodeParams &p)
{
    const double peak = ch.peak_gain();
    if (!(peak > 0.0)) throw std::invalid_argument("degenerate channel");
    const std::size_t n_tones = ch.size();

    std::vector<double> b(n_tones); // r_n^(beta+1)
    double sum_2beta = 0.0;
    double sum_2beta2 = 0.0;
    for (std::size_t n = 0; n < n_tones; ++n) {
        const double r = ch.gains()[n] / peak;
        const double rb = r > 0.0 ? std::pow(r, beta) : 0.0;
        sum_2beta += rb * rb;
        b[n] = rb * r;
        sum_2beta2 += b[n] * b[n];
    }
    double quad = 0.0;
    for_each_quadruple(n_tones, [&](std::size_t n0, std::size_t n1, std::size_t n2, std::size_t n3) {
        quad += b[n0] * b[n1] * b[n2] * b[n3];
    });

    const double k2 = taylor_coefficient(2, p);
    const double k4 = taylor_coefficient(4, p);
    const double pw = budget.watts();
    const double peak2 = peak * peak;
    return k2 * p.r_ant * pw * peak2 * (sum_2beta2 / sum_2beta) +
           1.5 * k4 * p.r_ant * p.r_ant * pw * pw * peak2 * peak2 * quad / (sum_2beta * sum_2beta);
}

/// Time-domain reference for z_dc: averages k2 R y(t)^2 + k4 R^2 y(t)^4 over
/// one period 1/delta_f on a uniform grid of `samples` points.
///
/// Only valid when f0 = K delta_f with integer K >= 2N (no odd-order
/// intermodulation lands at DC and y is periodic) and samples >= 16 (K + N),
/// in which case the rectangle rule is exact up to rounding. Intended as a
/// test oracle; violations of these conditions throw.
inline double z_dc_time_domain_oracle(const Waveform &w, const ChannelResponse &ch, const FrequencyGrid &grid,
                                      const DiodeParams &p, std::size_t samples)
{
    detail::require_same_length(w.size(), grid.size(), "z_dc_time_domain_oracle");
    detail::require_same_length(ch.size(), grid.size(), "z_dc_time_domain_oracle");
    const double ratio = grid.f0() / grid.delta_f();
    const double k_index = std::round(ratio);
    if (std::abs(ratio - k_index) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument("z_dc_time_domain_oracle: f0 must be an integer multiple of delta_f");
    const auto n_tones = static_cast<double>(grid.size());
    if (k_index < 2.0 * n_tones)
        throw std::invalid_argument("z_dc_time_domain_oracle: f0 / delta_f must be at least 2N");
    if (static_cast<double>(samples) < 16.0 * (k_index + n_tones))
        throw std::invalid_argument("z_dc_time_domain_oracle: too few samples");

    // Work in units of the tone spacing so the phase arguments stay small.
    const auto k0 = static_cast<std::size_t>(k_index);
    const double k2 = taylor_coefficient(2, p);
    const double k4 = taylor_coefficient(4, p);
    double acc = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        double y = 0.0;
        for (std::size_t n = 0; n < grid.size(); ++n) {
            // phase of tone n at sample i, reduced modulo one period in integers
            const std::size_t cycles = ((k0 + n) * i) % samples;
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(cycles) / static_cast<double>(samples);
            y += w.amplitudes()[n] * ch.gains()[n] * std::cos(theta + w.phases()[n] + ch.phases()[n]);
        }
        const double y2 = y * y;
        acc += k2 * p.r_ant * y2 + k4 * p.r_ant * p.r_ant * y2 * y2;
    }
    return acc / static_cast<double>(samples);
}

} // namespace wptwave

#endif
