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
#ifndef WPTWAVE_DESIGNERS_HPP
#define WPTWAVE_DESIGNERS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "channel_response.hpp"
#include "metrics.hpp"
#include "signal_model.hpp"

namespace wptwave {

struct BetaSearchOptions {
    double beta_min = 1.0;
    double beta_max = 12.0;
    double tolerance = 1e-6;
    int max_iterations = 50;

    void validate() const
    {
        if (!(beta_min >= 1.0)) throw std::invalid_argument("BetaSearchOptions: beta_min must be >= 1");
        if (!(beta_max > beta_min)) throw std::invalid_argument("BetaSearchOptions: beta_max must exceed beta_min");
        if (!(tolerance > 0.0)) throw std::invalid_argument("BetaSearchOptions: tolerance must be positive");
        if (max_iterations <= 0) throw std::invalid_argument("BetaSearchOptions: max_iterations must be positive");
    }

    friend bool operator==(const BetaSearchOptions &, const BetaSearchOptions &) = default;
};

struct BetaSearchResult {
    double beta = 1.0;
    double z = 0.0;
    // the objective does not depend on beta (all nonzero gains equal)
    bool beta_irrelevant = false;
    // Newton was abandoned for golden-section search
    bool used_fallback = false;
    int iterations = 0;
};

struct OptSearchOptions {
    double step_init = 0.2;
    int max_iterations = 500;
    int restarts = 4;
    double convergence_tol = 1e-10;
    std::uint64_t seed = 0x5eedULL;
    BetaSearchOptions beta{};

    void validate() const
    {
        if (!(step_init > 0.0) || max_iterations <= 0 || restarts <= 0 || !(convergence_tol > 0.0))
            throw std::invalid_argument("OptSearchOptions: all settings must be positive");
        beta.validate();
    }

    friend bool operator==(const OptSearchOptions &, const OptSearchOptions &) = default;
};

// phi_n = -psi_bar_n: aligns every received tone to zero phase.
inline std::vector<double> optimal_phases(const ChannelResponse &ch)
{
    std::vector<double> phi(ch.size());
    for (std::size_t n = 0; n < ch.size(); ++n) phi[n] = -ch.phases()[n];
    return phi;
}

// Uniform power, zero phase, channel independent.
inline Waveform design_up(const FrequencyGrid &grid, const PowerBudget &budget)
{
    const double s = std::sqrt(2.0 * budget.watts() / static_cast<double>(grid.size()));
    return Waveform::from_amplitudes(std::vector<double>(grid.size(), s));
}

/// Scaled matched filter: s_n = c A_n^beta with matched phases, c set by the
/// power budget. Gains are divided by the peak gain first, so the result is
/// invariant to a common channel scaling and does not underflow for large beta.
inline Waveform design_smf(const ChannelResponse &ch, const PowerBudget &budget, double beta)
{
    if (!(beta >= 1.0)) throw std::invalid_argument("design_smf: beta must be >= 1");
    const double peak = ch.peak_gain();
    if (!(peak > 0.0)) throw std::invalid_argument("degenerate channel");

    std::vector<double> amps(ch.size());
    double sum = 0.0;
    for (std::size_t n = 0; n < ch.size(); ++n) {
        const double r = ch.gains()[n] / peak;
        amps[n] = r > 0.0 ? std::pow(r, beta) : 0.0;
        sum += amps[n] * amps[n];
    }
    const double c = std::sqrt(2.0 * budget.watts() / sum);
    for (double &s : amps) s *= c;
    return {std::move(amps), optimal_phases(ch)};
}

// Matched filter, beta = 1.
inline Waveform design_mf(const ChannelResponse &ch, const PowerBudget &budget)
{
    return design_smf(ch, budget, 1.0);
}

namespace detail {

inline bool nonzero_gains_equal(const ChannelResponse &ch)
{
    const double peak = ch.peak_gain();
    for (double a : ch.gains())
        if (a > 0.0 && std::abs(a - peak) > 1e-12 * peak) return false;
    return true;
}

// Golden-section maximization of f on [lo, hi].
template <class F>
double golden_section_max(F &&f, double lo, double hi, double tol, int &iterations)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        ++iterations;
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

} // namespace detail

/// Finds the SMF exponent maximizing the closed-form z_dc on [beta_min, beta_max].
///
/// A coarse scan at 0.5 spacing (which contains beta = 1 and 3 for the default
/// range) locates the best cell; Newton's method on the derivative, with
/// central differences at h = 1e-4, refines inside that cell. If Newton leaves
/// the cell, meets nonnegative curvature or does not settle within
/// max_iterations, golden-section search on the cell takes over. The returned
/// beta never scores below any scanned point.
inline BetaSearchResult optimize_beta(const ChannelResponse &ch, const PowerBudget &budget, const DiodeParams &p,
                                      const BetaSearchOptions &opts = {})
{
    opts.validate();
    if (!(ch.peak_gain() > 0.0)) throw std::invalid_argument("degenerate channel");

    auto objective = [&](double beta) { return z_dc_smf_closed_form(beta, ch, budget, p); };

    BetaSearchResult result;
    if (detail::nonzero_gains_equal(ch)) {
        result.beta = opts.beta_min;
        result.z = objective(opts.beta_min);
        result.beta_irrelevant = true;
        return result;
    }

    constexpr double cell = 0.5;
    std::vector<double> scan;
    for (double b = opts.beta_min; b < opts.beta_max; b += cell) scan.push_back(b);
    scan.push_back(opts.beta_max);
    if (3.0 > opts.beta_min && 3.0 < opts.beta_max) scan.push_back(3.0);

    double best_beta = scan.front();
    double best_z = objective(best_beta);
    for (std::size_t i = 1; i < scan.size(); ++i) {
        const double z = objective(scan[i]);
        if (z > best_z) {
            best_z = z;
            best_beta = scan[i];
        }
    }

    const double lo = std::max(opts.beta_min, best_beta - cell);
    const double hi = std::min(opts.beta_max, best_beta + cell);
    constexpr double h = 1e-4;

    double beta = best_beta;
    bool converged = false;
    for (int it = 0; it < opts.max_iterations; ++it) {
        ++result.iterations;
        const double zp = objective(beta + h);
        const double z0 = objective(beta);
        const double zm = objective(beta - h);
        const double d1 = (zp - zm) / (2.0 * h);
        const double d2 = (zp - 2.0 * z0 + zm) / (h * h);
        if (!(d2 < 0.0)) break;
        const double next = beta - d1 / d2;
        if (next < lo || next > hi) break;
        const double delta = std::abs(next - beta);
        beta = next;
        if (delta < opts.tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        result.used_fallback = true;
        beta = detail::golden_section_max(objective, lo, hi, opts.tolerance, result.iterations);
    }

    const double refined_z = objective(beta);
    if (refined_z > best_z) {
        best_z = refined_z;
        best_beta = beta;
    }
    result.beta = best_beta;
    result.z = best_z;
    return result;
}

namespace detail {

// Objective and gradient of z_dc in the amplitudes with all received phases aligned.
// The 4th-order sum over balanced quadruples equals sum_k c_k^2 with c = a * a
// (self-convolution of a_n = s_n A_n), which makes both O(N^2).
class AlignedObjective {
public:
    AlignedObjective(const ChannelResponse &ch, const DiodeParams &p)
        : gains_(ch.gains().begin(), ch.gains().end()),
          c2_(0.5 * taylor_coefficient(2, p) * p.r_ant),
          c4_(0.375 * taylor_coefficient(4, p) * p.r_ant * p.r_ant),
          a_(gains_.size()),
          conv_(gains_.empty() ? 0 : 2 * gains_.size() - 1)
    {
    }

    double value(const std::vector<double> &s)
    {
        load(s);
        double second = 0.0;
        for (double x : a_) second += x * x;
        double fourth = 0.0;
        for (double c : conv_) fourth += c * c;
        return c2_ * second + c4_ * fourth;
    }

    void gradient(const std::vector<double> &s, std::vector<double> &g)
    {
        load(s);
        const std::size_t n_tones = a_.size();
        g.assign(n_tones, 0.0);
        for (std::size_t m = 0; m < n_tones; ++m) {
            double corr = 0.0;
            for (std::size_t j = 0; j < n_tones; ++j) corr += conv_[m + j] * a_[j];
            g[m] = gains_[m] * (2.0 * c2_ * a_[m] + 4.0 * c4_ * corr);
        }
    }

private:
    void load(const std::vector<double> &s)
    {
        const std::size_t n_tones = a_.size();
        for (std::size_t n = 0; n < n_tones; ++n) a_[n] = s[n] * gains_[n];
        std::fill(conv_.begin(), conv_.end(), 0.0);
        for (std::size_t i = 0; i < n_tones; ++i)
            for (std::size_t j = 0; j < n_tones; ++j) conv_[i + j] += a_[i] * a_[j];
    }

    std::vector<double> gains_;
    double c2_;
    double c4_;
    std::vector<double> a_;
    std::vector<double> conv_;
};

// Puts s on the sphere 1/2 ||s||^2 = P. Returns false for the zero vector.
inline bool project_to_sphere(std::vector<double> &s, double power)
{
    double norm2 = 0.0;
    for (double x : s) norm2 += x * x;
    if (!(norm2 > 0.0)) return false;
    const double f = std::sqrt(2.0 * power / norm2);
    for (double &x : s) x *= f;
    return true;
}

inline std::vector<double> projected_ascent(AlignedObjective &obj, std::vector<double> s, double power,
                                            const OptSearchOptions &opts)
{
    double f = obj.value(s);
    double step = opts.step_init;
    std::vector<double> g;
    std::vector<double> trial(s.size());
    for (int it = 0; it < opts.max_iterations; ++it) {
        obj.gradient(s, g);
        double gnorm = 0.0;
        double snorm = 0.0;
        for (std::size_t n = 0; n < s.size(); ++n) {
            gnorm += g[n] * g[n];
            snorm += s[n] * s[n];
        }
        gnorm = std::sqrt(gnorm);
        snorm = std::sqrt(snorm);
        if (!(gnorm > 0.0)) break;

        bool accepted = false;
        while (step > 1e-14) {
            for (std::size_t n = 0; n < s.size(); ++n) trial[n] = s[n] + step * snorm * g[n] / gnorm;
            project_to_sphere(trial, power);
            for (double &x : trial) x = std::max(x, 0.0);
            if (project_to_sphere(trial, power)) {
                const double ft = obj.value(trial);
                if (ft >= f) {
                    const double gain = ft - f;
                    s.swap(trial);
                    f = ft;
                    accepted = true;
                    step = std::min(1.0, 1.5 * step);
                    if (gain <= opts.convergence_tol * f) return s;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    return s;
}

inline std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// Numerical stand-in for the optimal waveform: projected gradient ascent of
/// z_dc over the amplitudes on the power sphere, with matched phases.
///
/// Starts from SMF(beta*) and from opts.restarts random nonnegative points.
/// Candidates are ranked by the exact z_dc; the unrefined SMF(beta*) start is
/// itself a candidate, so the result never scores below it. Ties within a
/// relative 1e-12 keep the earlier candidate.
inline Waveform design_opt_numeric(const ChannelResponse &ch, const PowerBudget &budget, const DiodeParams &p,
                                   const OptSearchOptions &opts = {})
{
    opts.validate();
    if (!(ch.peak_gain() > 0.0)) throw std::invalid_argument("degenerate channel");
    const std::size_t n_tones = ch.size();
    const std::vector<double> phases = optimal_phases(ch);

    const BetaSearchResult beta = optimize_beta(ch, budget, p, opts.beta);
    const Waveform smf = design_smf(ch, budget, beta.beta);

    std::vector<std::vector<double>> starts;
    starts.emplace_back(smf.amplitudes().begin(), smf.amplitudes().end());
    for (int r = 0; r < opts.restarts; ++r) {
        std::mt19937_64 rng(detail::splitmix64(opts.seed + static_cast<std::uint64_t>(r)));
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> s(n_tones);
        for (std::size_t n = 0; n < n_tones; ++n) {
            const double draw = u(rng);
            s[n] = ch.gains()[n] > 0.0 ? draw : 0.0;
        }
        if (detail::project_to_sphere(s, budget.watts())) starts.push_back(std::move(s));
    }

    detail::AlignedObjective obj(ch, p);
    Waveform best = smf;
    double best_z = z_dc(smf, ch, p);
    for (const auto &start : starts) {
        Waveform cand{detail::projected_ascent(obj, start, budget.watts(), opts), phases};
        const double z = z_dc(cand, ch, p);
        if (z > best_z * (1.0 + 1e-12)) {
            best_z = z;
            best = std::move(cand);
        }
    }
    return best;
}

} // namespace wptwave

#endif
