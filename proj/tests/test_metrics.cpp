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
#include "catch2/catch_amalgamated.hpp"

#include "wptwave/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace wptwave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const DiodeParams rounded_unit_r = DiodeParams::with_coefficients(0.0034, 0.3829, 1.0);

// Brute force over all N^4 index tuples, independent of for_each_quadruple.
double z_dc_brute_force(const Waveform &w, const ChannelResponse &ch, const DiodeParams &p)
{
    const std::size_t n = w.size();
    std::vector<double> a(n), psi(n);
    double second = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = w.amplitudes()[i] * ch.gains()[i];
        psi[i] = w.phases()[i] + ch.phases()[i];
        second += a[i] * a[i];
    }
    double fourth = 0.0;
    for (std::size_t i0 = 0; i0 < n; ++i0)
        for (std::size_t i1 = 0; i1 < n; ++i1)
            for (std::size_t i2 = 0; i2 < n; ++i2)
                for (std::size_t i3 = 0; i3 < n; ++i3)
                    if (i0 + i1 == i2 + i3)
                        fourth += a[i0] * a[i1] * a[i2] * a[i3] * std::cos(psi[i0] + psi[i1] - psi[i2] - psi[i3]);
    const double k2 = taylor_coefficient(2, p);
    const double k4 = taylor_coefficient(4, p);
    return k2 / 2.0 * p.r_ant * second + 3.0 * k4 / 8.0 * p.r_ant * p.r_ant * fourth;
}

struct Instance {
    Waveform w;
    ChannelResponse ch;
};

Instance random_instance(std::mt19937_64 &rng, std::size_t n, double scale)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    std::vector<double> s(n), phi(n), a(n), psi(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = scale * u(rng);
        phi[i] = ang(rng);
        a[i] = u(rng);
        psi[i] = ang(rng);
    }
    return {Waveform{s, phi}, ChannelResponse{a, psi}};
}

} // namespace

TEST_CASE("diode_k", "[metrics]")
{
    const DiodeParams p{};
    CHECK_THAT(diode_k(2, p), WithinRel(0.0034, 0.005));
    CHECK_THAT(diode_k(4, p), WithinRel(0.3829, 0.005));
    CHECK_THAT(diode_k(2, p), WithinRel(0.003390817137410622, 1e-12));
    CHECK_THAT(diode_k(4, p), WithinRel(0.38325469531191875, 1e-12));

    DiodeParams unit;
    unit.i_s = 1.0;
    unit.ideality = 1.0;
    unit.v_t = 1.0;
    CHECK(diode_k(2, unit) == 0.5);
    CHECK_THROWS_AS(diode_k(3, p), std::invalid_argument);
    CHECK_THROWS_AS(diode_k(6, p), std::invalid_argument);

    DiodeParams bad;
    bad.v_t = 0.0;
    CHECK_THROWS_AS(diode_k(2, bad), std::invalid_argument);
}

TEST_CASE("coefficient overrides", "[metrics]")
{
    CHECK(taylor_coefficient(2, rounded_unit_r) == 0.0034);
    CHECK(taylor_coefficient(4, rounded_unit_r) == 0.3829);
    CHECK_THROWS_AS(DiodeParams::with_coefficients(-1.0, 0.3, 1.0), std::invalid_argument);
}

TEST_CASE("enumerate_quadruples small cases", "[metrics]")
{
    const auto one = enumerate_quadruples(1);
    REQUIRE(one.size() == 1);
    CHECK(one.tuples()[0] == Quadruple{0, 0, 0, 0});

    const auto two = enumerate_quadruples(2);
    const std::set<Quadruple> got(two.tuples().begin(), two.tuples().end());
    const std::set<Quadruple> expected{{0, 0, 0, 0}, {1, 1, 1, 1}, {0, 1, 0, 1},
                                       {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 0, 1, 0}};
    CHECK(two.size() == 6);
    CHECK(got == expected);

    CHECK(enumerate_quadruples(16).size() == 2736);
    CHECK_THROWS_AS(enumerate_quadruples(0), std::invalid_argument);
}

TEST_CASE("quadruple count formula and naive filter agree", "[metrics][property]")
{
    for (std::size_t n = 1; n <= 64; ++n) {
        const auto set = enumerate_quadruples(n);
        CHECK(set.size() == (2 * n * n * n + n) / 3);
        if (n <= 20) {
            std::set<Quadruple> naive;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t c = 0; c < n; ++c)
                        for (std::size_t d = 0; d < n; ++d)
                            if (a + b == c + d) naive.insert({a, b, c, d});
            const std::set<Quadruple> got(set.tuples().begin(), set.tuples().end());
            CHECK(got.size() == set.size());
            CHECK(got == naive);
        }
    }
}

TEST_CASE("z_dc worked examples", "[metrics]")
{
    const auto single = z_dc(Waveform{{std::sqrt(2.0)}, {1.1}}, ChannelResponse{{1.0}, {-0.4}}, rounded_unit_r);
    CHECK_THAT(single, WithinAbs(0.57775, 1e-9));

    CHECK(z_dc(Waveform::from_amplitudes({0, 0, 0}), ChannelResponse::from_gains({1, 2, 3}), rounded_unit_r) == 0.0);

    const auto pair = z_dc(Waveform::from_amplitudes({1, 1}), ChannelResponse::from_gains({1, 1}), rounded_unit_r);
    CHECK_THAT(pair, WithinAbs(0.864925, 1e-9));

    CHECK_THROWS_AS(z_dc(Waveform::from_amplitudes({1}), ChannelResponse::from_gains({1, 1}), rounded_unit_r),
                    std::invalid_argument);
}

TEST_CASE("z_dc matches the O(N^4) brute force", "[metrics][property]")
{
    std::mt19937_64 rng(1234);
    const DiodeParams p{};
    for (std::size_t n = 1; n <= 12; ++n)
        for (int trial = 0; trial < 5; ++trial) {
            const auto inst = random_instance(rng, n, 0.01);
            CHECK_THAT(z_dc(inst.w, inst.ch, p), WithinRel(z_dc_brute_force(inst.w, inst.ch, p), 1e-12));
        }
}

TEST_CASE("z_dc structural properties", "[metrics][property]")
{
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const DiodeParams p{};
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 10;
        const auto inst = random_instance(rng, n, 0.05);

        // common phase shift leaves every cosine argument unchanged
        std::vector<double> shifted(inst.w.phases().begin(), inst.w.phases().end());
        const double delta = 10.0 * u(rng);
        for (auto &x : shifted) x += delta;
        const Waveform ws{std::vector<double>(inst.w.amplitudes().begin(), inst.w.amplitudes().end()), shifted};
        CHECK_THAT(z_dc(ws, inst.ch, p), WithinRel(z_dc(inst.w, inst.ch, p), 1e-12));

        // k4 -> 0 leaves only the second-order term
        DiodeParams second_only = DiodeParams::with_coefficients(diode_k(2, p), 1e-300, p.r_ant);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = inst.w.amplitudes()[i] * inst.ch.gains()[i];
            sum += a * a;
        }
        CHECK_THAT(z_dc(inst.w, inst.ch, second_only), WithinRel(0.5 * diode_k(2, p) * p.r_ant * sum, 1e-12));

        // aligned phases: nonnegative and nondecreasing in each amplitude
        std::vector<double> aligned(n);
        for (std::size_t i = 0; i < n; ++i) aligned[i] = -inst.ch.phases()[i];
        std::vector<double> s(inst.w.amplitudes().begin(), inst.w.amplitudes().end());
        const double base = z_dc(Waveform{s, aligned}, inst.ch, p);
        CHECK(base >= 0.0);
        const std::size_t k = trial % n;
        s[k] += 0.01;
        CHECK(z_dc(Waveform{s, aligned}, inst.ch, p) >= base);
    }
}

TEST_CASE("time-domain oracle agrees with z_dc", "[metrics][oracle]")
{
    const DiodeParams p{};
    SECTION("zero waveform")
    {
        const FrequencyGrid g{8.0, 1.0, 2};
        CHECK(z_dc_time_domain_oracle(Waveform::from_amplitudes({0, 0}), ChannelResponse::from_gains({1, 1}), g, p,
                                      256) == 0.0);
    }
    SECTION("single tone")
    {
        const FrequencyGrid g{4e6, 1e6, 1};
        const double z = z_dc_time_domain_oracle(Waveform{{std::sqrt(2.0)}, {0}}, ChannelResponse{{1}, {0}}, g,
                                                 rounded_unit_r, 512);
        CHECK_THAT(z, WithinRel(0.57775, 1e-6));
    }
    SECTION("random instances up to N = 8")
    {
        std::mt19937_64 rng(8);
        for (std::size_t n = 1; n <= 8; ++n)
            for (int trial = 0; trial < 6; ++trial) {
                const auto inst = random_instance(rng, n, trial % 2 ? 0.01 : 0.3);
                const std::size_t k = 2 * n + static_cast<std::size_t>(trial);
                const FrequencyGrid g{static_cast<double>(k) * 2.5e5, 2.5e5, n};
                const double oracle = z_dc_time_domain_oracle(inst.w, inst.ch, g, p, 16 * (k + n));
                CHECK_THAT(oracle, WithinRel(z_dc(inst.w, inst.ch, p), 1e-6));
            }
    }
    SECTION("preconditions")
    {
        const auto w = Waveform::from_amplitudes({1, 1});
        const auto ch = ChannelResponse::from_gains({1, 1});
        CHECK_THROWS_AS(z_dc_time_domain_oracle(w, ch, FrequencyGrid{4.5, 1.0, 2}, p, 1000), std::invalid_argument);
        CHECK_THROWS_AS(z_dc_time_domain_oracle(w, ch, FrequencyGrid{3.0, 1.0, 2}, p, 1000), std::invalid_argument);
        CHECK_THROWS_AS(z_dc_time_domain_oracle(w, ch, FrequencyGrid{4.0, 1.0, 2}, p, 95), std::invalid_argument);
        CHECK_NOTHROW(z_dc_time_domain_oracle(w, ch, FrequencyGrid{4.0, 1.0, 2}, p, 96));
    }
}

TEST_CASE("z_dc_smf_closed_form basics", "[metrics]")
{
    const PowerBudget one{1.0};
    for (double beta : {1.0, 2.0, 7.5})
        CHECK_THAT(z_dc_smf_closed_form(beta, ChannelResponse{{1.0}, {0.3}}, one, rounded_unit_r),
                   WithinAbs(0.57775, 1e-9));

    const auto flat = ChannelResponse::from_gains({0.3, 0.3, 0.3, 0.3, 0.3});
    const double ref = z_dc_smf_closed_form(1.0, flat, one, DiodeParams{});
    for (double beta : {1.5, 3.0, 11.0}) CHECK_THAT(z_dc_smf_closed_form(beta, flat, one, DiodeParams{}), WithinRel(ref, 1e-13));

    CHECK_THROWS_WITH(z_dc_smf_closed_form(2.0, ChannelResponse::from_gains({0, 0}), one, DiodeParams{}),
                      "degenerate channel");
}

TEST_CASE("closed form equals z_dc of explicit SMF weights", "[metrics][property]")
{
    // SMF weights built here directly from s_n = A_n^beta sqrt(2P / sum A^(2 beta)), phases -psi_bar
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const DiodeParams p{};
    const PowerBudget budget{1e-2};
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 16;
        std::vector<double> a(n), psi(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = 0.1 + u(rng);
            psi[i] = 6.0 * u(rng);
        }
        const ChannelResponse ch{a, psi};
        const double beta = 1.0 + 4.0 * u(rng);
        double denom = 0.0;
        for (double x : a) denom += std::pow(x, 2.0 * beta);
        std::vector<double> s(n), phi(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = std::pow(a[i], beta) * std::sqrt(2.0 * budget.watts() / denom);
            phi[i] = -psi[i];
        }
        CHECK_THAT(z_dc_smf_closed_form(beta, ch, budget, p), WithinRel(z_dc(Waveform{s, phi}, ch, p), 1e-10));
    }
}
