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

#include "wptwave/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace wptwave;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("frequency_response of simple channels", "[channel]")
{
    const auto grid = FrequencyGrid::centered(5.18e9, 10e6, 8);

    const auto identity = frequency_response(MultipathChannel{{{0.0, 1.0, 0.0}}}, grid);
    for (std::size_t n = 0; n < 8; ++n) {
        CHECK_THAT(identity.gains()[n], WithinRel(1.0, 1e-15));
        CHECK_THAT(identity.phases()[n], WithinAbs(0.0, 1e-15));
    }

    const auto flat = frequency_response(MultipathChannel{{{0.0, 2.0, std::numbers::pi / 3}}}, grid);
    for (std::size_t n = 0; n < 8; ++n) {
        CHECK_THAT(flat.gains()[n], WithinRel(2.0, 1e-15));
        CHECK_THAT(flat.phases()[n], WithinAbs(std::numbers::pi / 3, 1e-15));
    }
}

TEST_CASE("two taps half a carrier period apart cancel at tone 0", "[channel]")
{
    const FrequencyGrid grid{1e9, 1e6, 4};
    const MultipathChannel ch{{{0.0, 1.0, 0.0}, {1.0 / (2.0 * 1e9), 1.0, 0.0}}};
    const auto h = frequency_response(ch, grid);
    CHECK(h.gains()[0] < 1e-12);
    CHECK(h.gains()[1] > 1e-3);
}

TEST_CASE("pure delay gives constant gain and linear phase", "[channel][property]")
{
    const auto grid = FrequencyGrid::centered(5.18e9, 10e6, 16);
    const double tau = 37e-9;
    const double xi = 0.4;
    const auto h = frequency_response(MultipathChannel{{{tau, 0.7, xi}}}, grid);
    for (std::size_t n = 0; n < 16; ++n) {
        CHECK_THAT(h.gains()[n], WithinRel(0.7, 1e-12));
        const double expected = wrap_phase(xi - 2.0 * std::numbers::pi * grid.frequency(n) * tau);
        CHECK_THAT(std::remainder(h.phases()[n] - expected, 2.0 * std::numbers::pi), WithinAbs(0.0, 1e-9));
        CHECK(h.phases()[n] > -std::numbers::pi);
        CHECK(h.phases()[n] <= std::numbers::pi);
    }
}

TEST_CASE("scaling taps scales gains and keeps phases", "[channel][property]")
{
    std::mt19937_64 rng(17);
    const auto pdp = exponential_profile(1e-5);
    const auto grid = FrequencyGrid::centered(5.18e9, 10e6, 16);
    for (int trial = 0; trial < 20; ++trial) {
        const auto ch = sample_channel(pdp, rng);
        std::vector<Tap> scaled = ch.taps();
        for (auto &t : scaled) t.amplitude *= 3.5;
        const auto h = frequency_response(ch, grid);
        const auto hs = frequency_response(MultipathChannel{scaled}, grid);
        for (std::size_t n = 0; n < 16; ++n) {
            CHECK_THAT(hs.gains()[n], WithinRel(3.5 * h.gains()[n], 1e-12));
            CHECK_THAT(std::remainder(hs.phases()[n] - h.phases()[n], 2.0 * std::numbers::pi), WithinAbs(0.0, 1e-9));
        }
    }
}

TEST_CASE("normalization_constant", "[channel]")
{
    CHECK_THAT(normalization_constant(PowerDelayProfile{{{0.0, 1.0}}, 1e-5}), WithinRel(1e-5, 1e-15));
    CHECK_THAT(normalization_constant(PowerDelayProfile{{{0.0, 1.0}, {1e-8, 1.0}}, 2e-5}), WithinRel(1e-5, 1e-15));
    CHECK(normalization_constant(PowerDelayProfile{{{0.0, 0.25}, {1e-8, 0.75}}, 1.0}) == 1.0);
    CHECK_THROWS_AS(normalization_constant(PowerDelayProfile{{{0.0, 0.0}}, 1.0}), std::invalid_argument);
}

TEST_CASE("sample_channel", "[channel]")
{
    SECTION("zero-power entry yields a zero tap")
    {
        const PowerDelayProfile pdp{{{0.0, 1.0}, {10e-9, 0.0}}, 1.0};
        std::mt19937_64 rng(1);
        for (int i = 0; i < 10; ++i) CHECK(sample_channel(pdp, rng).taps()[1].amplitude == 0.0);
    }
    SECTION("deterministic per seed")
    {
        const auto pdp = exponential_profile(1e-5);
        std::mt19937_64 a(42), b(42);
        CHECK(sample_channel(pdp, a) == sample_channel(pdp, b));
    }
    SECTION("tap power matches kappa * p")
    {
        const PowerDelayProfile pdp{{{0.0, 1.0}}, 1.0};
        std::mt19937_64 rng(2024);
        double acc = 0.0;
        constexpr int draws = 100000;
        for (int i = 0; i < draws; ++i) {
            const double a = sample_channel(pdp, rng).taps()[0].amplitude;
            acc += a * a;
        }
        CHECK_THAT(acc / draws, WithinRel(1.0, 0.02));
    }
}

TEST_CASE("average tone power equals the normalization target", "[channel][property]")
{
    const double target = 1e-5;
    const auto pdp = exponential_profile(target);
    const auto grid = FrequencyGrid::centered(5.18e9, 10e6, 8);
    std::mt19937_64 rng(99);
    constexpr int draws = 20000;
    std::vector<double> acc(8, 0.0);
    for (int i = 0; i < draws; ++i) {
        const auto h = frequency_response(sample_channel(pdp, rng), grid);
        for (std::size_t n = 0; n < 8; ++n) acc[n] += h.gains()[n] * h.gains()[n];
    }
    // A_n^2 is exponential with mean target, so the standard error is target / sqrt(draws) ~ 0.7%
    for (double a : acc) CHECK_THAT(a / draws, WithinRel(target, 0.04));
}

TEST_CASE("exponential default profile", "[channel]")
{
    const auto pdp = exponential_profile(1e-5);
    REQUIRE(pdp.entries().size() == 18);
    CHECK(pdp.entries()[0].mean_power == 1.0);
    CHECK_THAT(pdp.entries()[17].delay_s, WithinRel(170e-9, 1e-12));
    CHECK_THAT(pdp.entries()[3].mean_power, WithinRel(std::exp(-1.0), 1e-12));
}
