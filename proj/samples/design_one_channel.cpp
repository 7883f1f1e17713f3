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
// Draws one channel at -20 dBm average received power and prints the z_DC of
// each waveform strategy for N = 16 tones around 5.18 GHz.

#include <cstdio>
#include <random>

#include "wptwave/wptwave.hpp"

int main()
{
    using namespace wptwave;

    const auto grid = FrequencyGrid::centered(5.18e9, 10e6, 16);
    const auto pdp = exponential_profile(dbm_to_watts(-20.0));
    std::mt19937_64 rng(42);
    const auto response = frequency_response(sample_channel(pdp, rng), grid);

    const PowerBudget budget{1.0};
    const DiodeParams diode{};
    const auto beta = optimize_beta(response, budget, diode);

    std::printf("beta* = %.3f\n", beta.beta);
    std::printf("UP        %.4e\n", z_dc(design_up(grid, budget), response, diode));
    std::printf("MF        %.4e\n", z_dc(design_mf(response, budget), response, diode));
    std::printf("SMF(3)    %.4e\n", z_dc(design_smf(response, budget, 3.0), response, diode));
    std::printf("SMF(b*)   %.4e\n", z_dc(design_smf(response, budget, beta.beta), response, diode));
    std::printf("OPT       %.4e\n", z_dc(design_opt_numeric(response, budget, diode), response, diode));
}
