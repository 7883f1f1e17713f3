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
#ifndef WPTWAVE_CHANNEL_RESPONSE_HPP
#define WPTWAVE_CHANNEL_RESPONSE_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wptwave {

// Per-tone frequency response h_n = A_n exp(j psi_bar_n).
class ChannelResponse {
public:
    ChannelResponse() = default;

    ChannelResponse(std::vector<double> gains, std::vector<double> phases)
        : gains_(std::move(gains)), phases_(std::move(phases))
    {
        if (gains_.size() != phases_.size())
            throw std::invalid_argument("ChannelResponse: gains and phases differ in length");
        for (double a : gains_)
            if (!(a >= 0.0) || !std::isfinite(a))
                throw std::invalid_argument("ChannelResponse: gains must be finite and nonnegative");
    }

    // Frequency-flat response with the given gains and zero phase.
    static ChannelResponse from_gains(std::vector<double> gains)
    {
        std::vector<double> phases(gains.size(), 0.0);
        return {std::move(gains), std::move(phases)};
    }

    std::size_t size() const noexcept { return gains_.size(); }
    std::span<const double> gains() const noexcept { return gains_; }
    std::span<const double> phases() const noexcept { return phases_; }

    double peak_gain() const noexcept
    {
        double m = 0.0;
        for (double a : gains_) m = a > m ? a : m;
        return m;
    }

    friend bool operator==(const ChannelResponse &, const ChannelResponse &) = default;

private:
    std::vector<double> gains_;
    std::vector<double> phases_;
};

} // namespace wptwave

#endif
