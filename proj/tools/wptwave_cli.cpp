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
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "wptwave/io.hpp"
#include "wptwave/wptwave.hpp"

namespace {

wptwave::ExperimentConfig config_or_default(const std::string &path)
{
    if (path.empty()) {
        wptwave::ExperimentConfig cfg;
        cfg.validate();
        return cfg;
    }
    return wptwave::load_config(path);
}

std::ofstream open_output(const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

int run_sweep_cmd(const std::string &config, const std::string &out_path, const std::string &json_path,
                  std::size_t workers)
{
    auto cfg = config_or_default(config);
    if (workers > 0) cfg.workers = workers;
    const auto result = wptwave::run_sweep(cfg);
    auto out = open_output(out_path);
    wptwave::write_sweep_csv(out, result);
    if (!json_path.empty()) {
        auto js = open_output(json_path);
        js << wptwave::to_json(result).dump(2) << '\n';
    }
    return 0;
}

int run_profile_cmd(const std::string &config, std::uint64_t channel_seed, const std::string &out_path,
                    const std::string &channel_out)
{
    const auto cfg = config_or_default(config);
    const auto grid = wptwave::FrequencyGrid::centered(cfg.center_hz, cfg.bandwidth_hz, cfg.profile_n_tones);
    wptwave::MultipathChannel channel = [&] {
        if (cfg.fixed_channel) return wptwave::MultipathChannel{*cfg.fixed_channel};
        std::mt19937_64 rng(wptwave::detail::splitmix64(channel_seed));
        return wptwave::sample_channel(cfg.power_delay_profile(), rng);
    }();
    const auto response = wptwave::frequency_response(channel, grid);
    const auto table = wptwave::emit_waveform_profile(cfg, response, grid, cfg.profile_strategies);
    auto out = open_output(out_path);
    wptwave::write_profile_csv(out, table);
    if (!channel_out.empty()) {
        auto js = open_output(channel_out);
        js << wptwave::to_json(channel).dump(2) << '\n';
    }
    return 0;
}

int run_validate_cmd(std::size_t instances, std::uint64_t seed)
{
    const auto report = wptwave::oracle_self_test(instances, seed);
    std::cout << "oracle equivalence: " << report.instances << " instances, max relative error "
              << report.max_relative_error << (report.passed ? " PASS" : " FAIL") << '\n';
    return report.passed ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Channel-adaptive multisine waveform design for wireless power transfer"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    std::string json_out;
    std::string channel_out;
    std::size_t workers = 0;
    std::uint64_t channel_seed = 0;
    std::size_t instances = 200;
    std::uint64_t seed = 7;

    auto *sweep = app.add_subcommand("sweep", "Monte Carlo sweep of average z_DC over N and strategies");
    sweep->add_option("--config", config, "JSON experiment config (defaults when omitted)")->check(CLI::ExistingFile);
    sweep->add_option("--out", out, "CSV output path")->required();
    sweep->add_option("--json", json_out, "optional JSON mirror of the CSV");
    sweep->add_option("--workers", workers, "worker threads (overrides the config)");

    auto *profile = app.add_subcommand("profile", "per-tone channel gain and waveform amplitudes on one channel");
    profile->add_option("--config", config, "JSON experiment config (defaults when omitted)")->check(CLI::ExistingFile);
    profile->add_option("--channel-seed", channel_seed, "seed of the channel draw")->required();
    profile->add_option("--out", out, "CSV output path")->required();
    profile->add_option("--channel-out", channel_out, "optional JSON dump of the channel taps");

    auto *validate = app.add_subcommand("validate", "check z_DC against the time-domain oracle");
    validate->add_option("--instances", instances, "number of random instances");
    validate->add_option("--seed", seed, "seed of the random instances");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) return run_sweep_cmd(config, out, json_out, workers);
        if (*profile) return run_profile_cmd(config, channel_seed, out, channel_out);
        if (*validate) return run_validate_cmd(instances, seed);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
