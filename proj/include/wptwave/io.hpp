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
#ifndef WPTWAVE_IO_HPP
#define WPTWAVE_IO_HPP

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "channel.hpp"
#include "harness.hpp"
#include "signal_model.hpp"

namespace wptwave {

using nlohmann::json;

// ---- JSON ------------------------------------------------------------------

inline json to_json(const Waveform &w)
{
    return json{{"amplitudes", std::vector<double>(w.amplitudes().begin(), w.amplitudes().end())},
                {"phases", std::vector<double>(w.phases().begin(), w.phases().end())}};
}

inline Waveform waveform_from_json(const json &j)
{
    return {j.at("amplitudes").get<std::vector<double>>(), j.at("phases").get<std::vector<double>>()};
}

inline json taps_to_json(const std::vector<Tap> &taps)
{
    json arr = json::array();
    for (const Tap &t : taps)
        arr.push_back({{"delay_ns", t.delay_s * 1e9}, {"amplitude", t.amplitude}, {"phase_rad", t.phase_rad}});
    return arr;
}

inline std::vector<Tap> taps_from_json(const json &arr)
{
    std::vector<Tap> taps;
    for (const json &t : arr)
        taps.push_back({t.at("delay_ns").get<double>() * 1e-9, t.at("amplitude").get<double>(),
                        t.value("phase_rad", 0.0)});
    return taps;
}

inline json to_json(const MultipathChannel &ch) { return json{{"taps", taps_to_json(ch.taps())}}; }

inline MultipathChannel channel_from_json(const json &j) { return MultipathChannel{taps_from_json(j.at("taps"))}; }

namespace detail {

inline void reject_unknown_keys(const json &j, std::initializer_list<std::string_view> known, const char *where)
{
    if (!j.is_object()) throw std::invalid_argument(std::string(where) + ": expected a JSON object");
    for (const auto &[key, value] : j.items()) {
        bool ok = false;
        for (auto k : known) ok = ok || key == k;
        if (!ok) throw std::invalid_argument(std::string(where) + ": unknown key '" + key + "'");
    }
}

template <class T>
void read_if(const json &j, const char *key, T &out)
{
    if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace detail

/// Builds an ExperimentConfig from JSON. Missing fields keep their defaults,
/// so "{}" is the default experiment; unknown keys are rejected.
inline ExperimentConfig config_from_json(const json &j)
{
    detail::reject_unknown_keys(j,
                                {"center_hz", "bandwidth_hz", "n_values", "strategies", "received_power_dbm",
                                 "transmit_power_w", "pdp", "fixed_channel", "n_realizations", "seed", "workers",
                                 "diode", "beta_search", "opt_search", "profile_n_tones", "profile_strategies"},
                                "config");
    ExperimentConfig cfg;
    detail::read_if(j, "center_hz", cfg.center_hz);
    detail::read_if(j, "bandwidth_hz", cfg.bandwidth_hz);
    detail::read_if(j, "n_values", cfg.n_values);
    detail::read_if(j, "strategies", cfg.strategies);
    detail::read_if(j, "received_power_dbm", cfg.received_power_dbm);
    detail::read_if(j, "transmit_power_w", cfg.transmit_power_w);
    detail::read_if(j, "n_realizations", cfg.n_realizations);
    detail::read_if(j, "seed", cfg.seed);
    detail::read_if(j, "workers", cfg.workers);
    detail::read_if(j, "profile_n_tones", cfg.profile_n_tones);
    detail::read_if(j, "profile_strategies", cfg.profile_strategies);

    if (j.contains("pdp")) {
        cfg.pdp.clear();
        for (const json &e : j.at("pdp")) {
            detail::reject_unknown_keys(e, {"delay_ns", "power"}, "config.pdp");
            cfg.pdp.push_back({e.at("delay_ns").get<double>() * 1e-9, e.at("power").get<double>()});
        }
    }
    if (j.contains("fixed_channel")) cfg.fixed_channel = taps_from_json(j.at("fixed_channel"));
    if (j.contains("diode")) {
        const json &d = j.at("diode");
        detail::reject_unknown_keys(d, {"i_s", "ideality", "v_t", "r_ant", "k2", "k4"}, "config.diode");
        detail::read_if(d, "i_s", cfg.diode.i_s);
        detail::read_if(d, "ideality", cfg.diode.ideality);
        detail::read_if(d, "v_t", cfg.diode.v_t);
        detail::read_if(d, "r_ant", cfg.diode.r_ant);
        if (d.contains("k2")) cfg.diode.k2_override = d.at("k2").get<double>();
        if (d.contains("k4")) cfg.diode.k4_override = d.at("k4").get<double>();
    }
    if (j.contains("beta_search")) {
        const json &b = j.at("beta_search");
        detail::reject_unknown_keys(b, {"beta_min", "beta_max", "tolerance", "max_iterations"}, "config.beta_search");
        detail::read_if(b, "beta_min", cfg.beta_search.beta_min);
        detail::read_if(b, "beta_max", cfg.beta_search.beta_max);
        detail::read_if(b, "tolerance", cfg.beta_search.tolerance);
        detail::read_if(b, "max_iterations", cfg.beta_search.max_iterations);
    }
    if (j.contains("opt_search")) {
        const json &o = j.at("opt_search");
        detail::reject_unknown_keys(o, {"step_init", "max_iterations", "restarts", "convergence_tol", "seed"},
                                    "config.opt_search");
        detail::read_if(o, "step_init", cfg.opt_search.step_init);
        detail::read_if(o, "max_iterations", cfg.opt_search.max_iterations);
        detail::read_if(o, "restarts", cfg.opt_search.restarts);
        detail::read_if(o, "convergence_tol", cfg.opt_search.convergence_tol);
        detail::read_if(o, "seed", cfg.opt_search.seed);
    }
    cfg.validate();
    return cfg;
}

inline ExperimentConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error &e) {
        throw std::invalid_argument("config '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

// ---- CSV -------------------------------------------------------------------

namespace detail {

inline std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::vector<std::string> split_csv_line(const std::string &line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

template <class T>
T parse_number(const std::string &s, const char *what)
{
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("csv: bad ") + what + " '" + s + "'");
    return value;
}

} // namespace detail

inline constexpr std::string_view sweep_csv_header = "N,strategy,mean_zdc,stderr,mean_beta,realizations,seed";

// Doubles are written with 17 significant digits so parse_sweep_csv restores them exactly.
inline void write_sweep_csv(std::ostream &out, const SweepResult &result)
{
    out << sweep_csv_header << '\n';
    for (const auto &r : result.rows) {
        out << r.n_tones << ',' << r.strategy << ',' << detail::format_double(r.mean_zdc) << ','
            << detail::format_double(r.stderr_zdc) << ',' << (r.mean_beta ? detail::format_double(*r.mean_beta) : "")
            << ',' << r.realizations << ',' << r.seed << '\n';
    }
}

inline SweepResult parse_sweep_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != sweep_csv_header) throw std::invalid_argument("csv: missing or bad header");
    SweepResult result;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 7) throw std::invalid_argument("csv: expected 7 fields in '" + line + "'");
        SweepRow row;
        row.n_tones = detail::parse_number<std::size_t>(f[0], "N");
        row.strategy = f[1];
        row.mean_zdc = detail::parse_number<double>(f[2], "mean_zdc");
        row.stderr_zdc = detail::parse_number<double>(f[3], "stderr");
        if (!f[4].empty()) row.mean_beta = detail::parse_number<double>(f[4], "mean_beta");
        row.realizations = detail::parse_number<std::size_t>(f[5], "realizations");
        row.seed = detail::parse_number<std::uint64_t>(f[6], "seed");
        result.rows.push_back(std::move(row));
    }
    return result;
}

inline json to_json(const SweepResult &result)
{
    json rows = json::array();
    for (const auto &r : result.rows) {
        json row{{"N", r.n_tones},          {"strategy", r.strategy},         {"mean_zdc", r.mean_zdc},
                 {"stderr", r.stderr_zdc},  {"realizations", r.realizations}, {"seed", r.seed}};
        row["mean_beta"] = r.mean_beta ? json(*r.mean_beta) : json(nullptr);
        rows.push_back(std::move(row));
    }
    return json{{"rows", rows}};
}

// Columns: f_hz, gain, then one amplitude column per strategy.
inline void write_profile_csv(std::ostream &out, const ProfileTable &table)
{
    out << "f_hz,gain";
    for (const auto &s : table.strategies) out << ',' << s;
    out << '\n';
    for (std::size_t n = 0; n < table.frequencies.size(); ++n) {
        out << detail::format_double(table.frequencies[n]) << ',' << detail::format_double(table.gains[n]);
        for (const auto &col : table.amplitudes) out << ',' << detail::format_double(col[n]);
        out << '\n';
    }
}

} // namespace wptwave

#endif
