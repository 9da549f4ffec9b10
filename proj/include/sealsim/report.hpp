// Copyright 2026 The sealsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "sealsim/analysis.hpp"
#include "sealsim/montecarlo.hpp"
#include "sealsim/rng.hpp"

// CSV and JSON renderings. Numbers in CSV use 12 significant digits with a
// dot decimal separator regardless of locale; lines end in LF.
namespace sealsim {

inline std::string format_real(double x) {
    if (x == 0.0) {
        x = 0.0; // drop the sign of -0
    }
    return fmt::format("{:.12g}", x);
}

inline constexpr std::string_view kSweepCsvHeader = "nu,mi_bits,guess_prob,escape_prob,flat_mass";

inline std::string sweep_csv(std::span<const TradeoffPoint> points) {
    std::string out{kSweepCsvHeader};
    out += '\n';
    for (const auto &p : points) {
        out += fmt::format("{},{},{},{},{}\n", format_real(p.nu), format_real(p.mutual_information),
                           format_real(p.guess_probability), format_real(p.escape_probability),
                           format_real(p.flat_mass));
    }
    return out;
}

inline nlohmann::json sweep_json(std::span<const TradeoffPoint> points) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &p : points) {
        rows.push_back({{"nu", p.nu},
                        {"mi_bits", p.mutual_information},
                        {"guess_prob", p.guess_probability},
                        {"escape_prob", p.escape_probability},
                        {"flat_mass", p.flat_mass}});
    }
    return rows;
}

/// Header "sealed,d0,...,d{N-1},row_sum" followed by one line per sealed
/// message.
inline std::string decode_matrix_csv(const DecodeMatrix &dm) {
    std::string out = "sealed";
    for (std::size_t c = 0; c < dm.dim(); ++c) {
        out += fmt::format(",d{}", c);
    }
    out += ",row_sum\n";
    const auto sums = dm.row_sums();
    for (std::size_t r = 0; r < dm.dim(); ++r) {
        out += std::to_string(r);
        for (double p : dm.row(r)) {
            out += ',';
            out += format_real(p);
        }
        out += ',';
        out += format_real(sums[r]);
        out += '\n';
    }
    return out;
}

inline nlohmann::json decode_matrix_json(const DecodeMatrix &dm) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < dm.dim(); ++r) {
        rows.push_back(std::vector<double>(dm.row(r).begin(), dm.row(r).end()));
    }
    return {{"dim", dm.dim()}, {"nu", dm.nu()}, {"matrix", std::move(rows)},
            {"row_sums", dm.row_sums()}};
}

inline nlohmann::json config_json(const ExperimentConfig &config) {
    nlohmann::json seal;
    if (const auto *he = std::get_if<HeSealSpec>(&config.seal)) {
        std::string bits;
        for (auto b : he->bits) {
            bits += static_cast<char>('0' + b);
        }
        seal = {{"kind", "he"}, {"bits", bits}, {"thetas", he->thetas}, {"message", he->message()}};
    } else {
        const auto &ex = std::get<ExplicitSeal>(config.seal);
        seal = {{"kind", "lambda"}, {"dim", ex.lambda.dim()}, {"message", ex.message}};
    }
    nlohmann::json strategy;
    if (const auto *chau = std::get_if<ChauStrategy>(&config.strategy)) {
        strategy = {{"kind", "chau"}, {"nu", chau->nu}};
    } else {
        strategy = {{"kind", "coin-toss"}, {"q", std::get<CoinTossStrategy>(config.strategy).q}};
    }
    return {{"seal", std::move(seal)},
            {"strategy", std::move(strategy)},
            {"trials", config.trials},
            {"seed", config.seed},
            {"generator", std::string(SplitMix64::kName)}};
}

/// {config: {..., seed, generator}, decode_counts: [...], pass_count, trials}
inline nlohmann::json stats_json(const ExperimentConfig &config, const EmpiricalStats &stats) {
    return {{"config", config_json(config)},
            {"decode_counts", stats.decode_counts},
            {"pass_count", stats.pass_count},
            {"trials", stats.trials}};
}

} // namespace sealsim
