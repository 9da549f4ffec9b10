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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <optional>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "sealsim/analysis.hpp"
#include "sealsim/attack.hpp"
#include "sealsim/errors.hpp"
#include "sealsim/rng.hpp"
#include "sealsim/seal.hpp"

namespace sealsim {

/// Explicit lambda matrix plus the index of the message being sealed.
struct ExplicitSeal {
    LambdaMatrix lambda;
    std::size_t message = 0;
};

struct ChauStrategy {
    double nu = 0.0;
};

struct CoinTossStrategy {
    double q = 0.0;
};

using SealConfig = std::variant<HeSealSpec, ExplicitSeal>;
using Strategy = std::variant<ChauStrategy, CoinTossStrategy>;

struct ExperimentConfig {
    SealConfig seal;
    Strategy strategy;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    /// Worker threads; results do not depend on this.
    unsigned workers = 1;
};

struct EmpiricalStats {
    std::vector<std::uint64_t> decode_counts;
    std::uint64_t pass_count = 0;
    std::uint64_t trials = 0;

    friend bool operator==(const EmpiricalStats &, const EmpiricalStats &) = default;
};

inline std::size_t seal_dim(const SealConfig &seal) {
    return std::visit(
        [](const auto &s) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, HeSealSpec>) {
                return s.dim();
            } else {
                return s.lambda.dim();
            }
        },
        seal);
}

inline SealedState make_sealed_state(const SealConfig &seal) {
    return std::visit(
        [](const auto &s) -> SealedState {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, HeSealSpec>) {
                return he_seal(s);
            } else {
                return seal_general(s.lambda, s.message);
            }
        },
        seal);
}

/// Analytic decode row of the configured seal and strategy.
inline std::vector<double> expected_decode_row(const ExperimentConfig &config) {
    const auto sealed = make_sealed_state(config.seal);
    const auto amps = sealed.state.amplitudes();
    if (const auto *chau = std::get_if<ChauStrategy>(&config.strategy)) {
        require_nu(chau->nu);
        const double flat = (1.0 - chau->nu) / static_cast<double>(amps.size());
        std::vector<double> row(amps.size());
        for (std::size_t i = 0; i < amps.size(); ++i) {
            row[i] = flat + chau->nu * std::norm(amps[i]);
        }
        return row;
    }
    return coin_toss_decode_distribution(amps, std::get<CoinTossStrategy>(config.strategy).q);
}

/// Analytic verifier pass probability of the configured seal and strategy.
inline double expected_escape_probability(const ExperimentConfig &config) {
    const auto sealed = make_sealed_state(config.seal);
    if (const auto *chau = std::get_if<ChauStrategy>(&config.strategy)) {
        return average_fidelity(sealed.state.amplitudes(), chau->nu);
    }
    return coin_toss_average_fidelity(sealed.state.amplitudes(),
                                      std::get<CoinTossStrategy>(config.strategy).q);
}

namespace detail {
inline EmpiricalStats run_rounds(const SealedState &sealed, const ExperimentConfig &config,
                                 const std::optional<MeasurementFamily> &family,
                                 std::uint64_t first, std::uint64_t last) {
    EmpiricalStats stats{std::vector<std::uint64_t>(sealed.state.dim(), 0), 0, last - first};
    for (std::uint64_t round = first; round < last; ++round) {
        auto rng = SplitMix64::substream(config.seed, round);
        const AttackOutcome outcome =
            family ? run_chau_attack(sealed, *family, rng)
                   : coin_toss_attack(sealed, std::get<CoinTossStrategy>(config.strategy).q, rng);
        ++stats.decode_counts[*outcome.decoded];
        if (verify(sealed, outcome.post_state, rng)) {
            ++stats.pass_count;
        }
    }
    return stats;
}
} // namespace detail

/**
 * Replays seal -> attack -> verify for config.trials rounds. Round r draws
 * from SplitMix64::substream(seed, r), and the per-worker tallies are integer
 * sums, so the result is bit-identical for any worker count.
 */
inline EmpiricalStats run_experiment(const ExperimentConfig &config) {
    if (config.trials == 0) {
        throw UsageError("trials must be at least 1");
    }
    require_dim_within_cap(seal_dim(config.seal));
    const auto sealed = make_sealed_state(config.seal);

    std::optional<MeasurementFamily> family;
    if (const auto *chau = std::get_if<ChauStrategy>(&config.strategy)) {
        family = chau_family(sealed.state.dim(), chau->nu);
    } else {
        const double q = std::get<CoinTossStrategy>(config.strategy).q;
        if (!(q >= 0.0 && q <= 1.0)) {
            throw UsageError("coin-toss read probability must lie in [0, 1]");
        }
    }

    const std::uint64_t workers =
        std::clamp<std::uint64_t>(config.workers, 1, std::max<std::uint64_t>(1, config.trials));
    if (workers == 1) {
        return detail::run_rounds(sealed, config, family, 0, config.trials);
    }

    std::vector<EmpiricalStats> partial(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t first = config.trials * w / workers;
        const std::uint64_t last = config.trials * (w + 1) / workers;
        threads.emplace_back([&, w, first, last] {
            partial[w] = detail::run_rounds(sealed, config, family, first, last);
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    EmpiricalStats total{std::vector<std::uint64_t>(sealed.state.dim(), 0), 0, 0};
    for (const auto &p : partial) {
        for (std::size_t i = 0; i < p.decode_counts.size(); ++i) {
            total.decode_counts[i] += p.decode_counts[i];
        }
        total.pass_count += p.pass_count;
        total.trials += p.trials;
    }
    return total;
}

/// 99.9th percentile of the chi-square distribution with \p dof degrees of
/// freedom.
inline double chi_square_critical(std::size_t dof) {
    if (dof == 0) {
        throw UsageError("chi-square needs at least one degree of freedom");
    }
    return boost::math::quantile(boost::math::chi_squared(static_cast<double>(dof)), 0.999);
}

struct ChiSquareResult {
    double statistic = 0.0;
    double critical = 0.0;
    bool pass = false;
    /// A cell with zero expected probability received counts.
    bool impossible_count = false;
};

/// Pearson goodness-of-fit against \p expected, N-1 degrees of freedom,
/// gated at the 99.9% level.
inline ChiSquareResult chi_square_check(const EmpiricalStats &stats,
                                        std::span<const double> expected) {
    if (expected.size() != stats.decode_counts.size() || expected.size() < 2) {
        throw UsageError("expected row must match the histogram length (>= 2)");
    }
    double total = 0.0;
    for (double p : expected) {
        if (p < 0.0) {
            throw UsageError("expected probabilities must be nonnegative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw UsageError("expected probabilities must sum to 1");
    }

    ChiSquareResult result;
    const auto n = static_cast<double>(stats.trials);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const auto observed = static_cast<double>(stats.decode_counts[i]);
        const double e = n * expected[i];
        if (e == 0.0) {
            if (observed > 0.0) {
                result.impossible_count = true;
            }
            continue;
        }
        result.statistic += (observed - e) * (observed - e) / e;
    }
    result.critical = chi_square_critical(expected.size() - 1);
    result.pass = !result.impossible_count && result.statistic < result.critical;
    return result;
}

/// |successes/trials - p| <= 3 sigma with sigma = sqrt(p (1 - p) / trials).
/// A 1e-12 slack absorbs rounding when p is 0 or 1.
inline bool within_three_sigma(std::uint64_t successes, std::uint64_t trials, double p) {
    const auto n = static_cast<double>(trials);
    const double sigma = std::sqrt(std::max(0.0, p * (1.0 - p)) / n);
    return std::abs(static_cast<double>(successes) / n - p) <= 3.0 * sigma + 1e-12;
}

} // namespace sealsim
