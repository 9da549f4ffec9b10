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
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "sealsim/analysis.hpp"
#include "sealsim/attack.hpp"
#include "sealsim/linalg.hpp"
#include "sealsim/montecarlo.hpp"
#include "sealsim/report.hpp"
#include "sealsim/rng.hpp"
#include "sealsim/seal.hpp"

// Built-in fixture suite checking the attack family's closed forms, the
// information floor at nu = 1/2 and the fidelity collapse at nu = 1, with
// seeded Monte Carlo replays where a statistical check applies.
namespace sealsim {

struct ClaimsOptions {
    std::uint64_t seed = 42;
    std::uint64_t trials = 100000;
    unsigned workers = 1;
    /// Negative control: negate b in every attack family built by the suite.
    bool flip_b_sign = false;
};

struct ClaimResult {
    int id = 0;
    std::string title;
    bool pass = true;
    std::vector<std::string> details;
};

namespace claims_detail {

inline constexpr std::array<double, 4> kThetaGrid = {0.0, std::numbers::pi / 12.0,
                                                     std::numbers::pi / 6.0, std::numbers::pi / 4.0};
inline constexpr std::size_t kMaxSuiteQubits = 6;

/// Every per-qubit angle assignment from kThetaGrid for m = 1..6 (5460 seals).
inline std::vector<HeSealSpec> he_suite() {
    std::vector<HeSealSpec> suite;
    for (std::size_t m = 1; m <= kMaxSuiteQubits; ++m) {
        std::size_t combos = 1;
        for (std::size_t k = 0; k < m; ++k) {
            combos *= kThetaGrid.size();
        }
        for (std::size_t code = 0; code < combos; ++code) {
            HeSealSpec spec{std::vector<std::uint8_t>(m, 0), std::vector<double>(m)};
            std::size_t rest = code;
            for (std::size_t k = 0; k < m; ++k) {
                spec.thetas[k] = kThetaGrid[rest % kThetaGrid.size()];
                rest /= kThetaGrid.size();
            }
            suite.push_back(std::move(spec));
        }
    }
    return suite;
}

/// Alternating message 1010... of m qubits sharing theta.
inline HeSealSpec alternating_seal(std::size_t m, double theta) {
    HeSealSpec spec = HeSealSpec::uniform(m, theta);
    for (std::size_t k = 0; k < m; ++k) {
        spec.bits[k] = static_cast<std::uint8_t>((k + 1) % 2);
    }
    return spec;
}

inline std::vector<double> nu_grid_11() { return linear_grid(0.0, 1.0, 11); }

inline std::string describe(const HeSealSpec &spec) {
    std::string bits;
    for (auto b : spec.bits) {
        bits += static_cast<char>('0' + b);
    }
    if (std::all_of(spec.thetas.begin(), spec.thetas.end(),
                    [&](double t) { return t == spec.thetas.front(); })) {
        return fmt::format("bits={} theta={}", bits, format_real(spec.thetas.front()));
    }
    std::string thetas;
    for (std::size_t k = 0; k < spec.thetas.size(); ++k) {
        thetas += (k ? "," : "") + format_real(spec.thetas[k]);
    }
    return fmt::format("bits={} thetas=({})", bits, thetas);
}

/// Independent experiment seed for a fixed tag.
inline std::uint64_t experiment_seed(std::uint64_t base, std::uint64_t tag) {
    return SplitMix64::substream(base, tag)();
}

class SuiteRunner {
  public:
    explicit SuiteRunner(const ClaimsOptions &options) : options_(options), suite_(he_suite()) {
        lambdas_.reserve(suite_.size());
        for (const auto &spec : suite_) {
            lambdas_.push_back(lambda_from_he(spec));
        }
    }

    std::vector<ClaimResult> run() {
        return {completeness(),    closed_form(),  flat_floor(),      flat_posterior(),
                escape(),          collapse(),     coin_equivalence(), zero_information(),
                bit_seal(),        cross_construction()};
    }

  private:
    MeasurementFamily family(std::size_t n, double nu) const {
        auto f = chau_family(n, nu);
        if (!options_.flip_b_sign) {
            return f;
        }
        return MeasurementFamily::with_coefficients(n, f.params().a, -f.params().b, nu);
    }

    ExperimentConfig experiment(SealConfig seal, Strategy strategy, std::uint64_t tag) const {
        return {std::move(seal), strategy, options_.trials, experiment_seed(options_.seed, tag),
                options_.workers};
    }

    ClaimResult completeness() const {
        ClaimResult r{1, "POVM completeness of the attack family", true, {}};
        const std::array<std::size_t, 5> dims = {2, 4, 16, 256, 4096};
        const std::array<double, 5> nus = {0.0, 0.25, 0.5, 0.75, 1.0};
        for (auto n : dims) {
            double worst = 0.0;
            double worst_dense = 0.0;
            for (double nu : nus) {
                const auto f = family(n, nu);
                worst = std::max(worst, f.completeness_deviation());
                if (n <= 16) {
                    worst_dense = std::max(worst_dense, f.dense_completeness_deviation());
                }
            }
            const bool ok = worst <= 1e-12 && worst_dense <= 1e-12;
            r.pass = r.pass && ok;
            r.details.push_back(
                n <= 16 ? fmt::format("N={}: max |sum Q^dag Q - I| = {} (dense product {})", n,
                                      format_real(worst), format_real(worst_dense))
                        : fmt::format("N={}: max |sum Q^dag Q - I| = {}", n, format_real(worst)));
        }
        return r;
    }

    ClaimResult closed_form() const {
        ClaimResult r{2, "decode probability closed form matches dense ||Q psi||^2", true, {}};
        const auto grid = nu_grid_11();
        for (std::size_t n : {std::size_t{2}, std::size_t{4}, std::size_t{16}}) {
            auto rng = SplitMix64::substream(options_.seed, 200 + n);
            double worst = 0.0;
            for (int sample = 0; sample < 100; ++sample) {
                std::vector<Complex> amps(n);
                for (auto &x : amps) {
                    x = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
                }
                const auto psi = StateVector::normalized(std::move(amps));
                for (double nu : grid) {
                    const auto f = family(n, nu);
                    const double flat = (1.0 - nu) / static_cast<double>(n);
                    for (std::size_t i = 0; i < n; ++i) {
                        const double closed = flat + nu * std::norm(psi[i]);
                        const double simulated = apply_and_normalize(f.dense(i), psi).probability;
                        worst = std::max(worst, std::abs(closed - simulated));
                    }
                }
            }
            r.pass = r.pass && worst <= 1e-12;
            r.details.push_back(fmt::format("N={}: 100 random rows x 11 nu, max deviation {}", n,
                                            format_real(worst)));
        }
        return r;
    }

    ClaimResult flat_floor() const {
        ClaimResult r{3, "nu=1/2 decode floor 1/(2N)", true, {}};
        std::array<double, kMaxSuiteQubits + 1> margin{};
        margin.fill(1.0);
        for (std::size_t s = 0; s < suite_.size(); ++s) {
            const auto dm = decode_matrix(lambdas_[s], 0.5);
            const double floor = 1.0 / (2.0 * static_cast<double>(dm.dim()));
            const std::size_t m = suite_[s].num_qubits();
            for (std::size_t row = 0; row < dm.dim(); ++row) {
                for (double p : dm.row(row)) {
                    margin[m] = std::min(margin[m], p - floor);
                    if (p < floor - 1e-15) {
                        r.pass = false;
                    }
                }
            }
        }
        for (std::size_t m = 1; m <= kMaxSuiteQubits; ++m) {
            r.details.push_back(fmt::format("m={} (N={}): min(p - 1/(2N)) = {}", m,
                                            std::size_t{1} << m, format_real(margin[m])));
        }
        r.details.push_back(fmt::format("{} seals checked", suite_.size()));
        return r;
    }

    ClaimResult flat_posterior() const {
        ClaimResult r{4, "nu=1/2 flat posterior mass is 1/2 for every decoded value", true, {}};
        double worst = 0.0;
        std::size_t checks = 0;
        for (const auto &lambda : lambdas_) {
            const auto dm = decode_matrix(lambda, 0.5);
            for (std::size_t d = 0; d < dm.dim(); ++d) {
                worst = std::max(worst, std::abs(flat_posterior_mass(dm, d) - 0.5));
                ++checks;
            }
        }
        r.pass = worst <= 1e-12;
        r.details.push_back(fmt::format("{} (seal, decoded) pairs: max |mass - 0.5| = {}", checks,
                                        format_real(worst)));
        return r;
    }

    ClaimResult escape() const {
        ClaimResult r{5, "nu=1/2 escape probability >= 1/2", true, {}};
        double lowest = 1.0;
        for (const auto &lambda : lambdas_) {
            lowest = std::min(lowest, mean_average_fidelity(lambda, 0.5));
        }
        r.pass = lowest >= 0.5;
        r.details.push_back(fmt::format("analytic: min message-averaged fidelity over {} seals = {}",
                                        lambdas_.size(), format_real(lowest)));
        std::uint64_t tag = 500;
        for (std::size_t m = 1; m <= kMaxSuiteQubits; ++m) {
            for (double theta : kThetaGrid) {
                const auto spec = alternating_seal(m, theta);
                const auto config = experiment(spec, ChauStrategy{0.5}, tag++);
                const auto stats = run_experiment(config);
                const double expected = expected_escape_probability(config);
                const bool ok = within_three_sigma(stats.pass_count, stats.trials, expected);
                r.pass = r.pass && ok;
                r.details.push_back(fmt::format(
                    "mc {}: pass rate {} vs analytic {} ({})", describe(spec),
                    format_real(static_cast<double>(stats.pass_count) /
                                static_cast<double>(stats.trials)),
                    format_real(expected), ok ? "within 3 sigma" : "OUTSIDE 3 sigma"));
            }
        }
        return r;
    }

    ClaimResult collapse() const {
        ClaimResult r{6, "nu=1 average fidelity equals sum lambda^4 and falls as 1/N", true, {}};
        double worst = 0.0;
        for (const auto &lambda : lambdas_) {
            for (std::size_t row = 0; row < lambda.dim(); ++row) {
                double quartic = 0.0;
                for (const auto &x : lambda.row(row)) {
                    quartic += std::norm(x) * std::norm(x);
                }
                worst = std::max(worst, std::abs(average_fidelity(lambda.row(row), 1.0) - quartic));
            }
        }
        r.pass = worst <= 1e-12;
        r.details.push_back(
            fmt::format("max |F(nu=1) - sum lambda^4| over suite = {}", format_real(worst)));
        double previous = 2.0;
        for (std::size_t m : {std::size_t{1}, std::size_t{4}, std::size_t{10}}) {
            const auto sealed = he_seal(HeSealSpec::uniform(m, std::numbers::pi / 4.0));
            const double f = average_fidelity(sealed.state.amplitudes(), 1.0);
            const double expected = 1.0 / static_cast<double>(sealed.state.dim());
            const bool ok = std::abs(f - expected) <= 1e-12 && f < previous;
            previous = f;
            r.pass = r.pass && ok;
            r.details.push_back(fmt::format("theta=pi/4, N={}: F = {} (1/N = {})",
                                            sealed.state.dim(), format_real(f),
                                            format_real(expected)));
        }
        return r;
    }

    ClaimResult coin_equivalence() const {
        ClaimResult r{7, "coin-toss(q) decode distribution equals the nu=q attack", true, {}};
        std::size_t mismatches = 0;
        std::size_t compared = 0;
        for (const auto &lambda : lambdas_) {
            for (double q : nu_grid_11()) {
                const auto dm = decode_matrix(lambda, q);
                for (std::size_t row = 0; row < lambda.dim(); ++row) {
                    const auto coin = coin_toss_decode_distribution(lambda.row(row), q);
                    const auto chau = dm.row(row);
                    compared += coin.size();
                    for (std::size_t i = 0; i < coin.size(); ++i) {
                        mismatches += coin[i] != chau[i] ? 1 : 0;
                    }
                }
            }
        }
        r.pass = mismatches == 0;
        r.details.push_back(
            fmt::format("analytic: {} of {} entries differ", mismatches, compared));

        const std::array<HeSealSpec, 2> seals = {HeSealSpec::parse("0", {std::numbers::pi / 6.0}),
                                                 HeSealSpec::parse("101", {std::numbers::pi / 12.0})};
        std::uint64_t tag = 700;
        for (const auto &spec : seals) {
            const auto chau_config = experiment(spec, ChauStrategy{0.5}, tag++);
            const auto coin_config = experiment(spec, CoinTossStrategy{0.5}, tag++);
            const auto expected = expected_decode_row(chau_config);
            const auto chau = chi_square_check(run_experiment(chau_config), expected);
            const auto coin = chi_square_check(run_experiment(coin_config), expected);
            r.pass = r.pass && chau.pass && coin.pass;
            r.details.push_back(fmt::format(
                "mc {}: chi2 attack {} / coin {} (99.9% critical {})", describe(spec),
                format_real(chau.statistic), format_real(coin.statistic),
                format_real(chau.critical)));
            const auto sealed = he_seal(spec);
            r.details.push_back(fmt::format(
                "   average fidelity at 1/2: attack {} / coin {} (reported, not compared)",
                format_real(average_fidelity(sealed.state.amplitudes(), 0.5)),
                format_real(coin_toss_average_fidelity(sealed.state.amplitudes(), 0.5))));
        }
        return r;
    }

    ClaimResult zero_information() const {
        ClaimResult r{8, "mutual information endpoints", true, {}};
        double worst_flat = 0.0;
        for (const auto &lambda : lambdas_) {
            worst_flat = std::max(worst_flat, mutual_information(decode_matrix(lambda, 0.0)));
        }
        double worst_uniform = 0.0;
        for (std::size_t m = 1; m <= kMaxSuiteQubits; ++m) {
            const auto lambda = lambda_from_he(HeSealSpec::uniform(m, std::numbers::pi / 4.0));
            for (double nu : nu_grid_11()) {
                worst_uniform = std::max(worst_uniform, mutual_information(decode_matrix(lambda, nu)));
            }
        }
        double worst_identity = 0.0;
        for (std::size_t n : {2, 4, 8, 16, 64}) {
            const double mi = mutual_information(decode_matrix(LambdaMatrix::identity(n), 1.0));
            worst_identity = std::max(worst_identity, std::abs(mi - std::log2(static_cast<double>(n))));
        }
        r.pass = worst_flat <= 1e-12 && worst_uniform <= 1e-12 && worst_identity <= 1e-12;
        r.details.push_back(fmt::format("nu=0, every suite seal: max MI = {} bits", format_real(worst_flat)));
        r.details.push_back(
            fmt::format("theta=pi/4, m=1..6, 11 nu: max MI = {} bits", format_real(worst_uniform)));
        r.details.push_back(fmt::format("identity, nu=1, N in {{2,4,8,16,64}}: max |MI - log2 N| = {}",
                                        format_real(worst_identity)));
        return r;
    }

    ClaimResult bit_seal() const {
        ClaimResult r{9, "single-bit seal at nu=1/2 keeps beta <= 1/2", true, {}};
        for (double theta : kThetaGrid) {
            const auto point = bit_seal_point(theta, 0.5);
            r.pass = r.pass && point.beta <= 0.5 + 1e-12;
            r.details.push_back(fmt::format("theta={}: alpha={} beta={} alpha+beta={}",
                                            format_real(theta), format_real(point.alpha),
                                            format_real(point.beta),
                                            format_real(point.alpha + point.beta)));
        }
        r.details.push_back("reference bound alpha+beta <= 9/8 = 1.125 (reported, not asserted)");
        return r;
    }

    ClaimResult cross_construction() const {
        ClaimResult r{10, "tensor-product seal equals the lambda-row seal", true, {}};
        double worst = 0.0;
        std::size_t states = 0;
        for (std::size_t s = 0; s < suite_.size(); ++s) {
            for (std::size_t msg = 0; msg < lambdas_[s].dim(); ++msg) {
                const auto direct = he_seal(suite_[s].with_message(msg));
                const auto general = seal_general(lambdas_[s], msg);
                for (std::size_t j = 0; j < direct.state.dim(); ++j) {
                    worst = std::max(worst, std::abs(direct.state[j] - general.state[j]));
                }
                ++states;
            }
        }
        r.pass = worst <= 1e-12;
        r.details.push_back(fmt::format("{} sealed states: max amplitude deviation {}", states,
                                        format_real(worst)));
        return r;
    }

    ClaimsOptions options_;
    std::vector<HeSealSpec> suite_;
    std::vector<LambdaMatrix> lambdas_;
};

inline std::string render(const ClaimResult &r) {
    std::string out = fmt::format("[{}] {:>2} {}\n", r.pass ? "PASS" : "FAIL", r.id, r.title);
    for (const auto &d : r.details) {
        out += "       " + d + "\n";
    }
    return out;
}

} // namespace claims_detail

/// Criteria 1-10 of the suite.
inline std::vector<ClaimResult> run_claim_checks(const ClaimsOptions &options) {
    return claims_detail::SuiteRunner(options).run();
}

/// Full suite: criteria 1-10, then criterion 11 re-runs them with the same
/// options and requires a byte-identical rendering.
inline std::vector<ClaimResult> run_claims(const ClaimsOptions &options) {
    auto results = run_claim_checks(options);
    std::string first;
    for (const auto &r : results) {
        first += claims_detail::render(r);
    }
    std::string second;
    for (const auto &r : run_claim_checks(options)) {
        second += claims_detail::render(r);
    }
    ClaimResult repro{11, "seeded reruns render byte-identical reports", first == second, {}};
    repro.details.push_back(fmt::format("report body {} bytes, rerun {}", first.size(),
                                        first == second ? "identical" : "DIFFERS"));
    results.push_back(std::move(repro));
    return results;
}

inline bool all_passed(const std::vector<ClaimResult> &results) {
    return std::all_of(results.begin(), results.end(), [](const auto &r) { return r.pass; });
}

inline std::string claims_report(const ClaimsOptions &options,
                                 const std::vector<ClaimResult> &results) {
    std::string out = fmt::format("sealsim claims report\ngenerator {} seed {} trials {}{}\n",
                                  SplitMix64::kName, options.seed, options.trials,
                                  options.flip_b_sign ? " [mutation: b sign flipped]" : "");
    std::size_t passed = 0;
    for (const auto &r : results) {
        out += claims_detail::render(r);
        passed += r.pass ? 1 : 0;
    }
    out += fmt::format("summary: {}/{} PASS\n", passed, results.size());
    return out;
}

} // namespace sealsim
