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
// sealsim: decode matrices, tradeoff sweeps, Monte Carlo validation and the
// claims suite for string seals under the a*I + b*|i><i| attack family.
//
// Exit codes: 0 success, 1 claim/validation failure, 2 usage error,
// 3 resource error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sealsim/sealsim.hpp"

namespace {

using namespace sealsim;

constexpr int kExitOk = 0;
constexpr int kExitClaimFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Flags {
    std::string bits;
    std::string theta;
    std::string thetas;
    std::string lambda_file;
    std::size_t message = 0;
    std::optional<double> nu;
    std::optional<double> coin_q;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 42;
    std::string grid = "0:1:21";
    std::string format; // empty: per-command default
    std::string out;
    unsigned workers = 1;
    bool mutate_b_sign = false;
};

std::vector<double> parse_reals(const std::string &text, const char *what) {
    std::vector<double> values;
    std::stringstream stream(text);
    stream.imbue(std::locale::classic());
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::istringstream one(item);
        one.imbue(std::locale::classic());
        double v = 0.0;
        if (!(one >> v) || !(one >> std::ws).eof()) {
            throw UsageError(std::string("cannot parse ") + what + " value '" + item + "'");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw UsageError(std::string("empty ") + what + " list");
    }
    return values;
}

/// "lo:hi:points" or a comma list.
std::vector<double> parse_grid(const std::string &text) {
    if (text.find(':') == std::string::npos) {
        return parse_reals(text, "grid");
    }
    std::string spec = text;
    for (auto &ch : spec) {
        if (ch == ':') {
            ch = ',';
        }
    }
    const auto parts = parse_reals(spec, "grid");
    if (parts.size() != 3 || parts[2] < 1 || parts[2] != static_cast<double>(static_cast<std::size_t>(parts[2]))) {
        throw UsageError("grid must be 'lo:hi:points' or a comma list");
    }
    return linear_grid(parts[0], parts[1], static_cast<std::size_t>(parts[2]));
}

std::optional<HeSealSpec> he_spec(const Flags &f) {
    const bool have_bits = !f.bits.empty();
    const bool have_file = !f.lambda_file.empty();
    if (have_bits == have_file) {
        throw UsageError("give exactly one seal source: --bits or --lambda-file");
    }
    if (!have_bits) {
        if (!f.theta.empty() || !f.thetas.empty()) {
            throw UsageError("--theta/--thetas apply only to --bits seals");
        }
        return std::nullopt;
    }
    if (f.theta.empty() == f.thetas.empty()) {
        throw UsageError("--bits needs exactly one of --theta or --thetas");
    }
    auto thetas = parse_reals(f.theta.empty() ? f.thetas : f.theta, "theta");
    if (!f.thetas.empty() && thetas.size() != f.bits.size()) {
        throw UsageError("--thetas needs one angle per bit");
    }
    auto spec = HeSealSpec::parse(f.bits, std::move(thetas));
    require_dim_within_cap(spec.dim());
    return spec;
}

LambdaMatrix seal_lambda(const Flags &f) {
    if (auto spec = he_spec(f)) {
        return lambda_from_he(*spec);
    }
    return load_lambda_file(f.lambda_file);
}

SealConfig seal_config(const Flags &f) {
    if (auto spec = he_spec(f)) {
        return *spec;
    }
    auto lambda = load_lambda_file(f.lambda_file);
    if (f.message >= lambda.dim()) {
        throw UsageError("--message out of range");
    }
    return ExplicitSeal{std::move(lambda), f.message};
}

Strategy strategy(const Flags &f) {
    if (f.nu.has_value() == f.coin_q.has_value()) {
        throw UsageError("give exactly one strategy: --nu or --coin-q");
    }
    if (f.nu) {
        require_nu(*f.nu);
        return ChauStrategy{*f.nu};
    }
    if (!(*f.coin_q >= 0.0 && *f.coin_q <= 1.0)) {
        throw UsageError("--coin-q must lie in [0, 1]");
    }
    return CoinTossStrategy{*f.coin_q};
}

bool want_json(const Flags &f, bool json_by_default) {
    return f.format.empty() ? json_by_default : f.format == "json";
}

void emit(const Flags &f, const std::string &text) {
    if (f.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream file(f.out, std::ios::binary);
    if (!file) {
        throw UsageError("cannot open output file: " + f.out);
    }
    file << text;
}

int cmd_decode_matrix(const Flags &f) {
    // Both strategies share one decode matrix; --coin-q q is read as nu = q.
    const auto strat = strategy(f);
    const double nu = std::holds_alternative<ChauStrategy>(strat)
                          ? std::get<ChauStrategy>(strat).nu
                          : std::get<CoinTossStrategy>(strat).q;
    const auto dm = decode_matrix(seal_lambda(f), nu);
    emit(f, want_json(f, false) ? decode_matrix_json(dm).dump(2) + "\n" : decode_matrix_csv(dm));
    return kExitOk;
}

int cmd_sweep(const Flags &f) {
    if (f.nu || f.coin_q) {
        throw UsageError("sweep takes --grid, not --nu/--coin-q");
    }
    const auto grid = parse_grid(f.grid);
    const auto points = tradeoff_sweep(seal_lambda(f), grid);
    emit(f, want_json(f, false) ? sweep_json(points).dump(2) + "\n" : sweep_csv(points));
    return kExitOk;
}

int cmd_mc_validate(const Flags &f) {
    const ExperimentConfig config{seal_config(f), strategy(f), f.trials, f.seed, f.workers};
    if (config.trials == 0) {
        throw UsageError("--trials must be at least 1");
    }
    const auto stats = run_experiment(config);
    const auto expected = expected_decode_row(config);
    const double escape = expected_escape_probability(config);
    const auto chi = chi_square_check(stats, expected);
    const bool escape_ok = within_three_sigma(stats.pass_count, stats.trials, escape);

    if (want_json(f, true)) {
        auto doc = stats_json(config, stats);
        doc["expected_decode"] = expected;
        doc["chi_square"] = {{"statistic", chi.statistic},
                             {"critical_999", chi.critical},
                             {"pass", chi.pass}};
        doc["escape"] = {{"analytic", escape},
                         {"empirical", static_cast<double>(stats.pass_count) /
                                           static_cast<double>(stats.trials)},
                         {"within_3_sigma", escape_ok}};
        emit(f, doc.dump(2) + "\n");
    } else {
        std::string out = "decoded,count,expected_prob\n";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            out += std::to_string(i) + "," + std::to_string(stats.decode_counts[i]) + "," +
                   format_real(expected[i]) + "\n";
        }
        emit(f, out);
    }
    return chi.pass && escape_ok ? kExitOk : kExitClaimFailure;
}

int cmd_claims(const Flags &f) {
    ClaimsOptions options;
    options.seed = f.seed;
    options.trials = f.trials;
    options.workers = f.workers;
    options.flip_b_sign = f.mutate_b_sign;
    const auto results = run_claims(options);
    emit(f, claims_report(options, results));
    return all_passed(results) ? kExitOk : kExitClaimFailure;
}

void add_seal_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--bits", f.bits, "Sealed message as a 0/1 string (first bit most significant)");
    cmd->add_option("--theta", f.theta, "Seal angle in radians, shared by all qubits (or a comma list)");
    cmd->add_option("--thetas", f.thetas, "Comma-separated per-qubit seal angles in radians");
    cmd->add_option("--lambda-file", f.lambda_file, "JSON lambda matrix {dim, lambda:[[[re,im],...],...]}");
}

void add_output_flags(CLI::App *cmd, Flags &f) {
    cmd->add_option("--format", f.format, "Output format (csv or json)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", f.out, "Write output to this file instead of stdout");
}

} // namespace

int main(int argc, char **argv) {
    Flags f;
    CLI::App app{"sealsim - string seal attack simulator"};
    app.require_subcommand(1);

    auto *decode = app.add_subcommand("decode-matrix", "Print the N x N decode matrix and row sums");
    add_seal_flags(decode, f);
    decode->add_option("--nu", f.nu, "Attack tradeoff parameter in [0, 1]");
    decode->add_option("--coin-q", f.coin_q, "Coin-toss read probability in [0, 1]");
    add_output_flags(decode, f);

    auto *sweep = app.add_subcommand("sweep", "Tradeoff curve over a nu grid");
    add_seal_flags(sweep, f);
    sweep->add_option("--grid", f.grid, "'lo:hi:points' or comma list of nu values")
        ->capture_default_str();
    add_output_flags(sweep, f);

    auto *mc = app.add_subcommand("mc-validate", "Seeded seal/attack/verify replay vs closed forms");
    add_seal_flags(mc, f);
    mc->add_option("--message", f.message, "Sealed message index for --lambda-file seals");
    mc->add_option("--nu", f.nu, "Attack tradeoff parameter in [0, 1]");
    mc->add_option("--coin-q", f.coin_q, "Coin-toss read probability in [0, 1]");
    mc->add_option("--trials", f.trials, "Number of rounds")->capture_default_str();
    mc->add_option("--seed", f.seed, "Base seed")->capture_default_str();
    mc->add_option("--workers", f.workers, "Worker threads (output is independent of this)")
        ->check(CLI::PositiveNumber);
    add_output_flags(mc, f);

    auto *claims = app.add_subcommand("claims", "Run the built-in claims suite");
    claims->add_option("--seed", f.seed, "Base seed")->capture_default_str();
    claims->add_option("--trials", f.trials, "Monte Carlo rounds per experiment")
        ->capture_default_str();
    claims->add_option("--workers", f.workers, "Worker threads (output is independent of this)")
        ->check(CLI::PositiveNumber);
    claims->add_option("--out", f.out, "Write the report to this file instead of stdout");
    claims->add_flag("--mutate-b-sign", f.mutate_b_sign,
                     "Negative control: flip the sign of b in the attack family");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (decode->parsed()) {
            return cmd_decode_matrix(f);
        }
        if (sweep->parsed()) {
            return cmd_sweep(f);
        }
        if (mc->parsed()) {
            return cmd_mc_validate(f);
        }
        return cmd_claims(f);
    } catch (const ResourceError &e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitResource;
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    }
}
