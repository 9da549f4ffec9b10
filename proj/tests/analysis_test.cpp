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
#include "sealsim/analysis.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "sealsim/attack.hpp"
#include "sealsim/seal.hpp"
#include "test_support.hpp"

namespace sealsim {
namespace {

constexpr double kPi4 = std::numbers::pi / 4.0;
constexpr double kPi6 = std::numbers::pi / 6.0;
constexpr double kPi12 = std::numbers::pi / 12.0;

LambdaMatrix random_lambda(std::size_t n, SplitMix64 &rng) {
    std::vector<Complex> c;
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = testing::random_state(n, rng);
        c.insert(c.end(), row.amplitudes().begin(), row.amplitudes().end());
    }
    return LambdaMatrix(n, std::move(c));
}

TEST(DecodeMatrixTest, IdentitySeal) {
    for (double nu : {0.0, 0.3, 1.0}) {
        const auto dm = decode_matrix(LambdaMatrix::identity(4), nu);
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                const double expected = (1.0 - nu) / 4.0 + (r == c ? nu : 0.0);
                EXPECT_NEAR(dm(r, c), expected, 1e-15);
            }
        }
    }
}

TEST(DecodeMatrixTest, HalfNuFloorForm) {
    auto rng = SplitMix64(8);
    const auto lambda = random_lambda(6, rng);
    const auto dm = decode_matrix(lambda, 0.5);
    for (std::size_t r = 0; r < 6; ++r) {
        for (std::size_t c = 0; c < 6; ++c) {
            EXPECT_NEAR(dm(r, c), 1.0 / 12.0 + std::norm(lambda(r, c)) / 2.0, 1e-15);
        }
    }
}

TEST(DecodeMatrixTest, SingleQubitSixthPi) {
    const auto lambda = lambda_from_he(HeSealSpec::parse("0", {kPi6}));
    const auto dm = decode_matrix(lambda, 0.5);
    EXPECT_NEAR(dm(0, 0), 0.625, 1e-15);
    EXPECT_NEAR(dm(0, 1), 0.375, 1e-15);
    EXPECT_NEAR(dm(1, 0), 0.375, 1e-15);
    EXPECT_NEAR(dm(1, 1), 0.625, 1e-15);
    // Dense simulation route.
    const auto family = chau_family(2, 0.5);
    for (std::size_t msg = 0; msg < 2; ++msg) {
        const auto sealed = seal_general(lambda, msg);
        for (std::size_t i = 0; i < 2; ++i) {
            EXPECT_NEAR(apply_and_normalize(family.dense(i), sealed.state).probability, dm(msg, i),
                        1e-12);
        }
    }
}

TEST(DecodeMatrixTest, RejectsBadNu) {
    EXPECT_THROW(decode_matrix(LambdaMatrix::identity(2), 1.01), UsageError);
    EXPECT_THROW(decode_matrix(LambdaMatrix::identity(2), -1e-9), UsageError);
}

TEST(DecodeMatrixTest, ClosedFormMatchesDenseSimulation) {
    auto rng = SplitMix64(100);
    for (std::size_t n : {2, 4, 16}) {
        for (int sample = 0; sample < 100; ++sample) {
            const auto psi = testing::random_state(n, rng);
            for (int k = 0; k <= 10; ++k) {
                const double nu = k / 10.0;
                const auto family = chau_family(n, nu);
                for (std::size_t i = 0; i < n; ++i) {
                    const double closed = (1.0 - nu) / n + nu * std::norm(psi[i]);
                    ASSERT_NEAR(apply_and_normalize(family.dense(i), psi).probability, closed, 1e-12);
                }
            }
        }
    }
}

TEST(DecodeMatrixTest, RowStochasticWithFlatFloor) {
    auto rng = SplitMix64(55);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.index(12);
        const double nu = rng.uniform();
        const auto dm = decode_matrix(random_lambda(n, rng), nu);
        for (std::size_t r = 0; r < n; ++r) {
            EXPECT_NEAR(dm.row_sums()[r], 1.0, 1e-12);
            for (double p : dm.row(r)) {
                EXPECT_GE(p, (1.0 - nu) / n - 1e-15);
            }
        }
    }
}

TEST(FlatPosteriorTest, Examples) {
    const auto he = lambda_from_he(HeSealSpec::parse("010", {kPi12, kPi6, 0.0}));
    for (std::size_t d = 0; d < 8; ++d) {
        EXPECT_NEAR(flat_posterior_mass(decode_matrix(he, 0.0), d), 1.0, 1e-12);
        EXPECT_NEAR(flat_posterior_mass(decode_matrix(he, 0.5), d), 0.5, 1e-12);
    }
    EXPECT_EQ(flat_posterior_mass(decode_matrix(LambdaMatrix::identity(4), 1.0), 2), 0.0);
}

TEST(FlatPosteriorTest, ZeroMarginalIsError) {
    // Both messages sealed as |0>: nothing ever decodes to 1 at nu = 1.
    const LambdaMatrix lambda(2, {1.0, 0.0, 1.0, 0.0});
    const auto dm = decode_matrix(lambda, 1.0);
    EXPECT_THROW(flat_posterior_mass(dm, 1), ValidationError);
    EXPECT_THROW(flat_posterior_mass(dm, 2), UsageError);
    EXPECT_NEAR(flat_posterior_mass(decode_matrix(lambda, 0.5), 1), 1.0, 1e-12);
}

TEST(MutualInformationTest, Endpoints) {
    auto rng = SplitMix64(2);
    EXPECT_NEAR(mutual_information(decode_matrix(random_lambda(5, rng), 0.0)), 0.0, 1e-12);
    for (std::size_t n : {2, 4, 16}) {
        EXPECT_NEAR(mutual_information(decode_matrix(LambdaMatrix::identity(n), 1.0)),
                    std::log2(static_cast<double>(n)), 1e-12);
    }
    const auto flat = lambda_from_he(HeSealSpec::uniform(3, kPi4));
    for (int k = 0; k <= 10; ++k) {
        EXPECT_NEAR(mutual_information(decode_matrix(flat, k / 10.0)), 0.0, 1e-12);
    }
}

// Perfect 3-bit seal at nu = 1/2. The frozen value comes from enumerating the
// 8x8 joint distribution outside this code base.
TEST(MutualInformationTest, PerfectThreeBitSealHalfNu) {
    const auto lambda = lambda_from_he(HeSealSpec::uniform(3, 0.0));
    const auto dm = decode_matrix(lambda, 0.5);
    EXPECT_NEAR(mutual_information(dm), 0.7830828133113005, 1e-12);

    std::vector<std::vector<double>> joint(8, std::vector<double>(8));
    for (std::size_t x = 0; x < 8; ++x) {
        for (std::size_t y = 0; y < 8; ++y) {
            joint[x][y] = (x == y ? 9.0 / 16.0 : 1.0 / 16.0) / 8.0;
        }
    }
    EXPECT_NEAR(testing::brute_force_mi(joint), 0.7830828133113005, 1e-12);
}

TEST(MutualInformationTest, MatchesJointEnumerationAndBounds) {
    auto rng = SplitMix64(61);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.index(10);
        const auto dm = decode_matrix(random_lambda(n, rng), rng.uniform());
        std::vector<std::vector<double>> joint(n, std::vector<double>(n));
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                joint[x][y] = dm(x, y) / n;
            }
        }
        const double mi = mutual_information(dm);
        EXPECT_NEAR(mi, testing::brute_force_mi(joint), 1e-12);
        EXPECT_GE(mi, 0.0);
        EXPECT_LE(mi, std::log2(static_cast<double>(n)));
    }
}

TEST(AverageFidelityTest, Examples) {
    const auto row = he_seal(HeSealSpec::parse("0", {kPi6})).state;
    EXPECT_NEAR(average_fidelity(row.amplitudes(), 0.0), 1.0, 1e-15);
    EXPECT_NEAR(average_fidelity(row.amplitudes(), 1.0), 0.625, 1e-15);
    const auto wide = he_seal(HeSealSpec::uniform(10, kPi4)).state;
    EXPECT_NEAR(average_fidelity(wide.amplitudes(), 1.0), 0.0009765625, 1e-12);
}

TEST(AverageFidelityTest, MatchesOutcomeEnumeration) {
    auto rng = SplitMix64(19);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.index(8);
        const auto psi = testing::random_state(n, rng);
        const double nu = rng.uniform();
        const auto family = chau_family(n, nu);
        double enumerated = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto result = apply_and_normalize(family.dense(i), psi);
            if (result.post_state) {
                enumerated += result.probability * fidelity(psi, *result.post_state);
            }
        }
        EXPECT_NEAR(average_fidelity(psi.amplitudes(), nu), enumerated, 1e-12);
    }
}

TEST(AverageFidelityTest, Errors) {
    const std::vector<Complex> bad = {1.0, 1.0};
    EXPECT_THROW(average_fidelity(bad, 0.5), ValidationError);
    const std::vector<Complex> good = {1.0, 0.0};
    EXPECT_THROW(average_fidelity(good, 2.0), UsageError);
}

TEST(AverageFidelityTest, UniformSealCollapsesAsOneOverN) {
    double previous = 1.0;
    for (std::size_t m = 1; m <= 10; ++m) {
        const auto s = he_seal(HeSealSpec::uniform(m, kPi4)).state;
        const double f = average_fidelity(s.amplitudes(), 1.0);
        EXPECT_NEAR(f, 1.0 / static_cast<double>(s.dim()), 1e-12);
        EXPECT_LT(f, previous);
        previous = f;
    }
}

TEST(TradeoffSweepTest, Endpoints) {
    const std::vector<double> grid = {0.0, 1.0};
    const auto id = tradeoff_sweep(LambdaMatrix::identity(4), grid);
    EXPECT_NEAR(id[0].mutual_information, 0.0, 1e-12);
    EXPECT_NEAR(id[0].escape_probability, 1.0, 1e-12);
    EXPECT_NEAR(id[0].flat_mass, 1.0, 1e-12);
    EXPECT_NEAR(id[1].mutual_information, 2.0, 1e-12);
    EXPECT_NEAR(id[1].escape_probability, 1.0, 1e-12);
    EXPECT_NEAR(id[1].guess_probability, 1.0, 1e-12);
    EXPECT_EQ(id[1].flat_mass, 0.0);
}

TEST(TradeoffSweepTest, GridValidation) {
    const auto lambda = LambdaMatrix::identity(2);
    EXPECT_THROW(tradeoff_sweep(lambda, std::vector<double>{}), UsageError);
    EXPECT_THROW(tradeoff_sweep(lambda, std::vector<double>{0.5, 0.2}), UsageError);
    EXPECT_THROW(tradeoff_sweep(lambda, std::vector<double>{0.5, 0.5}), UsageError);
    EXPECT_THROW(tradeoff_sweep(lambda, std::vector<double>{0.0, 1.5}), UsageError);
}

TEST(TradeoffSweepTest, FourQubitCurveIsMonotone) {
    const auto lambda = lambda_from_he(HeSealSpec::uniform(4, kPi12));
    const auto grid = linear_grid(0.0, 1.0, 21);
    ASSERT_EQ(grid.size(), 21u);
    const auto points = tradeoff_sweep(lambda, grid);
    for (std::size_t k = 1; k < points.size(); ++k) {
        EXPECT_GE(points[k].mutual_information, points[k - 1].mutual_information);
        EXPECT_LE(points[k].escape_probability, points[k - 1].escape_probability);
        EXPECT_GE(points[k].guess_probability, points[k - 1].guess_probability);
    }
    EXPECT_NEAR(points[10].nu, 0.5, 1e-15);
    EXPECT_NEAR(points[10].flat_mass, 0.5, 1e-12);
    EXPECT_GE(points[10].escape_probability, 0.5);
}

TEST(BitSealPointTest, Examples) {
    auto p = bit_seal_point(0.0, 1.0);
    EXPECT_NEAR(p.alpha, 1.0, 1e-15);
    EXPECT_NEAR(p.beta, 0.0, 1e-15);
    p = bit_seal_point(0.0, 0.0);
    EXPECT_NEAR(p.alpha, 0.5, 1e-15);
    EXPECT_NEAR(p.beta, 0.0, 1e-15);
    p = bit_seal_point(kPi6, 0.5);
    EXPECT_NEAR(p.alpha, 0.625, 1e-15);
    EXPECT_NEAR(p.beta, 0.0502404735808355, 1e-12);
}

TEST(BitSealPointTest, AlphaClosedFormAndBetaBound) {
    for (double theta : {0.0, kPi12, kPi6, kPi4}) {
        for (int k = 0; k <= 10; ++k) {
            const double nu = k / 10.0;
            const auto p = bit_seal_point(theta, nu);
            EXPECT_NEAR(p.alpha, (1.0 - nu) / 2.0 + nu * std::cos(theta) * std::cos(theta), 1e-12);
        }
        EXPECT_LE(bit_seal_point(theta, 0.5).beta, 0.5 + 1e-12);
    }
    EXPECT_THROW(bit_seal_point(1.0, 0.5), UsageError);
    EXPECT_THROW(bit_seal_point(0.1, -0.5), UsageError);
}

} // namespace
} // namespace sealsim
