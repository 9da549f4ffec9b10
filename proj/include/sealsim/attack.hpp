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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sealsim/errors.hpp"
#include "sealsim/linalg.hpp"
#include "sealsim/rng.hpp"
#include "sealsim/seal.hpp"

namespace sealsim {

/**
 * Coefficients of the attack family Q_i = a*I + b*|i><i|.
 *
 * a = sqrt((1 - nu) / N) and a + b = sqrt((1 - nu) / N + nu) are the unique
 * nonnegative pair for which outcome i on a sealed row occurs with
 * probability (1 - nu)/N + nu*|lambda_i|^2; at nu = 1/2 they reduce to
 * a = sqrt(1/(2N)), a + b = sqrt(1/2 + 1/(2N)).
 */
struct ChauParams {
    double nu = 0.0;
    std::size_t n = 2;
    double a = 0.0;
    double b = 0.0;

    static ChauParams from_nu(std::size_t n, double nu) {
        if (n < 2) {
            throw UsageError("attack family needs dimension >= 2");
        }
        if (!(nu >= 0.0 && nu <= 1.0)) {
            throw UsageError("nu must lie in [0, 1]");
        }
        const double flat = (1.0 - nu) / static_cast<double>(n);
        const double a = std::sqrt(flat);
        const double a_plus_b = std::sqrt(flat + nu);
        return {nu, n, a, a_plus_b - a};
    }
};

/// One operator a*I + b*|target><target| kept in structured form.
struct ChauOperator {
    double a = 0.0;
    double b = 0.0;
    std::size_t target = 0;
    std::size_t dim = 0;

    [[nodiscard]] std::vector<Complex> apply(std::span<const Complex> v) const {
        if (v.size() != dim) {
            throw UsageError("operator/vector dimension mismatch");
        }
        std::vector<Complex> out(v.begin(), v.end());
        for (auto &x : out) {
            x *= a;
        }
        out[target] += b * v[target];
        return out;
    }

    /// ||Q psi||^2 evaluated on the structured form.
    [[nodiscard]] double outcome_probability(const StateVector &psi) const {
        if (psi.dim() != dim) {
            throw UsageError("operator/state dimension mismatch");
        }
        const double on_target = std::norm(psi[target]);
        const double rest = squared_norm(psi.amplitudes()) - on_target;
        return (a + b) * (a + b) * on_target + a * a * rest;
    }

    [[nodiscard]] DenseOperator dense() const {
        auto op = DenseOperator::zero(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            op(i, i) = a;
        }
        op(target, target) += b;
        return op;
    }
};

/// The N operators {Q_i}, i = 0..N-1, sharing (a, b).
class MeasurementFamily {
  public:
    /// Family with explicit coefficients. No completeness check is made here;
    /// use completeness_deviation() to audit it.
    static MeasurementFamily with_coefficients(std::size_t n, double a, double b, double nu) {
        if (n < 2) {
            throw UsageError("attack family needs dimension >= 2");
        }
        return MeasurementFamily(ChauParams{nu, n, a, b});
    }

    [[nodiscard]] const ChauParams &params() const noexcept { return params_; }
    [[nodiscard]] std::size_t dim() const noexcept { return params_.n; }

    [[nodiscard]] ChauOperator op(std::size_t i) const {
        if (i >= params_.n) {
            throw UsageError("operator index out of range");
        }
        return {params_.a, params_.b, i, params_.n};
    }

    [[nodiscard]] DenseOperator dense(std::size_t i) const { return op(i).dense(); }

    /// Max-entry deviation of sum_i Q_i^dagger Q_i from the identity,
    /// accumulated term by term. Each Q_i is diagonal, so every term and the
    /// sum are diagonal and off-diagonal entries are exactly zero.
    [[nodiscard]] double completeness_deviation() const {
        const std::size_t n = params_.n;
        std::vector<double> diag(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto q = op(i);
            for (std::size_t j = 0; j < n; ++j) {
                const double entry = j == i ? q.a + q.b : q.a;
                diag[j] += entry * entry;
            }
        }
        double worst = 0.0;
        for (double d : diag) {
            worst = std::max(worst, std::abs(d - 1.0));
        }
        return worst;
    }

    /// Same quantity from full dense products. O(N^4); meant for small N.
    [[nodiscard]] double dense_completeness_deviation() const {
        auto sum = DenseOperator::zero(params_.n);
        for (std::size_t i = 0; i < params_.n; ++i) {
            const auto q = dense(i);
            sum += q.adjoint() * q;
        }
        return sum.max_deviation_from_identity();
    }

  private:
    explicit MeasurementFamily(ChauParams params) : params_(params) {}

    ChauParams params_;
};

inline MeasurementFamily chau_family(std::size_t n, double nu) {
    const auto p = ChauParams::from_nu(n, nu);
    return MeasurementFamily::with_coefficients(n, p.a, p.b, p.nu);
}

struct AttackOutcome {
    std::optional<std::size_t> decoded;
    StateVector post_state;
    bool acted = false;
};

/// Outcome distribution ||Q_i psi||^2 over i.
inline std::vector<double> chau_outcome_distribution(const StateVector &psi,
                                                     const MeasurementFamily &family) {
    if (psi.dim() != family.dim()) {
        throw UsageError("attack: seal dimension " + std::to_string(psi.dim()) +
                         " does not match family dimension " + std::to_string(family.dim()));
    }
    const auto &params = family.params();
    const double total = squared_norm(psi.amplitudes());
    const double boosted = (params.a + params.b) * (params.a + params.b);
    const double plain = params.a * params.a;
    std::vector<double> probs(family.dim());
    for (std::size_t i = 0; i < family.dim(); ++i) {
        const double on_target = std::norm(psi[i]);
        probs[i] = boosted * on_target + plain * (total - on_target);
    }
    return probs;
}

/// One round of the measurement attack: sample i with probability
/// ||Q_i psi||^2, return the Lüders post-state Q_i psi / ||Q_i psi||.
inline AttackOutcome run_chau_attack(const SealedState &sealed, const MeasurementFamily &family,
                                     SplitMix64 &rng) {
    const auto probs = chau_outcome_distribution(sealed.state, family);
    const std::size_t i = sample_outcome(probs, rng.uniform());
    auto image = family.op(i).apply(sealed.state.amplitudes());
    return {i, StateVector::normalized(std::move(image)), true};
}

/// Classical analog: with probability q read the seal by an honest
/// computational-basis measurement, otherwise leave it alone and report a
/// uniformly random guess.
inline AttackOutcome coin_toss_attack(const SealedState &sealed, double q, SplitMix64 &rng) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw UsageError("coin-toss read probability must lie in [0, 1]");
    }
    const std::size_t n = sealed.state.dim();
    if (rng.uniform() < q) {
        const auto probs = sealed.state.probabilities();
        const std::size_t i = sample_outcome(probs, rng.uniform());
        return {i, StateVector::basis(n, i), true};
    }
    return {rng.index(n), sealed.state, false};
}

/// Decode distribution of coin_toss_attack, as the expectation over both
/// coin branches: (1 - q) * uniform + q * |row_i|^2.
inline std::vector<double> coin_toss_decode_distribution(std::span<const Complex> row, double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw UsageError("coin-toss read probability must lie in [0, 1]");
    }
    const double idle = (1.0 - q) / static_cast<double>(row.size());
    std::vector<double> out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
        out[i] = idle + q * std::norm(row[i]);
    }
    return out;
}

/// Expected verifier pass probability after coin_toss_attack:
/// (1 - q) + q * sum_i |row_i|^4.
inline double coin_toss_average_fidelity(std::span<const Complex> row, double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw UsageError("coin-toss read probability must lie in [0, 1]");
    }
    double quartic = 0.0;
    for (const auto &x : row) {
        quartic += std::norm(x) * std::norm(x);
    }
    return (1.0 - q) + q * quartic;
}

} // namespace sealsim
