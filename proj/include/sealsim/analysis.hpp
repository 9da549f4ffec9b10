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
#include <span>
#include <string>
#include <vector>

#include "sealsim/attack.hpp"
#include "sealsim/errors.hpp"
#include "sealsim/linalg.hpp"
#include "sealsim/seal.hpp"

/// Closed-form statistics of the attack family under a uniform message prior.
namespace sealsim {

inline void require_nu(double nu) {
    if (!(nu >= 0.0 && nu <= 1.0)) {
        throw UsageError("nu must lie in [0, 1]");
    }
}

/// Row-stochastic matrix of decode probabilities: entry (i', i) is the
/// probability that sealed message i' is read out as i.
class DecodeMatrix {
  public:
    DecodeMatrix(std::size_t dim, double nu, std::vector<double> probabilities)
        : dim_(dim), nu_(nu), probabilities_(std::move(probabilities)) {
        if (dim_ == 0 || probabilities_.size() != dim_ * dim_) {
            throw UsageError("decode matrix needs dim*dim entries");
        }
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] double nu() const noexcept { return nu_; }
    [[nodiscard]] double operator()(std::size_t sealed, std::size_t decoded) const {
        return probabilities_[sealed * dim_ + decoded];
    }
    [[nodiscard]] std::span<const double> row(std::size_t sealed) const {
        return std::span<const double>(probabilities_).subspan(sealed * dim_, dim_);
    }
    [[nodiscard]] std::vector<double> row_sums() const {
        std::vector<double> sums(dim_, 0.0);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (double p : row(r)) {
                sums[r] += p;
            }
        }
        return sums;
    }
    /// Weight every entry receives from the message-independent component.
    [[nodiscard]] double flat_floor() const noexcept {
        return (1.0 - nu_) / static_cast<double>(dim_);
    }

  private:
    std::size_t dim_;
    double nu_;
    std::vector<double> probabilities_;
};

/// p(i', i) = (1 - nu)/N + nu * |lambda(i', i)|^2.
inline DecodeMatrix decode_matrix(const LambdaMatrix &lambda, double nu) {
    require_nu(nu);
    const std::size_t n = lambda.dim();
    const double flat = (1.0 - nu) / static_cast<double>(n);
    std::vector<double> p(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            p[r * n + c] = flat + nu * std::norm(lambda(r, c));
        }
    }
    return DecodeMatrix(n, nu, std::move(p));
}

/// Marginal probability of reading out \p decoded under a uniform prior.
inline double decoded_marginal(const DecodeMatrix &dm, std::size_t decoded) {
    if (decoded >= dm.dim()) {
        throw UsageError("decoded index out of range");
    }
    double total = 0.0;
    for (std::size_t r = 0; r < dm.dim(); ++r) {
        total += dm(r, decoded);
    }
    return total / static_cast<double>(dm.dim());
}

/**
 * Share of the posterior P(message | decoded) carried by the flat component:
 *
 *     sum_i' [(1 - nu)/N] * (1/N) / P(decoded)
 *
 * When this is 1/2, half of the attacker's belief after a read is spread
 * evenly over all messages regardless of what was sealed.
 */
inline double flat_posterior_mass(const DecodeMatrix &dm, std::size_t decoded) {
    const double marginal = decoded_marginal(dm, decoded);
    if (!(marginal > 0.0)) {
        throw ValidationError("decoded value " + std::to_string(decoded) +
                              " has zero marginal probability");
    }
    const double flat_joint = dm.flat_floor(); // N terms of flat * (1/N)
    return std::min(1.0, flat_joint / marginal);
}

namespace detail {
inline double entropy_bits(std::span<const double> dist) {
    double h = 0.0;
    for (double p : dist) {
        if (p > 0.0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}
} // namespace detail

/// I(message; decoded) in bits under a uniform prior, 0 log 0 = 0.
inline double mutual_information(const DecodeMatrix &dm) {
    const std::size_t n = dm.dim();
    const double prior = 1.0 / static_cast<double>(n);
    std::vector<double> marginal(n, 0.0);
    double conditional = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            marginal[c] += prior * dm(r, c);
        }
        conditional += prior * detail::entropy_bits(dm.row(r));
    }
    const double mi = detail::entropy_bits(marginal) - conditional;
    return std::clamp(mi, 0.0, std::log2(static_cast<double>(n)));
}

/// Probability that the decoded value equals the sealed message.
inline double guess_probability(const DecodeMatrix &dm) {
    double trace = 0.0;
    for (std::size_t i = 0; i < dm.dim(); ++i) {
        trace += dm(i, i);
    }
    return trace / static_cast<double>(dm.dim());
}

/// Verifier pass probability after the attack, averaged over outcomes:
/// sum_i |<psi|Q_i|psi>|^2 = sum_i (a + b |row_i|^2)^2.
inline double average_fidelity(std::span<const Complex> row, double nu) {
    require_nu(nu);
    const double n2 = squared_norm(row);
    if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
        throw ValidationError("lambda row is not normalized");
    }
    const auto params = ChauParams::from_nu(row.size(), nu);
    double total = 0.0;
    for (const auto &x : row) {
        const double overlap = params.a + params.b * std::norm(x);
        total += overlap * overlap;
    }
    return std::min(1.0, total);
}

/// average_fidelity averaged over a uniform message prior.
inline double mean_average_fidelity(const LambdaMatrix &lambda, double nu) {
    double total = 0.0;
    for (std::size_t r = 0; r < lambda.dim(); ++r) {
        total += average_fidelity(lambda.row(r), nu);
    }
    return total / static_cast<double>(lambda.dim());
}

struct TradeoffPoint {
    double nu = 0.0;
    double mutual_information = 0.0;
    double guess_probability = 0.0;
    double escape_probability = 0.0;
    /// Smallest flat_posterior_mass over decoded values with nonzero marginal.
    double flat_mass = 0.0;
};

inline TradeoffPoint tradeoff_point(const LambdaMatrix &lambda, double nu) {
    const auto dm = decode_matrix(lambda, nu);
    double flat = 1.0;
    for (std::size_t d = 0; d < dm.dim(); ++d) {
        if (decoded_marginal(dm, d) > 0.0) {
            flat = std::min(flat, flat_posterior_mass(dm, d));
        }
    }
    return {nu, mutual_information(dm), guess_probability(dm), mean_average_fidelity(lambda, nu),
            flat};
}

inline std::vector<TradeoffPoint> tradeoff_sweep(const LambdaMatrix &lambda,
                                                 std::span<const double> nu_grid) {
    if (nu_grid.empty()) {
        throw UsageError("nu grid is empty");
    }
    for (std::size_t k = 0; k < nu_grid.size(); ++k) {
        require_nu(nu_grid[k]);
        if (k > 0 && !(nu_grid[k] > nu_grid[k - 1])) {
            throw UsageError("nu grid must be strictly increasing");
        }
    }
    std::vector<TradeoffPoint> points;
    points.reserve(nu_grid.size());
    for (double nu : nu_grid) {
        points.push_back(tradeoff_point(lambda, nu));
    }
    return points;
}

/// Evenly spaced grid of \p points values from lo to hi inclusive.
inline std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
    if (points < 2) {
        return {lo};
    }
    std::vector<double> grid(points);
    for (std::size_t k = 0; k < points; ++k) {
        grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    }
    grid.back() = hi;
    return grid;
}

struct BitSealPoint {
    double alpha = 0.0; ///< probability of reading the sealed bit correctly
    double beta = 0.0;  ///< probability the verifier detects the read
};

/// Single-bit seal cos(theta)|b> + sin(theta)|~b> attacked at nu.
inline BitSealPoint bit_seal_point(double theta, double nu) {
    if (!(theta >= 0.0 && theta <= kMaxSealAngle)) {
        throw UsageError("theta must lie in [0, pi/4]");
    }
    require_nu(nu);
    const auto lambda = lambda_from_he(HeSealSpec::uniform(1, theta));
    const auto dm = decode_matrix(lambda, nu);
    return {guess_probability(dm), 1.0 - mean_average_fidelity(lambda, nu)};
}

} // namespace sealsim
