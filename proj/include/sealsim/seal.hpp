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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sealsim/errors.hpp"
#include "sealsim/linalg.hpp"
#include "sealsim/rng.hpp"

namespace sealsim {

/// Overlap coefficients lambda(i', j') of the general sealed-state model.
/// Row i' holds the amplitudes of the state sealing message i'; each row must
/// have unit 2-norm.
class LambdaMatrix {
  public:
    LambdaMatrix(std::size_t dim, std::vector<Complex> coefficients)
        : dim_(dim), coefficients_(std::move(coefficients)) {
        if (dim_ == 0 || coefficients_.size() != dim_ * dim_) {
            throw UsageError("lambda matrix needs dim*dim coefficients");
        }
        for (std::size_t r = 0; r < dim_; ++r) {
            const double n2 = squared_norm(row(r));
            if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
                throw ValidationError("lambda row " + std::to_string(r) +
                                      " is not normalized (squared norm " + std::to_string(n2) +
                                      ")");
            }
        }
    }

    static LambdaMatrix identity(std::size_t dim) {
        std::vector<Complex> c(dim * dim);
        for (std::size_t i = 0; i < dim; ++i) {
            c[i * dim + i] = 1.0;
        }
        return LambdaMatrix(dim, std::move(c));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::span<const Complex> row(std::size_t message) const {
        return std::span<const Complex>(coefficients_).subspan(message * dim_, dim_);
    }
    [[nodiscard]] const Complex &operator()(std::size_t r, std::size_t c) const {
        return coefficients_[r * dim_ + c];
    }
    [[nodiscard]] std::span<const Complex> coefficients() const noexcept { return coefficients_; }

  private:
    std::size_t dim_;
    std::vector<Complex> coefficients_;
};

inline constexpr double kMaxSealAngle = std::numbers::pi / 4.0;

/// Per-qubit string seal: qubit k carries cos(theta_k)|b_k> + sin(theta_k)|~b_k>.
struct HeSealSpec {
    std::vector<std::uint8_t> bits;
    std::vector<double> thetas;

    /// Parses a '0'/'1' string. A single theta is shared by every qubit.
    static HeSealSpec parse(std::string_view bit_text, std::vector<double> thetas) {
        HeSealSpec spec;
        for (char ch : bit_text) {
            if (ch != '0' && ch != '1') {
                throw UsageError("bit string may contain only '0' and '1'");
            }
            spec.bits.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        if (thetas.size() == 1 && spec.bits.size() > 1) {
            thetas.assign(spec.bits.size(), thetas.front());
        }
        spec.thetas = std::move(thetas);
        spec.validate();
        return spec;
    }

    /// All-zero message of m qubits sharing one angle.
    static HeSealSpec uniform(std::size_t m, double theta) {
        HeSealSpec spec{std::vector<std::uint8_t>(m, 0), std::vector<double>(m, theta)};
        spec.validate();
        return spec;
    }

    void validate() const {
        if (bits.empty()) {
            throw UsageError("seal needs at least one bit");
        }
        if (thetas.size() != bits.size()) {
            throw UsageError("expected " + std::to_string(bits.size()) + " angles, got " +
                             std::to_string(thetas.size()));
        }
        if (bits.size() >= 63) {
            throw ResourceError("too many qubits");
        }
        for (std::size_t k = 0; k < bits.size(); ++k) {
            if (bits[k] > 1) {
                throw UsageError("bits must be 0 or 1");
            }
            if (!(thetas[k] >= 0.0 && thetas[k] <= kMaxSealAngle)) {
                throw ValidationError("theta " + std::to_string(thetas[k]) +
                                      " outside [0, pi/4]");
            }
        }
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return bits.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return std::size_t{1} << bits.size(); }

    /// Big-endian: the first bit is the most significant bit of the index.
    [[nodiscard]] std::size_t message() const noexcept {
        std::size_t index = 0;
        for (auto b : bits) {
            index = (index << 1) | b;
        }
        return index;
    }

    /// Same angles, message replaced by index.
    [[nodiscard]] HeSealSpec with_message(std::size_t index) const {
        HeSealSpec out = *this;
        const std::size_t m = bits.size();
        for (std::size_t k = 0; k < m; ++k) {
            out.bits[k] = static_cast<std::uint8_t>((index >> (m - 1 - k)) & 1U);
        }
        return out;
    }
};

enum class SealSource { GeneralLambda, HeSeal };

struct SealedState {
    StateVector state;
    std::size_t message;
    SealSource source;
};

inline SealedState seal_general(const LambdaMatrix &lambda, std::size_t message) {
    if (message >= lambda.dim()) {
        throw UsageError("message " + std::to_string(message) + " out of range for dimension " +
                         std::to_string(lambda.dim()));
    }
    const auto row = lambda.row(message);
    return {StateVector(std::vector<Complex>(row.begin(), row.end())), message,
            SealSource::GeneralLambda};
}

/// Full lambda matrix of a per-qubit seal: entry (i', j') is the product over
/// qubits of cos(theta_k) where bit k of i' and j' agree and sin(theta_k)
/// where they differ. Only spec.thetas matter; spec.bits fixes the width.
inline LambdaMatrix lambda_from_he(const HeSealSpec &spec) {
    spec.validate();
    const std::size_t m = spec.num_qubits();
    const std::size_t n = spec.dim();
    require_dim_within_cap(n);

    // Factor for each possible XOR pattern, so entry (r, c) = by_xor[r ^ c].
    std::vector<double> by_xor(n);
    for (std::size_t d = 0; d < n; ++d) {
        double f = 1.0;
        for (std::size_t k = 0; k < m; ++k) {
            const bool differs = ((d >> (m - 1 - k)) & 1U) != 0;
            f *= differs ? std::sin(spec.thetas[k]) : std::cos(spec.thetas[k]);
        }
        by_xor[d] = f;
    }
    std::vector<Complex> coefficients(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            coefficients[r * n + c] = by_xor[r ^ c];
        }
    }
    return LambdaMatrix(n, std::move(coefficients));
}

/// Sealed state built qubit by qubit as a tensor product.
inline SealedState he_seal(const HeSealSpec &spec) {
    spec.validate();
    std::vector<StateVector> factors;
    factors.reserve(spec.num_qubits());
    for (std::size_t k = 0; k < spec.num_qubits(); ++k) {
        const double c = std::cos(spec.thetas[k]);
        const double s = std::sin(spec.thetas[k]);
        factors.push_back(spec.bits[k] == 0 ? StateVector({c, s}) : StateVector({s, c}));
    }
    return {tensor_product(factors), spec.message(), SealSource::HeSeal};
}

/// Verifier: projective check onto the original sealed state. Passes with
/// probability fidelity(original, returned); consumes one uniform draw.
inline bool verify(const SealedState &original, const StateVector &returned, SplitMix64 &rng) {
    if (original.state.dim() != returned.dim()) {
        throw UsageError("verify: dimension mismatch");
    }
    return rng.uniform() < fidelity(original.state, returned);
}

} // namespace sealsim
