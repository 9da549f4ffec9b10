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
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sealsim/errors.hpp"

/// Dense complex state and operator arithmetic at the seal's message-space
/// dimension.
namespace sealsim {

using Complex = std::complex<double>;

/// Absolute tolerance on the squared norm of every StateVector.
inline constexpr double kNormTolerance = 1e-12;

/// Default cap on the message-space dimension (12 qubits).
inline constexpr std::size_t kDefaultMaxDim = 4096;

/// Dimension cap, overridable through SEALSIM_MAX_DIM.
inline std::size_t max_dim() {
    if (const char *env = std::getenv("SEALSIM_MAX_DIM"); env != nullptr && *env != '\0') {
        char *end = nullptr;
        const unsigned long long value = std::strtoull(env, &end, 10);
        if (end != nullptr && *end == '\0' && value >= 2) {
            return static_cast<std::size_t>(value);
        }
    }
    return kDefaultMaxDim;
}

inline void require_dim_within_cap(std::size_t dim) {
    if (dim > max_dim()) {
        throw ResourceError("dimension " + std::to_string(dim) + " exceeds cap " +
                            std::to_string(max_dim()) + " (set SEALSIM_MAX_DIM to raise it)");
    }
}

inline double squared_norm(std::span<const Complex> v) {
    double total = 0.0;
    for (const auto &x : v) {
        total += std::norm(x);
    }
    return total;
}

/// Unit-norm pure state. The invariant is checked on construction.
class StateVector {
  public:
    explicit StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.empty()) {
            throw UsageError("state vector must have at least one amplitude");
        }
        const double n2 = squared_norm(amplitudes_);
        if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
            throw ValidationError("state vector is not normalized (squared norm " +
                                  std::to_string(n2) + ")");
        }
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    static StateVector normalized(std::vector<Complex> amplitudes) {
        const double n2 = squared_norm(amplitudes);
        if (!(n2 > 0.0) || !std::isfinite(n2)) {
            throw ValidationError("cannot normalize a zero or non-finite vector");
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (auto &x : amplitudes) {
            x *= inv;
        }
        return StateVector(std::move(amplitudes));
    }

    /// Computational basis state |index> of dimension dim.
    static StateVector basis(std::size_t dim, std::size_t index) {
        if (index >= dim) {
            throw UsageError("basis index " + std::to_string(index) + " out of range for dimension " +
                             std::to_string(dim));
        }
        std::vector<Complex> amps(dim);
        amps[index] = 1.0;
        return StateVector(std::move(amps));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

    /// |amplitude_i|^2 for every basis index.
    [[nodiscard]] std::vector<double> probabilities() const {
        std::vector<double> out(amplitudes_.size());
        for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
            out[i] = std::norm(amplitudes_[i]);
        }
        return out;
    }

  private:
    std::vector<Complex> amplitudes_;
};

/// Square complex matrix stored row-major.
class DenseOperator {
  public:
    DenseOperator(std::size_t dim, std::vector<Complex> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (dim_ == 0 || entries_.size() != dim_ * dim_) {
            throw UsageError("dense operator needs dim*dim entries");
        }
    }

    static DenseOperator zero(std::size_t dim) {
        return DenseOperator(dim, std::vector<Complex>(dim * dim));
    }

    static DenseOperator identity(std::size_t dim) {
        auto op = zero(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            op(i, i) = 1.0;
        }
        return op;
    }

    /// |index><index|
    static DenseOperator projector(std::size_t dim, std::size_t index) {
        if (index >= dim) {
            throw UsageError("projector index out of range");
        }
        auto op = zero(dim);
        op(index, index) = 1.0;
        return op;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::span<const Complex> entries() const noexcept { return entries_; }

    Complex &operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    [[nodiscard]] DenseOperator adjoint() const {
        auto out = zero(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    /// Matrix-vector product on a raw amplitude vector.
    [[nodiscard]] std::vector<Complex> apply(std::span<const Complex> v) const {
        if (v.size() != dim_) {
            throw UsageError("operator/vector dimension mismatch");
        }
        std::vector<Complex> out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            Complex acc = 0.0;
            const Complex *row = entries_.data() + r * dim_;
            for (std::size_t c = 0; c < dim_; ++c) {
                acc += row[c] * v[c];
            }
            out[r] = acc;
        }
        return out;
    }

    DenseOperator &operator+=(const DenseOperator &rhs) {
        if (rhs.dim_ != dim_) {
            throw UsageError("operator dimension mismatch");
        }
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            entries_[k] += rhs.entries_[k];
        }
        return *this;
    }

    friend DenseOperator operator*(const DenseOperator &lhs, const DenseOperator &rhs) {
        if (lhs.dim_ != rhs.dim_) {
            throw UsageError("operator dimension mismatch");
        }
        const std::size_t n = lhs.dim_;
        auto out = zero(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t k = 0; k < n; ++k) {
                const Complex lrk = lhs(r, k);
                if (lrk == Complex{}) {
                    continue;
                }
                for (std::size_t c = 0; c < n; ++c) {
                    out(r, c) += lrk * rhs(k, c);
                }
            }
        }
        return out;
    }

    /// Largest |entry - delta_rc|.
    [[nodiscard]] double max_deviation_from_identity() const {
        double worst = 0.0;
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                const Complex expected = r == c ? 1.0 : 0.0;
                worst = std::max(worst, std::abs((*this)(r, c) - expected));
            }
        }
        return worst;
    }

  private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

/// Kronecker product of the factors, first factor most significant.
inline StateVector tensor_product(std::span<const StateVector> factors) {
    if (factors.empty()) {
        throw UsageError("tensor_product needs at least one factor");
    }
    std::vector<Complex> acc{1.0};
    for (const auto &f : factors) {
        std::vector<Complex> next;
        next.reserve(acc.size() * f.dim());
        for (const auto &x : acc) {
            for (const auto &y : f.amplitudes()) {
                next.push_back(x * y);
            }
        }
        acc = std::move(next);
    }
    return StateVector(std::move(acc));
}

struct MeasurementResult {
    double probability = 0.0;
    std::optional<StateVector> post_state;
};

/// Applies one measurement operator and renormalizes (Lüders update). A
/// zero-norm image yields probability 0 and no post state.
inline MeasurementResult apply_and_normalize(const DenseOperator &op, const StateVector &state) {
    if (op.dim() != state.dim()) {
        throw UsageError("operator dimension " + std::to_string(op.dim()) +
                         " does not match state dimension " + std::to_string(state.dim()));
    }
    auto image = op.apply(state.amplitudes());
    const double p = squared_norm(image);
    if (p == 0.0) {
        return {0.0, std::nullopt};
    }
    return {p, StateVector::normalized(std::move(image))};
}

inline Complex inner_product(const StateVector &bra, const StateVector &ket) {
    if (bra.dim() != ket.dim()) {
        throw UsageError("inner product dimension mismatch");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < bra.dim(); ++i) {
        acc += std::conj(bra[i]) * ket[i];
    }
    return acc;
}

/// |<s1|s2>|^2, clamped to [0, 1] against rounding.
inline double fidelity(const StateVector &s1, const StateVector &s2) {
    const double f = std::norm(inner_product(s1, s2));
    return std::min(1.0, std::max(0.0, f));
}

/// Index k such that u falls in the k-th cell of the cumulative sum of
/// probabilities. Rounding shortfall lands on the last nonzero cell.
inline std::size_t sample_outcome(std::span<const double> probabilities, double u) {
    double cumulative = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] <= 0.0) {
            continue;
        }
        last_nonzero = i;
        cumulative += probabilities[i];
        if (u < cumulative) {
            return i;
        }
    }
    return last_nonzero;
}

} // namespace sealsim
