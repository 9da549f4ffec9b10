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
#include <complex>
#include <cstdint>
#include <vector>

#include "sealsim/linalg.hpp"
#include "sealsim/rng.hpp"

namespace sealsim::testing {

/// Seeded random unit vector with complex entries.
inline StateVector random_state(std::size_t n, SplitMix64 &rng) {
    std::vector<Complex> amps(n);
    for (auto &x : amps) {
        x = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    }
    return StateVector::normalized(std::move(amps));
}

/// 3 sigma binomial half-width around p.
inline double three_sigma(double p, std::uint64_t trials) {
    return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

/// Mutual information from the full joint distribution,
/// sum p(x,y) log2(p(x,y) / (p(x) p(y))), enumerated cell by cell.
inline double brute_force_mi(const std::vector<std::vector<double>> &joint) {
    const std::size_t n = joint.size();
    std::vector<double> px(n, 0.0), py(joint.front().size(), 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < py.size(); ++y) {
            px[x] += joint[x][y];
            py[y] += joint[x][y];
        }
    }
    double mi = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < py.size(); ++y) {
            if (joint[x][y] > 0.0) {
                mi += joint[x][y] * std::log2(joint[x][y] / (px[x] * py[y]));
            }
        }
    }
    return mi;
}

} // namespace sealsim::testing
