/*
 * Copyright (c) 2026 The ipscore Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef IPSCORE_SAMPLING_HPP
#define IPSCORE_SAMPLING_HPP

#include <cmath>
#include <random>
#include <vector>

#include "ipscore/probability.hpp"

namespace ipscore {

using Rng = std::mt19937_64;

/// Uniform point on the simplex (symmetric Dirichlet(1)), via normalised
/// exponentials.
inline std::vector<double> sample_simplex_vector(std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> v(n);
    double sum = 0.0;
    for (double& x : v) {
        double u;
        do {
            u = unit(rng);
        } while (u <= 0.0);
        x = -std::log(u);
        sum += x;
    }
    for (double& x : v) {
        x /= sum;
    }
    return v;
}

inline Distribution sample_distribution(const OutcomeSpacePtr& space, Rng& rng) {
    return Distribution(space, sample_simplex_vector(space->size(), rng));
}

}  // namespace ipscore

#endif  // IPSCORE_SAMPLING_HPP
