// SPDX-License-Identifier: Apache-2.0
//
// ic-igs: rate regions of the two-user SISO interference channel with
// additive asymmetric hardware distortion under improper Gaussian signaling.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ICIGS_VERIFICATION_HPP
#define ICIGS_VERIFICATION_HPP

#include "icigs/region.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace icigs
{
    /// Outcome of one invariant check over sampled points.
    struct CheckResult
    {
        std::string name;
        bool passed = true;
        double worst = 0.0; // largest violation seen (0 when none)
        double tolerance = 0.0;
        int samples = 0;
    };

    /// Uniform sample of the feasible set: p in the box, |q_k| <= p_k.
    TxSignal random_feasible_signal(const ScenarioConfig &cfg, std::mt19937_64 &rng);

    /// Feasibility of {0 <= p <= P, A p >= y} by enumerating the vertices of
    /// the 2-D polygon. Independent of the closed-form test.
    bool vertex_feasible(const Eigen::Matrix2d &A, const Vec2 &y, const Vec2 &budgets, double tol = 1e-12);

    /// Model and algorithm invariants on one scenario:
    /// psinr-floor, surrogate-minorant, surrogate-tight, proper-lower-bound,
    /// closed-form-vs-vertex.
    std::vector<CheckResult> verify_scenario(const ScenarioConfig &cfg, int samples, std::uint64_t seed);

} // namespace icigs

#endif
