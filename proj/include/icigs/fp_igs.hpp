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

#ifndef ICIGS_FP_IGS_HPP
#define ICIGS_FP_IGS_HPP

#include "icigs/convex_kernel.hpp"
#include "icigs/surrogates.hpp"

#include <algorithm>
#include <vector>

namespace icigs
{
    /// Profile weights alpha_k of the PSINR profile, alpha_1 + alpha_2 = 1.
    /// A user with alpha_k = 0 drops out of the profile objective and is only
    /// held to E_k >= 1. Other divisions by alpha_k use max(alpha_k, alpha_floor).
    struct ProfileWeights
    {
        static constexpr double alpha_floor = 1e-9;

        double alpha1 = 0.5;
        double alpha2 = 0.5;

        static ProfileWeights from_alpha1(double a1) { return {a1, 1.0 - a1}; }

        double operator[](int k) const { return k == 0 ? alpha1 : alpha2; }
        double clamped(int k) const { return std::max((*this)[k], alpha_floor); }
        bool weighted(int k) const { return (*this)[k] > 0.0; }

        /// Throws std::invalid_argument unless both weights are in [0, 1] and sum to 1.
        void validate() const;
    };

    /// min_k (E_k - 1) / alpha_k over weighted users, the quantity traced
    /// along the region boundary.
    double profile_objective(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig,
                             const ProfileWeights &w);

    /// Same with E_k replaced by its surrogate anchored at x0.
    double surrogate_objective(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0,
                               const TxSignal &sig, const ProfileWeights &w);

    enum class FpStart
    {
        zero,
        proper_seeded,
        custom
    };

    struct FpSettings
    {
        double epsilon = 1e-4; // shared stopping threshold
        int max_outer = 20;    // M
        int max_inner = 20;    // L
        /// zero: p = q = 0. proper_seeded: p = PGS powers for the same weights,
        /// q_k = seed_circularity * p_k * e^{i phi_k}, phi = (pi/4, 3pi/4).
        /// custom: `initial`.
        FpStart start = FpStart::proper_seeded;
        double seed_circularity = 0.5;
        TxSignal initial;
        /// Also run from (PGS powers, q = 0) and keep the better end point.
        bool proper_restart = true;
        double kernel_tol = 1e-8;
        int kernel_max_iter = 200;

        void validate() const;
    };

    struct DinkelbachReport
    {
        std::vector<double> mu_trace;     // mu^(0), mu^(1), ... (strictly increasing)
        std::vector<double> margin_trace; // min_k E^_k at each subproblem optimum
        int iterations = 0;
        bool converged = false; // margin fell below epsilon
        int kernel_iterations = 0;
        bool kernel_limit_hit = false;
    };

    struct MmReport
    {
        std::vector<double> objective_trace; // profile objective at x^(0), x^(1), ...
        std::vector<DinkelbachReport> inner;
        int iterations = 0;
        bool converged = false; // relative-change test fired
        bool kernel_limit_hit = false;
        bool proper_restart_won = false; // the report describes the proper restart
    };

    /// The convex problem: maximize t s.t. E^_k(x, mu) >= t, 0 <= p <= P,
    /// |q_k| <= p_k, over (p1, p2, Re q1, Im q1, Re q2, Im q2, t).
    ConvexSubproblem dinkelbach_subproblem(const ScenarioConfig &cfg, const LinkVectors &vecs,
                                           const ExpansionPoint &x0, double mu, const ProfileWeights &w);

    /// Generalized Dinkelbach iterations on the surrogate ratios anchored at x0.
    /// Returns the best iterate found; its surrogate objective is never below
    /// the one of x0.
    std::pair<TxSignal, DinkelbachReport> dinkelbach(const ScenarioConfig &cfg, const LinkVectors &vecs,
                                                     const ExpansionPoint &x0, const ProfileWeights &w,
                                                     const FpSettings &settings);

    /// The starting point selected by settings.start.
    TxSignal mm_start(const ScenarioConfig &cfg, const LinkVectors &vecs, const ProfileWeights &w,
                      const FpSettings &settings);

    /// Majorization-minimization over successive surrogate problems, starting
    /// at mm_start(...) and, with proper_restart, at the PGS point as well.
    std::pair<TxSignal, MmReport> mm_outer(const ScenarioConfig &cfg, const LinkVectors &vecs, const ProfileWeights &w,
                                           const FpSettings &settings);

    /// ||new - old|| / ||old||. A zero denominator counts as "not converged"
    /// (infinity) unless nothing changed at all.
    double relative_change(const Eigen::VectorXcd &old_value, const Eigen::VectorXcd &new_value);

} // namespace icigs

#endif
