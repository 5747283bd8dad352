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

#ifndef ICIGS_S_IGS_HPP
#define ICIGS_S_IGS_HPP

#include "icigs/fp_igs.hpp"

#include <string>
#include <vector>

namespace icigs
{
    enum class RejectionReason
    {
        none,
        nonpositive_diagonal,
        nonpositive_determinant,
        budget_exceeded
    };

    std::string to_string(RejectionReason r);

    /// Verdict of the proper-signaling power feasibility test for one target E'.
    struct FeasibilityCertificate
    {
        bool feasible = false;
        Eigen::Matrix2d A = Eigen::Matrix2d::Zero(); // row k: a_k^T - sqrt(1 + alpha_k E') b_k^T
        Vec2 y = Vec2::Zero();                       // (sqrt(1 + alpha_k E') - 1) sigma^2
        Vec2 intersection = Vec2::Zero();            // A^{-1} y, the smallest admissible powers
        RejectionReason rejection_reason = RejectionReason::none;
    };

    struct PgsResult
    {
        double profile_value = 0.0;          // E*
        Vec2 power = Vec2::Zero();           // p*
        Vec2 baseline_psinr = Vec2::Ones();  // E_{p,k}: exact PSINR at (p*, q = 0)
    };

    /// ((sigma^2 + a_k^T p) / (sigma^2 + b_k^T p))^2, a lower bound on the
    /// PSINR with q = 0 that is tight iff the distortion is proper.
    double proper_psinr_lower_bound(const ScenarioConfig &cfg, const LinkVectors &vecs, const Vec2 &p, int k);

    /// Closed-form test: is there 0 <= p <= P with
    /// (sigma^2 + a_k^T p) / (sigma^2 + b_k^T p) >= sqrt(1 + alpha_k E') for both k?
    FeasibilityCertificate feasibility_closed_form(const ScenarioConfig &cfg, const LinkVectors &vecs,
                                                   const ProfileWeights &w, double target);

    /// Bisection over E' with the closed-form test. E* is feasible and
    /// E* + tol is not (unless the bracket collapsed to E* = 0).
    PgsResult pgs_power(const ScenarioConfig &cfg, const LinkVectors &vecs, const ProfileWeights &w,
                        double tol = 1e-10);

    struct DcpReport
    {
        std::vector<double> objective_trace; // min_k t_k at q^(0) = 0, q^(1), ...
        int iterations = 0;
        bool converged = false;
        bool improper_accepted = false; // false: fell back to q = 0
        int kernel_iterations = 0;
        bool kernel_limit_hit = false;
    };

    struct DcpSettings
    {
        int max_iter = 40;
        double epsilon = 1e-4;
        double kernel_tol = 1e-8;
        int kernel_max_iter = 200;
    };

    /// min_k t_k(q) with t_k = (u_k(p*, q) - E_{p,k} v_k(p*, q)) / alpha_k,
    /// the relaxed objective of the complementary-variance design.
    double dcp_objective(const ScenarioConfig &cfg, const LinkVectors &vecs, const PgsResult &pgs,
                         const ProfileWeights &w, const CVec2 &q);

    /// Convex problem solved at each DCP step, anchored at q_anchor, over
    /// (p1, p2, Re q1, Im q1, Re q2, Im q2, s) with p fixed at p*.
    ConvexSubproblem dcp_subproblem(const ScenarioConfig &cfg, const LinkVectors &vecs, const PgsResult &pgs,
                                    const ProfileWeights &w, const CVec2 &q_anchor);

    /// Complementary-variance design for fixed powers p*. Returns (p*, q) if
    /// both users strictly gain over (p*, 0), otherwise (p*, 0).
    std::pair<TxSignal, DcpReport> dcp_complementary(const ScenarioConfig &cfg, const LinkVectors &vecs,
                                                     const PgsResult &pgs, const ProfileWeights &w,
                                                     const DcpSettings &settings = {});

} // namespace icigs

#endif
