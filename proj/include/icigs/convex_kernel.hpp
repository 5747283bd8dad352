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

#ifndef ICIGS_CONVEX_KERNEL_HPP
#define ICIGS_CONVEX_KERNEL_HPP

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace icigs
{
    /// constant + linear . x + x^T quadratic x >= 0, with quadratic negative semidefinite.
    struct ConcaveQuadratic
    {
        double constant = 0.0;
        Eigen::VectorXd linear;
        Eigen::MatrixXd quadratic;

        double value(const Eigen::VectorXd &x) const { return constant + linear.dot(x) + x.dot(quadratic * x); }
    };

    /// x[re]^2 + x[im]^2 <= x[radius]^2 with x[radius] >= 0.
    struct ConeConstraint
    {
        int radius = 0;
        int re = 0;
        int im = 0;
    };

    /// maximize objective . x subject to concave-quadratic constraints, boxes and cones.
    ///
    /// Boxes may be infinite on either side. A box with lower == upper fixes the
    /// coordinate; fixed coordinates are eliminated before the barrier method runs,
    /// and a cone whose radius is fixed at zero pins its two coordinates to zero.
    struct ConvexSubproblem
    {
        Eigen::VectorXd objective;
        std::vector<ConcaveQuadratic> constraints;
        Eigen::VectorXd lower;
        Eigen::VectorXd upper;
        std::vector<ConeConstraint> cones;
        /// Optional starting point. Used as-is when strictly feasible, otherwise
        /// as the phase-1 start.
        Eigen::VectorXd initial;

        explicit ConvexSubproblem(int dimension = 0);

        int dimension() const { return static_cast<int>(objective.size()); }

        /// Throws std::invalid_argument on inconsistent sizes, bad indices or a
        /// quadratic part that is not negative semidefinite.
        void validate() const;
    };

    enum class SolveStatus
    {
        optimal,
        infeasible,
        iteration_limit
    };

    std::string to_string(SolveStatus s);

    struct SolveReport
    {
        Eigen::VectorXd solution;
        double objective = 0.0;
        SolveStatus status = SolveStatus::iteration_limit;
        /// Duality-gap bound m / tau of the last centering step, relative to
        /// max(1, |objective|).
        double kkt_residual = 0.0;
        int iterations = 0;
        std::vector<double> trace; // objective after each Newton step
    };

    /// Primal log-barrier interior-point method with exact Newton steps.
    /// Deterministic: identical inputs give bit-identical reports.
    SolveReport solve(const ConvexSubproblem &problem, double tol = 1e-8, int max_iter = 200);

    /// Largest value in [lo, inf) for which a monotone predicate holds, to
    /// within tol. hi is doubled away from lo until the predicate fails.
    /// Throws std::invalid_argument if feasible(lo) is false.
    double bisection(const std::function<bool(double)> &feasible, double lo, double hi, double tol);

} // namespace icigs

#endif
