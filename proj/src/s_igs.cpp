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

#include "icigs/s_igs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace icigs
{
    std::string to_string(RejectionReason r)
    {
        switch (r)
        {
        case RejectionReason::none:
            return "none";
        case RejectionReason::nonpositive_diagonal:
            return "nonpositive-diagonal";
        case RejectionReason::nonpositive_determinant:
            return "nonpositive-determinant";
        case RejectionReason::budget_exceeded:
            return "budget-exceeded";
        }
        return "unknown";
    }

    double proper_psinr_lower_bound(const ScenarioConfig &cfg, const LinkVectors &vecs, const Vec2 &p, int k)
    {
        const double ratio = (cfg.noise_power + vecs.a[k].dot(p)) / (cfg.noise_power + vecs.b[k].dot(p));
        return ratio * ratio;
    }

    FeasibilityCertificate feasibility_closed_form(const ScenarioConfig &cfg, const LinkVectors &vecs,
                                                   const ProfileWeights &w, double target)
    {
        if (!(target >= 0.0))
            throw std::invalid_argument("target profile value must be >= 0");

        FeasibilityCertificate cert;
        for (int k = 0; k < 2; ++k)
        {
            const double root = std::sqrt(1.0 + w[k] * target);
            cert.A.row(k) = (vecs.a[k] - root * vecs.b[k]).transpose();
            cert.y[k] = (root - 1.0) * cfg.noise_power;
        }

        // A zero target is met by p = 0 whatever A looks like.
        if (cert.y.isZero(0.0))
        {
            cert.feasible = true;
            return cert;
        }
        if (!(cert.A(0, 0) > 0.0) || !(cert.A(1, 1) > 0.0))
        {
            cert.rejection_reason = RejectionReason::nonpositive_diagonal;
            return cert;
        }
        const double det = cert.A.determinant();
        if (!(det > 0.0))
        {
            cert.rejection_reason = RejectionReason::nonpositive_determinant;
            return cert;
        }
        cert.intersection << (cert.A(1, 1) * cert.y[0] - cert.A(0, 1) * cert.y[1]) / det,
            (-cert.A(1, 0) * cert.y[0] + cert.A(0, 0) * cert.y[1]) / det;

        for (int k = 0; k < 2; ++k)
            if (!(cert.intersection[k] >= 0.0) || !(cert.intersection[k] <= cfg.power_budgets[k]))
            {
                cert.rejection_reason = RejectionReason::budget_exceeded;
                return cert;
            }
        cert.feasible = true;
        return cert;
    }

    PgsResult pgs_power(const ScenarioConfig &cfg, const LinkVectors &vecs, const ProfileWeights &w, double tol)
    {
        if (!(tol > 0.0))
            throw std::invalid_argument("bisection tolerance must be > 0");
        w.validate();

        PgsResult res;
        auto feasible = [&](double e) { return feasibility_closed_form(cfg, vecs, w, e).feasible; };

        // Any achievable profile value obeys E' <= (E_k^max - 1) / alpha_k for both k.
        double hi = std::numeric_limits<double>::infinity();
        const double s4 = cfg.noise_power * cfg.noise_power;
        for (int k = 0; k < 2; ++k)
        {
            const double top = cfg.noise_power + vecs.a[k].dot(cfg.power_budgets);
            hi = std::min(hi, (top * top / s4 - 1.0) / w.clamped(k));
        }

        if (hi > 0.0 && feasible(0.0))
            res.profile_value = bisection(feasible, 0.0, hi, tol);

        const FeasibilityCertificate cert = feasibility_closed_form(cfg, vecs, w, res.profile_value);
        res.power = cert.feasible ? cert.intersection : Vec2::Zero();
        res.power = res.power.cwiseMax(0.0).cwiseMin(cfg.power_budgets);

        const TxSignal proper{res.power, CVec2::Zero()};
        res.baseline_psinr = psinrs(cfg, vecs, proper);
        return res;
    }

    namespace
    {
        struct DcpTerms
        {
            ComplexLinear numerator;   // f_k^H q + f~_k^H p
            ComplexLinear denominator; // g_k^H q + f~_k^H p
            double constant = 0.0;     // (sigma^2 + a_k^T p*)^2 - E_pk (sigma^2 + b_k^T p*)^2
        };

        DcpTerms dcp_terms(const ScenarioConfig &cfg, const LinkVectors &vecs, const PgsResult &pgs, int k)
        {
            DcpTerms t;
            t.numerator = numerator_pseudo_form(vecs, k);
            t.denominator = denominator_pseudo_form(vecs, k);
            const double ca = cfg.noise_power + vecs.a[k].dot(pgs.power);
            const double cb = cfg.noise_power + vecs.b[k].dot(pgs.power);
            t.constant = ca * ca - pgs.baseline_psinr[k] * cb * cb;
            return t;
        }
    } // namespace

    double dcp_objective(const ScenarioConfig &cfg, const LinkVectors &vecs, const PgsResult &pgs,
                         const ProfileWeights &w, const CVec2 &q)
    {
        const Vec6 x = pack({pgs.power, q});
        double best = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 2; ++k)
        {
            const DcpTerms t = dcp_terms(cfg, vecs, pgs, k);
            const double lhs = pgs.baseline_psinr[k] * std::norm(t.denominator.value(x)) -
                               std::norm(t.numerator.value(x)) + t.constant;
            best = std::min(best, lhs / w.clamped(k));
        }
        return best;
    }

    ConvexSubproblem dcp_subproblem(const ScenarioConfig &cfg, const LinkVectors &vecs, const PgsResult &pgs,
                                    const ProfileWeights &w, const CVec2 &q_anchor)
    {
        const Vec6 anchor = pack({pgs.power, q_anchor});
        ConvexSubproblem sp(7);
        sp.objective[6] = 1.0;
        for (int k = 0; k < 2; ++k)
        {
            const DcpTerms t = dcp_terms(cfg, vecs, pgs, k);
            QuadraticForm lhs = pgs.baseline_psinr[k] * t.denominator.linearized_squared_magnitude(anchor) -
                                t.numerator.squared_magnitude();
            lhs.constant += t.constant;

            ConcaveQuadratic c;
            c.constant = lhs.constant;
            c.linear = Eigen::VectorXd::Zero(7);
            c.linear.head<6>() = lhs.linear;
            c.linear[6] = -w.clamped(k);
            c.quadratic = Eigen::MatrixXd::Zero(7, 7);
            c.quadratic.topLeftCorner<6, 6>() = lhs.quadratic;
            sp.constraints.push_back(std::move(c));
        }
        for (int k = 0; k < 2; ++k)
            sp.lower[k] = sp.upper[k] = pgs.power[k];
        sp.cones = {{0, 2, 3}, {1, 4, 5}};

        sp.initial = Eigen::VectorXd::Zero(7);
        sp.initial.head<6>() = pack({pgs.power, 0.5 * q_anchor});
        double s0 = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 2; ++k)
        {
            const auto &c = sp.constraints[k];
            s0 = std::min(s0, (c.constant + c.linear.head<6>().dot(sp.initial.head<6>()) +
                               sp.initial.head<6>().dot(c.quadratic.topLeftCorner<6, 6>() * sp.initial.head<6>())) /
                                  w.clamped(k));
        }
        sp.initial[6] = s0 - std::max(1.0, std::abs(s0));
        return sp;
    }

    std::pair<TxSignal, DcpReport> dcp_complementary(const ScenarioConfig &cfg, const LinkVectors &vecs,
                                                     const PgsResult &pgs, const ProfileWeights &w,
                                                     const DcpSettings &settings)
    {
        if (settings.max_iter < 1 || !(settings.epsilon > 0.0))
            throw std::invalid_argument("invalid DCP settings");

        DcpReport rep;
        CVec2 q = CVec2::Zero();
        double objective = dcp_objective(cfg, vecs, pgs, w, q);
        rep.objective_trace.push_back(objective);

        for (int l = 1; l <= settings.max_iter; ++l)
        {
            const SolveReport sol = solve(dcp_subproblem(cfg, vecs, pgs, w, q), settings.kernel_tol,
                                          settings.kernel_max_iter);
            rep.kernel_iterations += sol.iterations;
            rep.iterations = l;
            if (sol.status == SolveStatus::infeasible)
                throw std::runtime_error("DCP subproblem reported infeasible; its anchor is always feasible");
            if (sol.status == SolveStatus::iteration_limit)
                rep.kernel_limit_hit = true;

            const CVec2 next = unpack(sol.solution.head<6>()).q;
            const double next_objective = dcp_objective(cfg, vecs, pgs, w, next);
            if (!(next_objective >= objective))
                break; // inexact step would descend; keep the current iterate
            const double change = relative_change(q, next);
            q = next;
            objective = next_objective;
            rep.objective_trace.push_back(objective);
            if (change < settings.epsilon)
            {
                rep.converged = true;
                break;
            }
        }

        const TxSignal proper{pgs.power, CVec2::Zero()};
        const TxSignal improper{pgs.power, q};
        if (objective > 0.0)
        {
            const Vec2 base = rates(cfg, vecs, proper);
            const Vec2 gain = rates(cfg, vecs, improper);
            if ((gain.array() >= base.array()).all())
            {
                rep.improper_accepted = true;
                return {improper, rep};
            }
        }
        return {proper, rep};
    }

} // namespace icigs
