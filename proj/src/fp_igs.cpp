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

#include "icigs/fp_igs.hpp"
#include "icigs/s_igs.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace icigs
{
    void ProfileWeights::validate() const
    {
        if (!(alpha1 >= 0.0 && alpha1 <= 1.0 && alpha2 >= 0.0 && alpha2 <= 1.0))
            throw std::invalid_argument("profile weights must lie in [0, 1]");
        if (std::abs(alpha1 + alpha2 - 1.0) > 1e-12)
            throw std::invalid_argument("profile weights must sum to 1");
    }

    void FpSettings::validate() const
    {
        if (!(epsilon > 0.0))
            throw std::invalid_argument("epsilon must be > 0");
        if (max_outer < 1 || max_inner < 1)
            throw std::invalid_argument("iteration caps must be >= 1");
        if (!(seed_circularity >= 0.0 && seed_circularity <= 1.0))
            throw std::invalid_argument("seed_circularity must lie in [0, 1]");
        if (!(kernel_tol > 0.0) || kernel_max_iter < 1)
            throw std::invalid_argument("invalid kernel settings");
    }

    double profile_objective(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig,
                             const ProfileWeights &w)
    {
        double best = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 2; ++k)
            if (w.weighted(k))
                best = std::min(best, (psinr(cfg, vecs, sig, k) - 1.0) / w.clamped(k));
        return best;
    }

    double surrogate_objective(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0,
                               const TxSignal &sig, const ProfileWeights &w)
    {
        double best = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 2; ++k)
            if (w.weighted(k))
                best = std::min(best, (e_tilde(cfg, vecs, x0, sig, k) - 1.0) / w.clamped(k));
        return best;
    }

    double relative_change(const Eigen::VectorXcd &old_value, const Eigen::VectorXcd &new_value)
    {
        const double diff = (new_value - old_value).norm();
        const double base = old_value.norm();
        if (diff == 0.0)
            return 0.0;
        if (base == 0.0)
            return std::numeric_limits<double>::infinity();
        return diff / base;
    }

    TxSignal mm_start(const ScenarioConfig &cfg, const LinkVectors &vecs, const ProfileWeights &w,
                      const FpSettings &settings)
    {
        switch (settings.start)
        {
        case FpStart::zero:
            return {};
        case FpStart::custom:
            return settings.initial;
        case FpStart::proper_seeded:
            break;
        }
        static constexpr double phase[2] = {0.7853981633974483, 2.356194490192345};
        TxSignal s;
        s.p = pgs_power(cfg, vecs, w).power;
        for (int k = 0; k < 2; ++k)
            s.q[k] = std::polar(settings.seed_circularity * s.p[k], phase[k]);
        return s;
    }

    ConvexSubproblem dinkelbach_subproblem(const ScenarioConfig &cfg, const LinkVectors &vecs,
                                           const ExpansionPoint &x0, double mu, const ProfileWeights &w)
    {
        ConvexSubproblem sp(7);
        sp.objective[6] = 1.0;

        for (int k = 0; k < 2; ++k)
        {
            // unweighted user: u~_k - v~_k >= 0
            const bool w_k = w.weighted(k);
            const QuadraticForm e = e_hat_form(cfg, vecs, x0, k, w_k ? mu : 0.0, w.clamped(k));
            ConcaveQuadratic c;
            c.constant = e.constant;
            c.linear = Eigen::VectorXd::Zero(7);
            c.linear.head<6>() = e.linear;
            c.linear[6] = w_k ? -1.0 : 0.0;
            c.quadratic = Eigen::MatrixXd::Zero(7, 7);
            c.quadratic.topLeftCorner<6, 6>() = e.quadratic;
            sp.constraints.push_back(std::move(c));
        }
        for (int k = 0; k < 2; ++k)
        {
            sp.lower[k] = 0.0;
            sp.upper[k] = cfg.power_budgets[k];
        }
        sp.cones = {{0, 2, 3}, {1, 4, 5}};

        // Interior start: half budget, proper signals, t below both margins.
        sp.initial = Eigen::VectorXd::Zero(7);
        sp.initial.head<2>() = 0.5 * cfg.power_budgets;
        double t0 = std::numeric_limits<double>::infinity();
        for (const auto &c : sp.constraints)
            t0 = std::min(t0, c.value(sp.initial));
        sp.initial[6] = t0 - std::max(1.0, std::abs(t0));
        return sp;
    }

    std::pair<TxSignal, DinkelbachReport> dinkelbach(const ScenarioConfig &cfg, const LinkVectors &vecs,
                                                     const ExpansionPoint &x0, const ProfileWeights &w,
                                                     const FpSettings &settings)
    {
        settings.validate();
        DinkelbachReport rep;
        TxSignal best = x0.signal();
        double mu = surrogate_objective(cfg, vecs, x0, best, w);
        rep.mu_trace.push_back(mu);

        for (int l = 1; l <= settings.max_inner; ++l)
        {
            const ConvexSubproblem sp = dinkelbach_subproblem(cfg, vecs, x0, mu, w);
            const SolveReport sol = solve(sp, settings.kernel_tol, settings.kernel_max_iter);
            rep.kernel_iterations += sol.iterations;
            if (sol.status == SolveStatus::infeasible)
                throw std::runtime_error("Dinkelbach subproblem reported infeasible; the expansion point is always "
                                         "feasible, so the instance is corrupt");
            if (sol.status == SolveStatus::iteration_limit)
                rep.kernel_limit_hit = true;

            const TxSignal x = unpack(sol.solution.head<6>());
            double margin = std::numeric_limits<double>::infinity();
            for (int k = 0; k < 2; ++k)
                if (w.weighted(k))
                    margin = std::min(margin, e_hat(cfg, vecs, x0, x, k, mu, w.clamped(k)));
            rep.margin_trace.push_back(margin);
            rep.iterations = l;

            const double mu_next = surrogate_objective(cfg, vecs, x0, x, w);
            if (mu_next >= mu)
                best = x;
            if (margin < settings.epsilon)
            {
                rep.converged = true;
                break;
            }
            if (!(mu_next > mu))
                break; // inexact subproblem solution: no further ascent available
            mu = mu_next;
            rep.mu_trace.push_back(mu);
        }
        return {best, rep};
    }

    namespace
    {
        std::pair<TxSignal, MmReport> mm_run(const ScenarioConfig &cfg, const LinkVectors &vecs,
                                             const ProfileWeights &w, const FpSettings &settings, TxSignal x)
        {
            MmReport rep;
            rep.objective_trace.push_back(profile_objective(cfg, vecs, x, w));

            for (int m = 1; m <= settings.max_outer; ++m)
            {
                auto [next, inner] = dinkelbach(cfg, vecs, ExpansionPoint(x), w, settings);
                rep.kernel_limit_hit = rep.kernel_limit_hit || inner.kernel_limit_hit;
                rep.inner.push_back(std::move(inner));
                rep.iterations = m;

                const bool settled = relative_change(x.p.cast<cplx>(), next.p.cast<cplx>()) < settings.epsilon &&
                                     relative_change(x.q, next.q) < settings.epsilon;
                x = next;
                rep.objective_trace.push_back(profile_objective(cfg, vecs, x, w));
                if (settled)
                {
                    rep.converged = true;
                    break;
                }
            }
            return {x, rep};
        }
    } // namespace

    std::pair<TxSignal, MmReport> mm_outer(const ScenarioConfig &cfg, const LinkVectors &vecs, const ProfileWeights &w,
                                           const FpSettings &settings)
    {
        settings.validate();
        w.validate();
        const TxSignal x = mm_start(cfg, vecs, w, settings);
        if (!x.feasible_in(cfg, 1e-9))
            throw std::invalid_argument("initial point is outside the feasible set");

        auto result = mm_run(cfg, vecs, w, settings, x);
        if (!settings.proper_restart)
            return result;

        const TxSignal proper{pgs_power(cfg, vecs, w).power, CVec2::Zero()};
        if (proper.p == x.p && proper.q == x.q)
            return result;
        auto alt = mm_run(cfg, vecs, w, settings, proper);
        if (alt.second.objective_trace.back() > result.second.objective_trace.back())
        {
            alt.second.proper_restart_won = true;
            return alt;
        }
        return result;
    }

} // namespace icigs
