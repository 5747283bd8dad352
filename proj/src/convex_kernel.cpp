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

#include "icigs/convex_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace icigs
{
    using Eigen::MatrixXd;
    using Eigen::VectorXd;

    namespace
    {
        constexpr double inf = std::numeric_limits<double>::infinity();
        constexpr double barrier_growth = 10.0;
        constexpr double centering_tol = 1e-9; // on half the squared Newton decrement

        struct Affine
        {
            VectorXd coef;
            double c = 0.0;
            double at(const VectorXd &z) const { return c + coef.dot(z); }
        };

        struct Quad
        {
            double c = 0.0;
            VectorXd l;
            MatrixXd Q;
            double at(const VectorXd &z) const { return c + l.dot(z) + z.dot(Q * z); }
        };

        struct Cone
        {
            Affine r, re, im;
        };

        // Problem over the free coordinates only.
        struct Reduced
        {
            VectorXd obj;
            double obj_const = 0.0;
            std::vector<Quad> quads;
            VectorXd lo, hi;
            std::vector<Cone> cones;

            int n() const { return static_cast<int>(obj.size()); }

            int barrier_parameter() const
            {
                int m = static_cast<int>(quads.size()) + 2 * static_cast<int>(cones.size());
                for (int j = 0; j < n(); ++j)
                    m += (std::isfinite(lo[j]) ? 1 : 0) + (std::isfinite(hi[j]) ? 1 : 0);
                return m;
            }

            double cone_arg(const Cone &k, const VectorXd &z) const
            {
                const double r = k.r.at(z), a = k.re.at(z), b = k.im.at(z);
                return r * r - a * a - b * b;
            }

            bool strictly_feasible(const VectorXd &z) const
            {
                for (int j = 0; j < n(); ++j)
                    if (!(z[j] > lo[j] && z[j] < hi[j]))
                        return false;
                for (const auto &q : quads)
                    if (!(q.at(z) > 0.0))
                        return false;
                for (const auto &k : cones)
                    if (!(k.r.at(z) > 0.0) || !(cone_arg(k, z) > 0.0))
                        return false;
                return true;
            }

            // Smallest constraint slack, cones measured as r - |(re, im)|.
            double min_margin(const VectorXd &z) const
            {
                double m = inf;
                for (int j = 0; j < n(); ++j)
                {
                    if (std::isfinite(lo[j]))
                        m = std::min(m, z[j] - lo[j]);
                    if (std::isfinite(hi[j]))
                        m = std::min(m, hi[j] - z[j]);
                }
                for (const auto &q : quads)
                    m = std::min(m, q.at(z));
                for (const auto &k : cones)
                    m = std::min(m, k.r.at(z) - std::hypot(k.re.at(z), k.im.at(z)));
                return m;
            }

            // Change of the barrier function from z to z + step, term by term to
            // avoid cancellation when tau * objective is large.
            double barrier_change(const VectorXd &z, const VectorXd &step, double tau) const
            {
                const VectorXd w = z + step;
                double d = -tau * obj.dot(step);
                for (int j = 0; j < n(); ++j)
                {
                    if (std::isfinite(lo[j]))
                        d -= std::log((w[j] - lo[j]) / (z[j] - lo[j]));
                    if (std::isfinite(hi[j]))
                        d -= std::log((hi[j] - w[j]) / (hi[j] - z[j]));
                }
                for (const auto &q : quads)
                    d -= std::log(q.at(w) / q.at(z));
                for (const auto &k : cones)
                    d -= std::log(cone_arg(k, w) / cone_arg(k, z));
                return d;
            }

            void gradient_hessian(const VectorXd &z, double tau, VectorXd &g, MatrixXd &H) const
            {
                g = -tau * obj;
                H.setZero(n(), n());
                for (int j = 0; j < n(); ++j)
                {
                    if (std::isfinite(lo[j]))
                    {
                        const double s = z[j] - lo[j];
                        g[j] -= 1.0 / s;
                        H(j, j) += 1.0 / (s * s);
                    }
                    if (std::isfinite(hi[j]))
                    {
                        const double s = hi[j] - z[j];
                        g[j] += 1.0 / s;
                        H(j, j) += 1.0 / (s * s);
                    }
                }
                for (const auto &q : quads)
                {
                    const double v = q.at(z);
                    const VectorXd dv = q.l + 2.0 * q.Q * z;
                    g -= dv / v;
                    H.noalias() += dv * dv.transpose() / (v * v);
                    H.noalias() -= (2.0 / v) * q.Q;
                }
                for (const auto &k : cones)
                {
                    const double r = k.r.at(z), a = k.re.at(z), b = k.im.at(z);
                    const double v = r * r - a * a - b * b;
                    const VectorXd dv = 2.0 * (r * k.r.coef - a * k.re.coef - b * k.im.coef);
                    g -= dv / v;
                    H.noalias() += dv * dv.transpose() / (v * v);
                    H.noalias() -= (2.0 / v) *
                                   (k.r.coef * k.r.coef.transpose() - k.re.coef * k.re.coef.transpose() -
                                    k.im.coef * k.im.coef.transpose());
                }
            }
        };

        struct BarrierResult
        {
            VectorXd z;
            SolveStatus status = SolveStatus::iteration_limit;
            double gap = inf;
            bool stopped_early = false;
        };

        // Solves H d = -g; falls back to a regularized factorization when H is
        // numerically singular.
        VectorXd newton_direction(const MatrixXd &H, const VectorXd &g)
        {
            Eigen::LLT<MatrixXd> llt(H);
            if (llt.info() == Eigen::Success)
            {
                VectorXd d = llt.solve(-g);
                if (d.allFinite())
                    return d;
            }
            const double scale = std::max(1.0, H.diagonal().cwiseAbs().maxCoeff());
            double reg = 1e-14 * scale;
            for (int attempt = 0; attempt < 30; ++attempt, reg *= 10.0)
            {
                MatrixXd Hr = H;
                Hr.diagonal().array() += reg;
                Eigen::LLT<MatrixXd> r(Hr);
                if (r.info() == Eigen::Success)
                {
                    VectorXd d = r.solve(-g);
                    if (d.allFinite())
                        return d;
                }
            }
            return -g / scale;
        }

        BarrierResult barrier_method(const Reduced &P, VectorXd z, double tol, int &iterations, int max_iter,
                                     std::vector<double> &trace,
                                     const std::function<bool(const VectorXd &)> &stop = {})
        {
            BarrierResult res;
            const int m = std::max(1, P.barrier_parameter());
            double tau = static_cast<double>(m) / std::max(1.0, std::abs(P.obj.dot(z)));

            VectorXd g;
            MatrixXd H;
            for (;;)
            {
                // centering
                for (;;)
                {
                    P.gradient_hessian(z, tau, g, H);
                    const VectorXd d = newton_direction(H, g);
                    const double decrement = -g.dot(d);
                    if (!(decrement > 2.0 * centering_tol))
                        break;
                    if (iterations >= max_iter)
                    {
                        res.z = z;
                        res.status = SolveStatus::iteration_limit;
                        res.gap = static_cast<double>(m) / tau;
                        return res;
                    }

                    double t = 1.0;
                    int shrink = 0;
                    while (!P.strictly_feasible(z + t * d) && shrink < 200)
                    {
                        t *= 0.5;
                        ++shrink;
                    }
                    while (shrink < 200 && P.barrier_change(z, t * d, tau) > 0.25 * t * g.dot(d))
                    {
                        t *= 0.5;
                        ++shrink;
                    }
                    if (shrink >= 200 || t * d.norm() <= 1e-15 * (1.0 + z.norm()))
                        break; // no representable progress along d
                    z += t * d;
                    ++iterations;
                    trace.push_back(P.obj.dot(z) + P.obj_const);

                    if (stop && stop(z))
                    {
                        res.z = z;
                        res.stopped_early = true;
                        res.status = SolveStatus::optimal;
                        res.gap = static_cast<double>(m) / tau;
                        return res;
                    }
                }

                res.gap = static_cast<double>(m) / tau;
                if (res.gap <= tol * std::max(1.0, std::abs(P.obj.dot(z) + P.obj_const)))
                {
                    res.z = z;
                    res.status = SolveStatus::optimal;
                    return res;
                }
                tau *= barrier_growth;
            }
        }

        Affine affine_of(const VectorXd &full_coef, double c, const std::vector<int> &free_idx,
                         const VectorXd &fixed_values)
        {
            Affine a;
            a.coef.resize(static_cast<int>(free_idx.size()));
            a.c = c + full_coef.dot(fixed_values);
            for (int i = 0; i < static_cast<int>(free_idx.size()); ++i)
                a.coef[i] = full_coef[free_idx[i]];
            return a;
        }

        VectorXd unit(int n, int i)
        {
            VectorXd e = VectorXd::Zero(n);
            e[i] = 1.0;
            return e;
        }

    } // namespace

    ConvexSubproblem::ConvexSubproblem(int dimension)
        : objective(VectorXd::Zero(dimension)), lower(VectorXd::Constant(dimension, -inf)),
          upper(VectorXd::Constant(dimension, inf))
    {
    }

    void ConvexSubproblem::validate() const
    {
        const int n = dimension();
        if (lower.size() != n || upper.size() != n)
            throw std::invalid_argument("box bounds must match the objective dimension");
        if (initial.size() != 0 && initial.size() != n)
            throw std::invalid_argument("initial point has the wrong dimension");
        for (const auto &c : constraints)
        {
            if (c.linear.size() != n || c.quadratic.rows() != n || c.quadratic.cols() != n)
                throw std::invalid_argument("constraint dimension mismatch");
            const MatrixXd sym = 0.5 * (c.quadratic + c.quadratic.transpose());
            const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
            if (n > 0)
            {
                Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym, Eigen::EigenvaluesOnly);
                if (es.eigenvalues().maxCoeff() > 1e-10 * scale)
                    throw std::invalid_argument("constraint quadratic part is not negative semidefinite");
            }
        }
        for (const auto &k : cones)
            for (int idx : {k.radius, k.re, k.im})
                if (idx < 0 || idx >= n)
                    throw std::invalid_argument("cone index out of range");
    }

    std::string to_string(SolveStatus s)
    {
        switch (s)
        {
        case SolveStatus::optimal:
            return "optimal";
        case SolveStatus::infeasible:
            return "infeasible";
        case SolveStatus::iteration_limit:
            return "iteration-limit";
        }
        return "unknown";
    }

    SolveReport solve(const ConvexSubproblem &problem, double tol, int max_iter)
    {
        if (!(tol > 0.0))
            throw std::invalid_argument("solver tolerance must be positive");
        problem.validate();

        const int n = problem.dimension();
        SolveReport report;
        report.solution = problem.initial.size() == n ? problem.initial : VectorXd::Zero(n);

        auto infeasible = [&]() {
            report.status = SolveStatus::infeasible;
            report.objective = problem.objective.dot(report.solution);
            return report;
        };

        // Fixed coordinates, including those pinned by zero-radius cones.
        VectorXd lo = problem.lower, hi = problem.upper;
        for (int j = 0; j < n; ++j)
            if (lo[j] > hi[j] || std::isnan(lo[j]) || std::isnan(hi[j]))
                return infeasible();
        std::vector<bool> fixed(n, false);
        for (int j = 0; j < n; ++j)
            fixed[j] = lo[j] == hi[j];
        for (const auto &k : problem.cones)
        {
            if (!fixed[k.radius])
                continue;
            if (lo[k.radius] < 0.0)
                return infeasible();
            if (lo[k.radius] == 0.0)
                for (int idx : {k.re, k.im})
                {
                    if (fixed[idx] && lo[idx] != 0.0)
                        return infeasible();
                    if (lo[idx] > 0.0 || hi[idx] < 0.0)
                        return infeasible();
                    fixed[idx] = true;
                    lo[idx] = hi[idx] = 0.0;
                }
        }

        std::vector<int> free_idx;
        VectorXd fixed_values = VectorXd::Zero(n);
        for (int j = 0; j < n; ++j)
        {
            if (fixed[j])
                fixed_values[j] = lo[j];
            else
                free_idx.push_back(j);
        }
        const int nf = static_cast<int>(free_idx.size());

        Reduced R;
        R.obj.resize(nf);
        R.lo.resize(nf);
        R.hi.resize(nf);
        for (int i = 0; i < nf; ++i)
        {
            R.obj[i] = problem.objective[free_idx[i]];
            R.lo[i] = lo[free_idx[i]];
            R.hi[i] = hi[free_idx[i]];
        }
        R.obj_const = problem.objective.dot(fixed_values);

        MatrixXd T = MatrixXd::Zero(n, nf); // full = T z + fixed_values
        for (int i = 0; i < nf; ++i)
            T(free_idx[i], i) = 1.0;

        for (const auto &c : problem.constraints)
        {
            const MatrixXd Q = 0.5 * (c.quadratic + c.quadratic.transpose());
            Quad q;
            q.c = c.constant + c.linear.dot(fixed_values) + fixed_values.dot(Q * fixed_values);
            q.l = T.transpose() * (c.linear + 2.0 * Q * fixed_values);
            q.Q = T.transpose() * Q * T;
            R.quads.push_back(std::move(q));
        }
        for (const auto &k : problem.cones)
        {
            if (fixed[k.radius] && lo[k.radius] == 0.0)
                continue; // coordinates pinned above
            Cone c;
            c.r = affine_of(unit(n, k.radius), 0.0, free_idx, fixed_values);
            c.re = affine_of(unit(n, k.re), 0.0, free_idx, fixed_values);
            c.im = affine_of(unit(n, k.im), 0.0, free_idx, fixed_values);
            R.cones.push_back(std::move(c));
        }

        auto expand = [&](const VectorXd &z) -> VectorXd { return T * z + fixed_values; };

        if (nf == 0)
        {
            const VectorXd z = VectorXd::Zero(0);
            report.solution = fixed_values;
            report.objective = R.obj_const;
            double worst = R.min_margin(z);
            if (!(worst >= -tol * std::max(1.0, std::abs(worst))) && std::isfinite(worst))
                return infeasible();
            report.status = SolveStatus::optimal;
            return report;
        }

        // Starting point over free coordinates.
        VectorXd z(nf);
        for (int i = 0; i < nf; ++i)
        {
            const int j = free_idx[i];
            if (problem.initial.size() == n)
                z[i] = problem.initial[j];
            else if (std::isfinite(R.lo[i]) && std::isfinite(R.hi[i]))
                z[i] = 0.5 * (R.lo[i] + R.hi[i]);
            else if (std::isfinite(R.lo[i]))
                z[i] = R.lo[i] + 1.0;
            else if (std::isfinite(R.hi[i]))
                z[i] = R.hi[i] - 1.0;
            else
                z[i] = 0.0;
        }

        int iterations = 0;
        if (!R.strictly_feasible(z))
        {
            // Phase 1: maximize s subject to every constraint holding with slack s.
            Reduced F;
            const int n1 = nf + 1;
            F.obj = unit(n1, nf);
            F.lo = VectorXd::Constant(n1, -inf);
            F.hi = VectorXd::Constant(n1, inf);
            auto lift = [&](const VectorXd &v, double s_coef) {
                VectorXd w(n1);
                w.head(nf) = v;
                w[nf] = s_coef;
                return w;
            };
            auto affine_row = [&](const VectorXd &coef, double c) {
                Quad q;
                q.c = c;
                q.l = lift(coef, -1.0);
                q.Q = MatrixXd::Zero(n1, n1);
                F.quads.push_back(std::move(q));
            };
            for (int i = 0; i < nf; ++i)
            {
                const VectorXd e = unit(nf, i);
                const double span = 1e6 * (1.0 + std::abs(z[i]));
                affine_row(e, std::isfinite(R.lo[i]) ? -R.lo[i] : -(z[i] - span));
                affine_row(-e, std::isfinite(R.hi[i]) ? R.hi[i] : z[i] + span);
            }
            for (const auto &q : R.quads)
            {
                Quad p;
                p.c = q.c;
                p.l = lift(q.l, -1.0);
                p.Q = MatrixXd::Zero(n1, n1);
                p.Q.topLeftCorner(nf, nf) = q.Q;
                F.quads.push_back(std::move(p));
            }
            for (const auto &k : R.cones)
            {
                Cone c;
                c.r = {lift(k.r.coef, -1.0), k.r.c};
                c.re = {lift(k.re.coef, 0.0), k.re.c};
                c.im = {lift(k.im.coef, 0.0), k.im.c};
                F.cones.push_back(std::move(c));
            }

            const double margin = R.min_margin(z);
            const double s0 = margin - std::max(1.0, std::abs(margin));
            F.hi[nf] = std::max(1.0, std::abs(margin)); // keeps phase 1 bounded
            VectorXd w(n1);
            w.head(nf) = z;
            w[nf] = s0;

            std::vector<double> phase1_trace;
            auto found = [&](const VectorXd &v) { return v[nf] > 0.0 && R.strictly_feasible(v.head(nf)); };
            const BarrierResult p1 = barrier_method(F, w, tol, iterations, max_iter, phase1_trace, found);
            report.iterations = iterations;
            if (!p1.stopped_early)
            {
                report.solution = expand(p1.z.head(nf));
                if (p1.status == SolveStatus::iteration_limit)
                {
                    report.status = SolveStatus::iteration_limit;
                    report.objective = problem.objective.dot(report.solution);
                    return report;
                }
                return infeasible();
            }
            z = p1.z.head(nf);
        }

        const BarrierResult p2 = barrier_method(R, z, tol, iterations, max_iter, report.trace);
        report.solution = expand(p2.z);
        report.objective = problem.objective.dot(report.solution);
        report.status = p2.status;
        report.iterations = iterations;
        report.kkt_residual = p2.gap / std::max(1.0, std::abs(report.objective));
        return report;
    }

    double bisection(const std::function<bool(double)> &feasible, double lo, double hi, double tol)
    {
        if (!(tol > 0.0))
            throw std::invalid_argument("bisection tolerance must be positive");
        if (!feasible(lo))
            throw std::invalid_argument("bisection: predicate is false at the lower end");
        if (!(hi > lo))
            hi = lo + std::max(1.0, std::abs(lo));
        for (int doubling = 0; feasible(hi); ++doubling)
        {
            if (doubling >= 1100)
                return hi;
            lo = hi;
            hi = lo + 2.0 * std::max(hi - lo, std::max(1.0, std::abs(lo)));
        }
        for (int it = 0; hi - lo > tol && it < 4000; ++it)
        {
            const double mid = lo + 0.5 * (hi - lo);
            if (mid <= lo || mid >= hi)
                break;
            if (feasible(mid))
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

} // namespace icigs
