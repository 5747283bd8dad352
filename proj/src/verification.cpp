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

#include "icigs/verification.hpp"

#include <cmath>
#include <numbers>

namespace icigs
{
    TxSignal random_feasible_signal(const ScenarioConfig &cfg, std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        TxSignal s;
        for (int k = 0; k < 2; ++k)
        {
            s.p[k] = u(rng) * cfg.power_budgets[k];
            const double radius = std::sqrt(u(rng)) * s.p[k];
            s.q[k] = std::polar(radius, 2.0 * std::numbers::pi * u(rng));
        }
        return s;
    }

    bool vertex_feasible(const Eigen::Matrix2d &A, const Vec2 &y, const Vec2 &budgets, double tol)
    {
        // Half-planes n . p >= c.
        std::vector<std::pair<Vec2, double>> planes{{A.row(0).transpose(), y[0]},
                                                    {A.row(1).transpose(), y[1]},
                                                    {Vec2(1.0, 0.0), 0.0},
                                                    {Vec2(0.0, 1.0), 0.0},
                                                    {Vec2(-1.0, 0.0), -budgets[0]},
                                                    {Vec2(0.0, -1.0), -budgets[1]}};
        auto inside = [&](const Vec2 &p)
        {
            for (const auto &[n, c] : planes)
                if (n.dot(p) < c - tol * (1.0 + std::abs(c)))
                    return false;
            return true;
        };
        // A nonempty bounded polygon has a vertex on two of its boundary lines.
        for (std::size_t i = 0; i < planes.size(); ++i)
            for (std::size_t j = i + 1; j < planes.size(); ++j)
            {
                Eigen::Matrix2d m;
                m.row(0) = planes[i].first.transpose();
                m.row(1) = planes[j].first.transpose();
                const double det = m.determinant();
                if (std::abs(det) < 1e-300)
                    continue;
                const Vec2 p = m.inverse() * Vec2(planes[i].second, planes[j].second);
                if (inside(p))
                    return true;
            }
        return false;
    }

    std::vector<CheckResult> verify_scenario(const ScenarioConfig &cfg, int samples, std::uint64_t seed)
    {
        cfg.validate();
        const LinkVectors vecs = build_link_vectors(cfg);
        std::mt19937_64 rng(seed);

        CheckResult floor{"psinr-floor", true, 0.0, 1e-12, 0};
        CheckResult minorant{"surrogate-minorant", true, 0.0, 1e-9, 0};
        CheckResult tight{"surrogate-tight", true, 0.0, 1e-9, 0};
        CheckResult bound{"proper-lower-bound", true, 0.0, 1e-12, 0};
        CheckResult closed{"closed-form-vs-vertex", true, 0.0, 0.0, 0};

        auto record = [](CheckResult &c, double violation)
        {
            ++c.samples;
            c.worst = std::max(c.worst, violation);
            if (violation > c.tolerance)
                c.passed = false;
        };

        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int s = 0; s < samples; ++s)
        {
            const TxSignal x = random_feasible_signal(cfg, rng);
            const ExpansionPoint x0(random_feasible_signal(cfg, rng));
            for (int k = 0; k < 2; ++k)
            {
                const double e = psinr(cfg, vecs, x, k);
                record(floor, 1.0 - e);
                record(minorant, (e_tilde(cfg, vecs, x0, x, k) - e) / std::max(1.0, e));
                const double e0 = psinr(cfg, vecs, x0.signal(), k);
                record(tight, std::abs(e_tilde(cfg, vecs, x0, x0.signal(), k) - e0) / std::max(1.0, e0));
                const TxSignal proper{x.p, CVec2::Zero()};
                record(bound, proper_psinr_lower_bound(cfg, vecs, x.p, k) - psinr(cfg, vecs, proper, k));
            }

            const ProfileWeights w = ProfileWeights::from_alpha1(u(rng));
            const double target = 4.0 * u(rng) * (1.0 + db_to_linear(0.0) * cfg.power_budgets.maxCoeff());
            const FeasibilityCertificate cert = feasibility_closed_form(cfg, vecs, w, target);
            ++closed.samples;
            if (cert.feasible != vertex_feasible(cert.A, cert.y, cfg.power_budgets, 1e-9))
            {
                closed.passed = false;
                closed.worst = 1.0;
            }
        }
        return {floor, minorant, tight, bound, closed};
    }

} // namespace icigs
