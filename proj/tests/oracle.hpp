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

// Reference implementations used only by the tests. Everything here is
// written from the scalar channel model, without the library's vector forms.

#ifndef ICIGS_TEST_ORACLE_HPP
#define ICIGS_TEST_ORACLE_HPP

#include "icigs/model.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle
{
    using icigs::cplx;

    /// Channel pair used by the regression scenarios. (j, k) is TX j -> RX k.
    inline Eigen::Matrix2cd h1()
    {
        Eigen::Matrix2cd h;
        h << std::polar(1.4070, 0.2721), std::polar(0.9288, 1.8320), std::polar(0.9288, 1.8320),
            std::polar(1.7367, 1.1136);
        return h;
    }

    inline Eigen::Matrix2cd h2()
    {
        Eigen::Matrix2cd h;
        h << std::polar(0.3764, 1.4381), std::polar(0.4029, 0.9486), std::polar(1.8542, 2.8153),
            std::polar(0.6277, 2.3697);
        return h;
    }

    inline icigs::ScenarioConfig scenario(const Eigen::Matrix2cd &h, double p, double var = 0.0, cplx comp = 0.0,
                                          double noise = 1.0)
    {
        icigs::ScenarioConfig c;
        c.channels = h;
        c.noise_power = noise;
        c.power_budgets = icigs::Vec2(p, p);
        c.hwd = icigs::HwdProfile::uniform(var, comp);
        return c;
    }

    /// Received variance and pseudo-variance at receiver k, with or without
    /// the desired signal.
    struct Moments
    {
        double var = 0.0;
        cplx pseudo = 0.0;
    };

    inline Moments received(const icigs::ScenarioConfig &c, const icigs::Vec2 &p, const icigs::CVec2 &q, int k,
                            bool with_desired)
    {
        Moments m;
        m.var = c.noise_power;
        for (int j = 0; j < 2; ++j)
        {
            const cplx h = c.channels(j, k);
            const double g = std::norm(h);
            m.var += p[j] * g * (1.0 + c.hwd.variance[j][k]);
            m.pseudo += (q[j] + p[j] * c.hwd.complementary[j][k]) * h * h;
            if (j == k && !with_desired)
            {
                m.var -= p[j] * g;
                m.pseudo -= q[j] * h * h;
            }
        }
        return m;
    }

    inline double psinr(const icigs::ScenarioConfig &c, const icigs::Vec2 &p, const icigs::CVec2 &q, int k)
    {
        const Moments y = received(c, p, q, k, true);
        const Moments i = received(c, p, q, k, false);
        return (y.var * y.var - std::norm(y.pseudo)) / (i.var * i.var - std::norm(i.pseudo));
    }

    inline double rate(const icigs::ScenarioConfig &c, const icigs::Vec2 &p, const icigs::CVec2 &q, int k)
    {
        return 0.5 * std::log2(psinr(c, p, q, k));
    }

    /// Central differences in the six real coordinates (p1, p2, Re q1, Im q1, Re q2, Im q2).
    template <class F>
    Eigen::Matrix<double, 6, 1> gradient(const F &f, const Eigen::Matrix<double, 6, 1> &x, double h = 1e-6)
    {
        Eigen::Matrix<double, 6, 1> g;
        for (int i = 0; i < 6; ++i)
        {
            auto up = x, dn = x;
            up[i] += h;
            dn[i] -= h;
            g[i] = (f(up) - f(dn)) / (2.0 * h);
        }
        return g;
    }

    /// Nonemptiness of {p : A p >= y, 0 <= p <= P} by Fourier-Motzkin
    /// elimination of p2.
    inline bool polygon_nonempty(const Eigen::Matrix2d &A, const icigs::Vec2 &y, const icigs::Vec2 &P,
                                 double tol = 1e-12)
    {
        struct Row
        {
            double c1, c2, d; // c1 p1 + c2 p2 >= d
        };
        const std::vector<Row> rows{{A(0, 0), A(0, 1), y[0]}, {A(1, 0), A(1, 1), y[1]}, {0.0, 1.0, 0.0},
                                    {0.0, -1.0, -P[1]}};
        std::vector<Row> lo, hi, p1_only{{1.0, 0.0, 0.0}, {-1.0, 0.0, -P[0]}};
        for (const Row &r : rows)
        {
            if (r.c2 > 0.0)
                lo.push_back(r);
            else if (r.c2 < 0.0)
                hi.push_back(r);
            else
                p1_only.push_back(r);
        }
        // p2 >= (d_l - c1_l p1) / c2_l and p2 <= (d_h - c1_h p1) / c2_h, c2_h < 0.
        for (const Row &l : lo)
            for (const Row &h : hi)
                p1_only.push_back({l.c1 / l.c2 - h.c1 / h.c2, 0.0, l.d / l.c2 - h.d / h.c2});
        double a = -INFINITY, b = INFINITY;
        for (const Row &r : p1_only)
        {
            if (r.c1 > 0.0)
                a = std::max(a, r.d / r.c1);
            else if (r.c1 < 0.0)
                b = std::min(b, r.d / r.c1);
            else if (r.d > tol)
                return false;
        }
        return a <= b + tol;
    }

    inline Eigen::Matrix2cd random_channels(std::mt19937_64 &rng)
    {
        std::normal_distribution<double> n(0.0, std::sqrt(0.5));
        Eigen::Matrix2cd h;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
            {
                const double re = n(rng);
                h(j, k) = cplx(re, n(rng));
            }
        return h;
    }

    inline icigs::TxSignal random_signal(const icigs::ScenarioConfig &c, std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        icigs::TxSignal s;
        for (int k = 0; k < 2; ++k)
        {
            s.p[k] = c.power_budgets[k] * u(rng);
            s.q[k] = std::polar(s.p[k] * std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
        }
        return s;
    }

} // namespace oracle

#endif
