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

#include "icigs/model.hpp"

#include <cmath>
#include <sstream>

namespace icigs
{
    namespace
    {
        // Relative floor below which a PSINR term is treated as non-positive.
        constexpr double positivity_tol = 1e-12;

        void check_user(int k)
        {
            if (k != 0 && k != 1)
                throw std::out_of_range("user index must be 0 or 1");
        }
    } // namespace

    HwdProfile HwdProfile::uniform(double variance, cplx complementary)
    {
        HwdProfile h;
        for (auto &row : h.variance)
            row.fill(variance);
        for (auto &row : h.complementary)
            row.fill(complementary);
        return h;
    }

    void ScenarioConfig::validate() const
    {
        if (!std::isfinite(noise_power) || noise_power <= 0.0)
            throw std::invalid_argument("noise_power must be finite and > 0");
        for (int k = 0; k < 2; ++k)
            if (!std::isfinite(power_budgets[k]) || power_budgets[k] < 0.0)
                throw std::invalid_argument("power_budgets[" + std::to_string(k) + "] must be finite and >= 0");
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
            {
                const cplx h = channels(j, k);
                if (!std::isfinite(h.real()) || !std::isfinite(h.imag()))
                    throw std::invalid_argument("channel entry (" + std::to_string(j) + "," + std::to_string(k) +
                                                ") is not finite");
                const double var = hwd.variance[j][k];
                const double comp = std::abs(hwd.complementary[j][k]);
                if (!std::isfinite(var) || var < 0.0)
                    throw std::invalid_argument("hwd variance on link (" + std::to_string(j) + "," +
                                                std::to_string(k) + ") must be finite and >= 0");
                if (!std::isfinite(comp) || comp > var * (1.0 + 1e-12))
                {
                    std::ostringstream msg;
                    msg << "hwd complementary variance on link (" << j << "," << k << ") violates |c| <= variance: |c| = "
                        << comp << " > " << var;
                    throw std::invalid_argument(msg.str());
                }
            }
    }

    bool TxSignal::feasible_in(const ScenarioConfig &cfg, double tol) const
    {
        for (int k = 0; k < 2; ++k)
        {
            if (!(p[k] >= -tol && p[k] <= cfg.power_budgets[k] + tol))
                return false;
            if (!(std::abs(q[k]) <= p[k] + tol))
                return false;
        }
        return true;
    }

    LinkVectors build_link_vectors(const ScenarioConfig &cfg)
    {
        LinkVectors v;
        for (int k = 0; k < 2; ++k)
        {
            for (int j = 0; j < 2; ++j)
            {
                const cplx h = cfg.channels(j, k);
                const double gain = std::norm(h);
                const double var = cfg.hwd.variance[j][k];
                v.a[k][j] = gain * (1.0 + var);
                v.b[k][j] = (j == k) ? gain * var : gain * (1.0 + var);
                // Stored conjugated: f_k^H q then reads sum_j h_jk^2 q_j.
                v.f[k][j] = std::conj(h * h);
                v.f_tilde[k][j] = std::conj(h * h * cfg.hwd.complementary[j][k]);
                v.g[k][j] = (j == k) ? cplx{0.0, 0.0} : std::conj(h * h);
            }
        }
        return v;
    }

    cplx numerator_pseudo(const LinkVectors &vecs, const TxSignal &sig, int k)
    {
        check_user(k);
        return vecs.f[k].dot(sig.q) + vecs.f_tilde[k].dot(sig.p.cast<cplx>());
    }

    cplx denominator_pseudo(const LinkVectors &vecs, const TxSignal &sig, int k)
    {
        check_user(k);
        return vecs.g[k].dot(sig.q) + vecs.f_tilde[k].dot(sig.p.cast<cplx>());
    }

    PsinrParts u_v(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig, int k)
    {
        check_user(k);
        const double num = cfg.noise_power + vecs.a[k].dot(sig.p);
        const double den = cfg.noise_power + vecs.b[k].dot(sig.p);
        return {num * num - std::norm(numerator_pseudo(vecs, sig, k)),
                den * den - std::norm(denominator_pseudo(vecs, sig, k))};
    }

    double psinr(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig, int k)
    {
        const PsinrParts uv = u_v(cfg, vecs, sig, k);
        const double num = cfg.noise_power + vecs.a[k].dot(sig.p);
        const double den = cfg.noise_power + vecs.b[k].dot(sig.p);
        if (!(uv.u > positivity_tol * num * num) || !(uv.v > positivity_tol * den * den))
        {
            std::ostringstream msg;
            msg << "PSINR of user " << k << " undefined: u = " << uv.u << ", v = " << uv.v;
            throw DomainError(msg.str());
        }
        return uv.u / uv.v;
    }

    double rate(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig, int k)
    {
        // E_k < 1 only through rounding; rates are clipped at zero.
        return std::max(0.0, 0.5 * std::log2(psinr(cfg, vecs, sig, k)));
    }

    Vec2 rates(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig)
    {
        return {rate(cfg, vecs, sig, 0), rate(cfg, vecs, sig, 1)};
    }

    Vec2 psinrs(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig)
    {
        return {psinr(cfg, vecs, sig, 0), psinr(cfg, vecs, sig, 1)};
    }

} // namespace icigs
