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

#ifndef ICIGS_MODEL_HPP
#define ICIGS_MODEL_HPP

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace icigs
{
    using cplx = std::complex<double>;
    using Vec2 = Eigen::Vector2d;
    using CVec2 = Eigen::Vector2cd;

    /// Raised when a PSINR numerator or denominator is not strictly positive.
    /// On the feasible set this cannot happen, so it flags corrupt input.
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Aggregated (TX + RX) distortion statistics per ordered link.
    // Index [j][k] is the link from transmitter j to receiver k (0-based).
    struct HwdProfile
    {
        std::array<std::array<double, 2>, 2> variance{};
        std::array<std::array<cplx, 2>, 2> complementary{};

        /// Same statistics on all four links.
        static HwdProfile uniform(double variance, cplx complementary = 0.0);

        bool operator==(const HwdProfile &) const = default;
    };

    /// The physical instance: channels, receiver noise, budgets and distortion.
    struct ScenarioConfig
    {
        Eigen::Matrix2cd channels = Eigen::Matrix2cd::Zero(); // (j, k): transmitter j -> receiver k
        double noise_power = 1.0;                            // sigma^2, linear
        Vec2 power_budgets = Vec2::Zero();                   // P_1, P_2, linear
        HwdProfile hwd;

        /// Throws std::invalid_argument naming the first violated bound.
        void validate() const;

        bool operator==(const ScenarioConfig &o) const
        {
            return channels == o.channels && noise_power == o.noise_power &&
                   power_budgets == o.power_budgets && hwd == o.hwd;
        }
    };

    /// Per-receiver vectors a_k, b_k, f_k, f~_k, g_k. Complex vectors are stored
    /// so that the inner products appearing in the rate are f_k.adjoint() * q.
    struct LinkVectors
    {
        std::array<Vec2, 2> a;
        std::array<Vec2, 2> b;
        std::array<CVec2, 2> f;
        std::array<CVec2, 2> f_tilde;
        std::array<CVec2, 2> g;
    };

    /// Transmit parameters: powers p and complementary variances q.
    struct TxSignal
    {
        Vec2 p = Vec2::Zero();
        CVec2 q = CVec2::Zero();

        /// 0 <= p_k <= P_k and |q_k| <= p_k, each up to an absolute slack tol.
        bool feasible_in(const ScenarioConfig &cfg, double tol = 1e-12) const;
    };

    struct PsinrParts
    {
        double u = 0.0; // numerator of the PSINR
        double v = 0.0; // denominator of the PSINR
    };

    LinkVectors build_link_vectors(const ScenarioConfig &cfg);

    /// f_k^H q + f~_k^H p, the improper term of the numerator.
    cplx numerator_pseudo(const LinkVectors &vecs, const TxSignal &sig, int k);

    /// g_k^H q + f~_k^H p, the improper term of the denominator.
    cplx denominator_pseudo(const LinkVectors &vecs, const TxSignal &sig, int k);

    /// u_k and v_k for user k in {0, 1}. Does not check positivity.
    PsinrParts u_v(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig, int k);

    /// E_k = u_k / v_k. Throws DomainError if u_k or v_k is not positive.
    double psinr(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig, int k);

    /// R_k = 0.5 log2(E_k) in bits/s/Hz. Throws DomainError like psinr.
    double rate(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig, int k);

    Vec2 rates(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig);
    Vec2 psinrs(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig);

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace icigs

#endif
