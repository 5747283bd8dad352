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

#ifndef ICIGS_SURROGATES_HPP
#define ICIGS_SURROGATES_HPP

#include "icigs/model.hpp"

namespace icigs
{
    // Real coordinates of a TxSignal: (p1, p2, Re q1, Im q1, Re q2, Im q2).
    using Vec6 = Eigen::Matrix<double, 6, 1>;
    using Mat6 = Eigen::Matrix<double, 6, 6>;

    Vec6 pack(const TxSignal &sig);
    TxSignal unpack(const Vec6 &x);

    /// value(x) = constant + linear . x + x^T quadratic x, quadratic symmetric.
    struct QuadraticForm
    {
        double constant = 0.0;
        Vec6 linear = Vec6::Zero();
        Mat6 quadratic = Mat6::Zero();

        double value(const Vec6 &x) const { return constant + linear.dot(x) + x.dot(quadratic * x); }
        Vec6 gradient(const Vec6 &x) const { return linear + 2.0 * quadratic * x; }
        Mat6 hessian() const { return 2.0 * quadratic; }

        QuadraticForm &operator+=(const QuadraticForm &o);
        QuadraticForm &operator*=(double s);
    };

    QuadraticForm operator+(QuadraticForm lhs, const QuadraticForm &rhs);
    QuadraticForm operator-(QuadraticForm lhs, const QuadraticForm &rhs);
    QuadraticForm operator*(double s, QuadraticForm f);

    /// A complex scalar that is linear in the real coordinates:
    /// value(x) = re . x + i * (im . x).
    struct ComplexLinear
    {
        Vec6 re = Vec6::Zero();
        Vec6 im = Vec6::Zero();

        cplx value(const Vec6 &x) const { return {re.dot(x), im.dot(x)}; }
        /// |value(x)|^2 as a convex quadratic form.
        QuadraticForm squared_magnitude() const;
        /// First-order expansion of |value(x)|^2 around x0 (an affine minorant).
        QuadraticForm linearized_squared_magnitude(const Vec6 &x0) const;
    };

    /// f_k^H q + f~_k^H p.
    ComplexLinear numerator_pseudo_form(const LinkVectors &vecs, int k);
    /// g_k^H q + f~_k^H p.
    ComplexLinear denominator_pseudo_form(const LinkVectors &vecs, int k);
    /// (sigma^2 + c^T p)^2.
    QuadraticForm squared_affine_power(double noise_power, const Vec2 &c);

    /// The iterate around which the MM surrogates are expanded.
    struct ExpansionPoint
    {
        Vec2 p = Vec2::Zero();
        CVec2 q = CVec2::Zero();

        ExpansionPoint() = default;
        explicit ExpansionPoint(const TxSignal &s) : p(s.p), q(s.q) {}
        TxSignal signal() const { return {p, q}; }
    };

    /// Concave minorant of u_k, tight at x0: the convex part (sigma^2 + a_k^T p)^2
    /// is replaced by its tangent plane, the -|f_k^H q + f~_k^H p|^2 term is kept.
    QuadraticForm u_tilde_form(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, int k);

    /// Convex majorant of v_k, tight at x0: the concave part -|g_k^H q + f~_k^H p|^2
    /// is replaced by its tangent plane.
    QuadraticForm v_tilde_form(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, int k);

    /// u~_k - (mu alpha_k + 1) v~_k, concave for mu alpha_k >= -1.
    QuadraticForm e_hat_form(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, int k,
                             double mu, double alpha_k);

    double u_tilde(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, const TxSignal &sig,
                   int k);
    double v_tilde(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, const TxSignal &sig,
                   int k);
    double e_hat(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, const TxSignal &sig,
                 int k, double mu, double alpha_k);

    /// u~_k / v~_k.
    double e_tilde(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, const TxSignal &sig,
                   int k);

} // namespace icigs

#endif
