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

#include "icigs/surrogates.hpp"

namespace icigs
{
    Vec6 pack(const TxSignal &sig)
    {
        Vec6 x;
        x << sig.p[0], sig.p[1], sig.q[0].real(), sig.q[0].imag(), sig.q[1].real(), sig.q[1].imag();
        return x;
    }

    TxSignal unpack(const Vec6 &x)
    {
        TxSignal s;
        s.p << x[0], x[1];
        s.q << cplx{x[2], x[3]}, cplx{x[4], x[5]};
        return s;
    }

    QuadraticForm &QuadraticForm::operator+=(const QuadraticForm &o)
    {
        constant += o.constant;
        linear += o.linear;
        quadratic += o.quadratic;
        return *this;
    }

    QuadraticForm &QuadraticForm::operator*=(double s)
    {
        constant *= s;
        linear *= s;
        quadratic *= s;
        return *this;
    }

    QuadraticForm operator+(QuadraticForm lhs, const QuadraticForm &rhs) { return lhs += rhs; }
    QuadraticForm operator-(QuadraticForm lhs, const QuadraticForm &rhs) { return lhs += (-1.0) * rhs; }
    QuadraticForm operator*(double s, QuadraticForm f) { return f *= s; }

    QuadraticForm ComplexLinear::squared_magnitude() const
    {
        QuadraticForm f;
        f.quadratic = re * re.transpose() + im * im.transpose();
        return f;
    }

    QuadraticForm ComplexLinear::linearized_squared_magnitude(const Vec6 &x0) const
    {
        const double r0 = re.dot(x0);
        const double i0 = im.dot(x0);
        const Vec6 grad = 2.0 * r0 * re + 2.0 * i0 * im;
        QuadraticForm f;
        f.constant = r0 * r0 + i0 * i0 - grad.dot(x0);
        f.linear = grad;
        return f;
    }

    namespace
    {
        // Adds w^H q (w = q_coef) and v^H p (v = p_coef) to a complex-linear map.
        ComplexLinear complex_linear(const CVec2 &q_coef, const CVec2 &p_coef)
        {
            ComplexLinear c;
            for (int j = 0; j < 2; ++j)
            {
                const cplx w = std::conj(q_coef[j]);
                const int re_idx = 2 + 2 * j;
                const int im_idx = 3 + 2 * j;
                c.re[re_idx] += w.real();
                c.re[im_idx] -= w.imag();
                c.im[re_idx] += w.imag();
                c.im[im_idx] += w.real();

                const cplx d = std::conj(p_coef[j]);
                c.re[j] += d.real();
                c.im[j] += d.imag();
            }
            return c;
        }
    } // namespace

    ComplexLinear numerator_pseudo_form(const LinkVectors &vecs, int k)
    {
        return complex_linear(vecs.f[k], vecs.f_tilde[k]);
    }

    ComplexLinear denominator_pseudo_form(const LinkVectors &vecs, int k)
    {
        return complex_linear(vecs.g[k], vecs.f_tilde[k]);
    }

    QuadraticForm squared_affine_power(double noise_power, const Vec2 &c)
    {
        QuadraticForm f;
        f.constant = noise_power * noise_power;
        f.linear.head<2>() = 2.0 * noise_power * c;
        f.quadratic.topLeftCorner<2, 2>() = c * c.transpose();
        return f;
    }

    QuadraticForm u_tilde_form(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, int k)
    {
        const Vec2 &a = vecs.a[k];
        const double c0 = cfg.noise_power + a.dot(x0.p);

        QuadraticForm tangent;
        tangent.constant = c0 * c0 - 2.0 * c0 * a.dot(x0.p);
        tangent.linear.head<2>() = 2.0 * c0 * a;

        return tangent - numerator_pseudo_form(vecs, k).squared_magnitude();
    }

    QuadraticForm v_tilde_form(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, int k)
    {
        const Vec6 anchor = pack(x0.signal());
        return squared_affine_power(cfg.noise_power, vecs.b[k]) -
               denominator_pseudo_form(vecs, k).linearized_squared_magnitude(anchor);
    }

    QuadraticForm e_hat_form(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, int k,
                             double mu, double alpha_k)
    {
        return u_tilde_form(cfg, vecs, x0, k) - (mu * alpha_k + 1.0) * v_tilde_form(cfg, vecs, x0, k);
    }

    double u_tilde(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, const TxSignal &sig,
                   int k)
    {
        return u_tilde_form(cfg, vecs, x0, k).value(pack(sig));
    }

    double v_tilde(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, const TxSignal &sig,
                   int k)
    {
        return v_tilde_form(cfg, vecs, x0, k).value(pack(sig));
    }

    double e_hat(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, const TxSignal &sig,
                 int k, double mu, double alpha_k)
    {
        return e_hat_form(cfg, vecs, x0, k, mu, alpha_k).value(pack(sig));
    }

    double e_tilde(const ScenarioConfig &cfg, const LinkVectors &vecs, const ExpansionPoint &x0, const TxSignal &sig,
                   int k)
    {
        return u_tilde(cfg, vecs, x0, sig, k) / v_tilde(cfg, vecs, x0, sig, k);
    }

} // namespace icigs
