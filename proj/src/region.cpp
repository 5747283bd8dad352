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

#include "icigs/region.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace icigs
{
    namespace
    {
        std::string upper(std::string s)
        {
            for (auto &c : s)
                c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            return s;
        }

        double cross(const Vec2 &o, const Vec2 &a, const Vec2 &b)
        {
            return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
        }

        // Profile objective without exceptions: -inf when a PSINR is undefined.
        double oracle_objective(const ScenarioConfig &cfg, const LinkVectors &vecs, const TxSignal &sig,
                                const ProfileWeights &w)
        {
            double best = std::numeric_limits<double>::infinity();
            for (int k = 0; k < 2; ++k)
            {
                const PsinrParts uv = u_v(cfg, vecs, sig, k);
                if (!(uv.v > 0.0) || !(uv.u > 0.0))
                    return -std::numeric_limits<double>::infinity();
                if (w.weighted(k))
                    best = std::min(best, (uv.u / uv.v - 1.0) / w.clamped(k));
            }
            return best;
        }

        // Search coordinates: p1, p2, kappa1, theta1, kappa2, theta2.
        TxSignal from_polar(const std::array<double, 6> &c)
        {
            TxSignal s;
            s.p << c[0], c[1];
            s.q << std::polar(c[2] * c[0], c[3]), std::polar(c[4] * c[1], c[5]);
            return s;
        }

        using Coords = std::array<double, 6>;

        // Per-user terms (E_k - 1) / alpha_k; -inf for unweighted users.
        std::array<double, 2> oracle_terms(const ScenarioConfig &cfg, const LinkVectors &vecs, const Coords &c,
                                           const ProfileWeights &w)
        {
            std::array<double, 2> f{-std::numeric_limits<double>::infinity(),
                                    -std::numeric_limits<double>::infinity()};
            const TxSignal sig = from_polar(c);
            for (int k = 0; k < 2; ++k)
            {
                const PsinrParts uv = u_v(cfg, vecs, sig, k);
                if (!(uv.v > 0.0) || !(uv.u > 0.0))
                    return {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
                if (w.weighted(k))
                    f[k] = (uv.u / uv.v - 1.0) / w.clamped(k);
            }
            return f;
        }

        Coords clamp_coords(Coords c, const Coords &upper)
        {
            for (int d = 0; d < 6; ++d)
                if (d != 3 && d != 5)
                    c[d] = std::clamp(c[d], 0.0, upper[d]);
            return c;
        }

        // Steepest ascent for the min of the two user terms: the step is the
        // minimum-norm point of the hull of the active gradients, with
        // gradient components that push against a bound removed.
        double polish(const ScenarioConfig &cfg, const LinkVectors &vecs, const ProfileWeights &w, Coords &c,
                      double value, const Coords &upper)
        {
            double t = 1e-2;
            for (int it = 0; it < 5000; ++it)
            {
                const std::array<double, 2> f = oracle_terms(cfg, vecs, c, w);
                std::array<Eigen::Matrix<double, 6, 1>, 2> g;
                for (int d = 0; d < 6; ++d)
                {
                    const double h = 1e-7 * std::max(1.0, std::abs(c[d]));
                    Coords up = c, dn = c;
                    up[d] += h;
                    dn[d] -= h;
                    up = clamp_coords(up, upper);
                    dn = clamp_coords(dn, upper);
                    const std::array<double, 2> fu = oracle_terms(cfg, vecs, up, w);
                    const std::array<double, 2> fd = oracle_terms(cfg, vecs, dn, w);
                    for (int k = 0; k < 2; ++k)
                    {
                        const double gk = up[d] > dn[d] ? (fu[k] - fd[k]) / (up[d] - dn[d]) : 0.0;
                        g[k][d] = std::isfinite(gk) ? gk : 0.0;
                    }
                }
                const double lo = std::min(f[0], f[1]);
                // terms within reach of one step count as active
                const double band = std::max(1e-9 * std::max(1.0, std::abs(lo)),
                                             4.0 * t * std::max(g[0].norm(), g[1].norm()));
                const bool act0 = f[0] <= lo + band, act1 = f[1] <= lo + band;
                // a coordinate on a bound that an active term pushes against stays there
                for (int d = 0; d < 6; ++d)
                {
                    if (d == 3 || d == 5)
                        continue;
                    bool frozen = false;
                    for (int k = 0; k < 2; ++k)
                    {
                        if (!(k == 0 ? act0 : act1))
                            continue;
                        frozen = frozen || (c[d] <= 0.0 && g[k][d] < 0.0) || (c[d] >= upper[d] && g[k][d] > 0.0);
                    }
                    if (frozen)
                        g[0][d] = g[1][d] = 0.0;
                }
                Eigen::Matrix<double, 6, 1> dir;
                if (act0 && act1)
                {
                    const Eigen::Matrix<double, 6, 1> diff = g[1] - g[0];
                    const double den = diff.squaredNorm();
                    const double lam = den > 0.0 ? std::clamp(g[1].dot(diff) / den, 0.0, 1.0) : 0.5;
                    dir = lam * g[0] + (1.0 - lam) * g[1];
                }
                else
                    dir = act0 ? g[0] : g[1];
                if (!(dir.norm() > 0.0))
                    break;
                dir /= dir.norm();

                bool moved = false;
                for (t *= 4.0; t > 1e-14; t *= 0.5)
                {
                    Coords trial = c;
                    for (int d = 0; d < 6; ++d)
                        trial[d] += t * dir[d];
                    trial = clamp_coords(trial, upper);
                    const double v = oracle_objective(cfg, vecs, from_polar(trial), w);
                    if (v > value)
                    {
                        value = v;
                        c = trial;
                        moved = true;
                        break;
                    }
                }
                if (!moved)
                    break;
            }
            return value;
        }
    } // namespace

    std::string to_string(Method m)
    {
        switch (m)
        {
        case Method::pgs:
            return "PGS";
        case Method::s_igs:
            return "S-IGS";
        case Method::fp_igs:
            return "FP-IGS";
        case Method::oracle:
            return "ORACLE";
        }
        return "UNKNOWN";
    }

    Method method_from_string(const std::string &name)
    {
        const std::string u = upper(name);
        for (Method m : {Method::pgs, Method::s_igs, Method::fp_igs, Method::oracle})
            if (u == to_string(m))
                return m;
        throw std::invalid_argument("unknown method '" + name + "' (expected PGS, S-IGS, FP-IGS or ORACLE)");
    }

    std::string to_string(SweepVariable v)
    {
        switch (v)
        {
        case SweepVariable::snr_db:
            return "snr_db";
        case SweepVariable::hwd_variance:
            return "hwd_variance";
        case SweepVariable::circularity:
            return "kappa";
        }
        return "unknown";
    }

    SweepVariable sweep_variable_from_string(const std::string &name)
    {
        if (name == "snr_db")
            return SweepVariable::snr_db;
        if (name == "hwd_variance")
            return SweepVariable::hwd_variance;
        if (name == "kappa" || name == "circularity")
            return SweepVariable::circularity;
        throw std::invalid_argument("unknown sweep variable '" + name + "' (expected snr_db, hwd_variance or kappa)");
    }

    RegionPoint grid_oracle(const ScenarioConfig &cfg, const ProfileWeights &w, const OracleGrid &grid)
    {
        if (grid.n_power < 2 || grid.n_kappa < 2 || grid.n_theta < 1 || grid.passes < 1 || grid.zoom_levels < 0)
            throw std::invalid_argument("invalid oracle grid");
        w.validate();
        const LinkVectors vecs = build_link_vectors(cfg);
        const double two_pi = 2.0 * std::numbers::pi;

        // Best cells, kept sorted by value (descending).
        std::vector<std::pair<double, std::array<double, 6>>> top{
            {oracle_objective(cfg, vecs, TxSignal{}, w), std::array<double, 6>{}}};
        const std::size_t keep = static_cast<std::size_t>(std::max(1, grid.refine_starts));

        auto offer = [&](double val, const std::array<double, 6> &c)
        {
            if (top.size() < keep || val > top.back().first)
            {
                auto at = std::find_if(top.begin(), top.end(), [&](const auto &e) { return val > e.first; });
                top.insert(at, {val, c});
                if (top.size() > keep)
                    top.pop_back();
            }
        };

        for (int i1 = 0; i1 < grid.n_power; ++i1)
            for (int i2 = 0; i2 < grid.n_power; ++i2)
            {
                std::array<double, 6> c{cfg.power_budgets[0] * i1 / (grid.n_power - 1),
                                        cfg.power_budgets[1] * i2 / (grid.n_power - 1), 0.0, 0.0, 0.0, 0.0};
                if (grid.joint)
                {
                    const int n = grid.n_kappa * grid.n_theta;
                    for (int a = 0; a < (c[0] > 0.0 ? n : 1); ++a)
                        for (int b = 0; b < (c[1] > 0.0 ? n : 1); ++b)
                        {
                            c[2] = static_cast<double>(a / grid.n_theta) / (grid.n_kappa - 1);
                            c[3] = two_pi * (a % grid.n_theta) / grid.n_theta;
                            c[4] = static_cast<double>(b / grid.n_theta) / (grid.n_kappa - 1);
                            c[5] = two_pi * (b % grid.n_theta) / grid.n_theta;
                            offer(oracle_objective(cfg, vecs, from_polar(c), w), c);
                        }
                    continue;
                }
                double val = oracle_objective(cfg, vecs, from_polar(c), w);
                for (int pass = 0; pass < grid.passes; ++pass)
                    for (int k = 0; k < 2; ++k)
                    {
                        if (c[k] == 0.0)
                            continue;
                        std::array<double, 6> trial = c;
                        for (int ik = 0; ik < grid.n_kappa; ++ik)
                            for (int it = 0; it < grid.n_theta; ++it)
                            {
                                trial[2 + 2 * k] = static_cast<double>(ik) / (grid.n_kappa - 1);
                                trial[3 + 2 * k] = two_pi * it / grid.n_theta;
                                const double v = oracle_objective(cfg, vecs, from_polar(trial), w);
                                if (v > val)
                                {
                                    val = v;
                                    c = trial;
                                }
                            }
                    }
                offer(val, c);
            }

        double best = top.front().first;
        std::array<double, 6> best_c = top.front().second;

        for (std::size_t start = 0; grid.zoom_levels > 0 && start < top.size(); ++start)
        {
            double local = top[start].first;
            std::array<double, 6> local_c = top[start].second;
            std::array<double, 6> step{cfg.power_budgets[0] / (grid.n_power - 1),
                                       cfg.power_budgets[1] / (grid.n_power - 1),
                                       1.0 / (grid.n_kappa - 1),
                                       two_pi / grid.n_theta,
                                       1.0 / (grid.n_kappa - 1),
                                       two_pi / grid.n_theta};
            const std::array<double, 6> upper_bound{cfg.power_budgets[0], cfg.power_budgets[1], 1.0, 0.0, 1.0, 0.0};
            for (int level = 0; level < grid.zoom_levels; ++level)
            {
                for (auto &s : step)
                    s *= 0.5;
                for (int sweep = 0; sweep < 200; ++sweep)
                {
                    // All 3^6 neighbours, so moves along ridges of the min are found.
                    std::array<double, 6> move = local_c;
                    double move_value = local;
                    for (int code = 0; code < 729; ++code)
                    {
                        std::array<double, 6> trial = local_c;
                        for (int d = 0, c = code; d < 6; ++d, c /= 3)
                        {
                            trial[d] += (c % 3 - 1) * step[d];
                            if (d == 3 || d == 5)
                                trial[d] = std::fmod(trial[d] + two_pi, two_pi);
                            else
                                trial[d] = std::clamp(trial[d], 0.0, upper_bound[d]);
                        }
                        const double v = oracle_objective(cfg, vecs, from_polar(trial), w);
                        if (v > move_value)
                        {
                            move_value = v;
                            move = trial;
                        }
                    }
                    if (!(move_value > local))
                        break;
                    local = move_value;
                    local_c = move;
                }
            }
            local = polish(cfg, vecs, w, local_c, local, upper_bound);
            if (local > best)
            {
                best = local;
                best_c = local_c;
            }
        }


        RegionPoint pt;
        pt.weights = w;
        pt.method = Method::oracle;
        pt.signal = from_polar(best_c);
        pt.rates = rates(cfg, vecs, pt.signal);
        pt.psinrs = psinrs(cfg, vecs, pt.signal);
        return pt;
    }

    RegionPoint solve_point(const ScenarioConfig &cfg, const LinkVectors &vecs, Method method,
                            const ProfileWeights &w, const MethodSettings &settings)
    {
        w.validate();
        RegionPoint pt;
        pt.weights = w;
        pt.method = method;
        switch (method)
        {
        case Method::pgs:
            pt.signal = TxSignal{pgs_power(cfg, vecs, w, settings.bisection_tol).power, CVec2::Zero()};
            break;
        case Method::s_igs:
        {
            const PgsResult pgs = pgs_power(cfg, vecs, w, settings.bisection_tol);
            auto [sig, rep] = dcp_complementary(cfg, vecs, pgs, w, settings.dcp);
            pt.signal = sig;
            pt.kernel_limit_hit = rep.kernel_limit_hit;
            break;
        }
        case Method::fp_igs:
        {
            auto [sig, rep] = mm_outer(cfg, vecs, w, settings.fp);
            pt.signal = sig;
            pt.kernel_limit_hit = rep.kernel_limit_hit;
            break;
        }
        case Method::oracle:
            return grid_oracle(cfg, w, settings.grid);
        }
        pt.rates = rates(cfg, vecs, pt.signal);
        pt.psinrs = psinrs(cfg, vecs, pt.signal);
        return pt;
    }

    RegionBoundary sweep_boundary(const ScenarioConfig &cfg, Method method, int n_points,
                                  const MethodSettings &settings)
    {
        if (n_points < 2)
            throw std::invalid_argument("a boundary sweep needs at least 2 points");
        cfg.validate();
        const LinkVectors vecs = build_link_vectors(cfg);

        RegionBoundary b;
        for (int i = 0; i < n_points; ++i)
        {
            const ProfileWeights w = ProfileWeights::from_alpha1(static_cast<double>(i) / (n_points - 1));
            try
            {
                b.points.push_back(solve_point(cfg, vecs, method, w, settings));
            }
            catch (const DomainError &e)
            {
                b.failures.emplace_back(w, e.what());
            }
            catch (const std::runtime_error &e)
            {
                b.failures.emplace_back(w, e.what());
            }
        }
        std::stable_sort(b.points.begin(), b.points.end(),
                         [](const RegionPoint &l, const RegionPoint &r) { return l.rates[0] < r.rates[0]; });
        return time_sharing_hull(std::move(b));
    }

    std::vector<Vec2> time_sharing_hull(const std::vector<Vec2> &points)
    {
        std::vector<Vec2> pts{Vec2::Zero()};
        for (const Vec2 &p : points)
        {
            if (!(p.array() >= 0.0).all() || !p.allFinite())
                throw std::invalid_argument("rate pairs must be finite and nonnegative");
            pts.push_back(p);
            pts.emplace_back(p[0], 0.0);
            pts.emplace_back(0.0, p[1]);
        }
        std::sort(pts.begin(), pts.end(), [](const Vec2 &l, const Vec2 &r)
                  { return l[0] < r[0] || (l[0] == r[0] && l[1] > r[1]); });

        std::vector<Vec2> hull;
        for (const Vec2 &p : pts)
        {
            while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0)
                hull.pop_back();
            hull.push_back(p);
        }
        return hull;
    }

    RegionBoundary time_sharing_hull(RegionBoundary boundary)
    {
        std::vector<Vec2> pts;
        pts.reserve(boundary.points.size());
        for (const auto &p : boundary.points)
            pts.push_back(p.rates);
        boundary.hull = time_sharing_hull(pts);
        return boundary;
    }

    bool hull_contains(const std::vector<Vec2> &hull, const Vec2 &pt, double tol)
    {
        if (hull.empty())
            return false;
        if (pt[0] < -tol || pt[1] < -tol)
            return false;
        if (pt[0] > hull.back()[0] + tol || pt[1] > hull.front()[1] + tol)
            return false;
        for (std::size_t i = 0; i + 1 < hull.size(); ++i)
        {
            const double len = (hull[i + 1] - hull[i]).norm();
            if (len == 0.0)
                continue;
            if (cross(hull[i], hull[i + 1], pt) / len > tol)
                return false;
        }
        return true;
    }

    double symmetric_rate(const ScenarioConfig &cfg, Method method, const MethodSettings &settings)
    {
        cfg.validate();
        return solve_point(cfg, build_link_vectors(cfg), method, ProfileWeights{}, settings).symmetric_rate();
    }

    Eigen::Matrix2cd random_channels(std::uint64_t seed, std::uint64_t index)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> n(0.0, std::sqrt(0.5));
        Eigen::Matrix2cd h;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
            {
                const double re = n(rng);
                const double im = n(rng);
                h(j, k) = cplx(re, im);
            }
        return h;
    }

    ScenarioConfig sweep_scenario(const SweepSpec &spec, double value, const Eigen::Matrix2cd &channels)
    {
        double snr_db = spec.snr_db;
        double variance = spec.hwd_variance;
        double circularity = spec.circularity;
        switch (spec.variable)
        {
        case SweepVariable::snr_db:
            snr_db = value;
            break;
        case SweepVariable::hwd_variance:
            variance = value;
            break;
        case SweepVariable::circularity:
            circularity = value;
            break;
        }
        ScenarioConfig cfg;
        cfg.channels = channels;
        cfg.noise_power = spec.noise_power;
        const double p = db_to_linear(snr_db) * spec.noise_power;
        cfg.power_budgets << p, p;
        cfg.hwd = HwdProfile::uniform(variance, circularity * variance);
        cfg.validate();
        return cfg;
    }

    void parallel_for(int n, int threads, const std::function<void(int)> &f)
    {
        threads = std::max(1, std::min(threads, n));
        if (threads == 1)
        {
            for (int i = 0; i < n; ++i)
                f(i);
            return;
        }
        std::atomic<int> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(
                [&]
                {
                    for (int i = next++; i < n; i = next++)
                    {
                        try
                        {
                            f(i);
                        }
                        catch (...)
                        {
                            std::lock_guard lock(error_mutex);
                            if (!error)
                                error = std::current_exception();
                        }
                    }
                });
        for (auto &t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }

    std::vector<SweepCell> monte_carlo(const std::vector<Method> &methods, const SweepSpec &sweep,
                                       int n_realizations, std::uint64_t seed, const MethodSettings &settings,
                                       int threads)
    {
        if (n_realizations < 1)
            throw std::invalid_argument("realization count must be >= 1");
        if (methods.empty() || sweep.values.empty())
            throw std::invalid_argument("a sweep needs at least one method and one value");

        struct Sample
        {
            double rate = 0.0;
            bool ok = false;
            bool limit = false;
        };
        const int n_values = static_cast<int>(sweep.values.size());
        const int n_methods = static_cast<int>(methods.size());
        const int n_jobs = n_values * n_methods * n_realizations;
        std::vector<Sample> samples(n_jobs);

        parallel_for(n_jobs, threads,
                     [&](int job)
                     {
                         const int r = job % n_realizations;
                         const int m = (job / n_realizations) % n_methods;
                         const int v = job / (n_realizations * n_methods);
                         const ScenarioConfig cfg =
                             sweep_scenario(sweep, sweep.values[v], random_channels(seed, static_cast<std::uint64_t>(r)));
                         Sample &s = samples[job];
                         try
                         {
                             const RegionPoint pt =
                                 solve_point(cfg, build_link_vectors(cfg), methods[m], ProfileWeights{}, settings);
                             s.rate = pt.symmetric_rate();
                             s.ok = true;
                             s.limit = pt.kernel_limit_hit;
                         }
                         catch (const DomainError &)
                         {
                         }
                         catch (const std::runtime_error &)
                         {
                         }
                     });

        std::vector<SweepCell> cells;
        for (int v = 0; v < n_values; ++v)
            for (int m = 0; m < n_methods; ++m)
            {
                SweepCell cell;
                cell.value = sweep.values[v];
                cell.method = methods[m];
                double sum = 0.0, sum_sq = 0.0;
                for (int r = 0; r < n_realizations; ++r)
                {
                    const Sample &s = samples[(v * n_methods + m) * n_realizations + r];
                    if (!s.ok)
                    {
                        ++cell.failures;
                        continue;
                    }
                    ++cell.samples;
                    cell.kernel_limit_hits += s.limit ? 1 : 0;
                    sum += s.rate;
                    sum_sq += s.rate * s.rate;
                }
                if (cell.samples > 0)
                {
                    cell.mean = sum / cell.samples;
                    if (cell.samples > 1)
                    {
                        const double var =
                            std::max(0.0, (sum_sq - cell.samples * cell.mean * cell.mean) / (cell.samples - 1));
                        cell.stderr_of_mean = std::sqrt(var / cell.samples);
                    }
                }
                cells.push_back(cell);
            }
        return cells;
    }

} // namespace icigs
