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

// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include "oracle.hpp"

#include "icigs/experiment.hpp"
#include "icigs/fp_igs.hpp"
#include "icigs/region.hpp"
#include "icigs/s_igs.hpp"
#include "icigs/surrogates.hpp"

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

using namespace icigs;

namespace
{
    struct Outcome
    {
        bool passed = true;
        std::string detail;
    };

    std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));
    std::string fmt(const char *f, ...)
    {
        char buf[512];
        va_list ap;
        va_start(ap, f);
        std::vsnprintf(buf, sizeof buf, f, ap);
        va_end(ap);
        return buf;
    }

    ScenarioConfig random_scenario(std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double var = u(rng);
        return oracle::scenario(oracle::random_channels(rng), 0.1 + 10.0 * u(rng), var,
                                std::polar(var * u(rng), 2.0 * M_PI * u(rng)), 0.1 + u(rng));
    }

    ScenarioConfig random_scenario_rows(std::mt19937_64 &rng)
    {
        // per-link distortion
        ScenarioConfig c = random_scenario(rng);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
            {
                c.hwd.variance[j][k] = u(rng);
                c.hwd.complementary[j][k] = std::polar(c.hwd.variance[j][k] * u(rng), 2.0 * M_PI * u(rng));
            }
        return c;
    }

    Outcome formula_identity()
    {
        std::mt19937_64 rng(101);
        double worst = 0.0, min_rate = 0.0, min_psinr = 1.0;
        for (int t = 0; t < 10000; ++t)
        {
            const ScenarioConfig c = random_scenario_rows(rng);
            const LinkVectors v = build_link_vectors(c);
            const TxSignal s = oracle::random_signal(c, rng);
            for (int k = 0; k < 2; ++k)
            {
                const double e = psinr(c, v, s, k), r = rate(c, v, s, k);
                worst = std::max(worst, std::abs(2.0 * r - std::log2(e)));
                min_rate = std::min(min_rate, r);
                min_psinr = std::min(min_psinr, e);
            }
        }
        return {worst <= 1e-9 && min_rate >= 0.0 && min_psinr >= 1.0,
                fmt("10000 draws, max |2R-log2 E| %.2e (tol 1e-9), min R %.3g, min E %.15g", worst, min_rate,
                    min_psinr)};
    }

    Outcome surrogate_suite()
    {
        std::mt19937_64 rng(102);
        double bound = 0.0, tight = 0.0, grad = 0.0;
        for (int t = 0; t < 10000; ++t)
        {
            const ScenarioConfig c = random_scenario_rows(rng);
            const LinkVectors v = build_link_vectors(c);
            TxSignal a = oracle::random_signal(c, rng);
            const TxSignal s = oracle::random_signal(c, rng);
            a.p = a.p.cwiseMax(1e-3);
            a.q *= 0.9;
            const ExpansionPoint x0(a);
            const Vec6 at = pack(a);
            for (int k = 0; k < 2; ++k)
            {
                const PsinrParts exact = u_v(c, v, s, k), anchor = u_v(c, v, a, k);
                const double us = u_tilde(c, v, x0, s, k), vs = v_tilde(c, v, x0, s, k);
                const double scale = std::max({1.0, std::abs(exact.u), std::abs(exact.v)});
                bound = std::max({bound, (us - exact.u) / scale, (exact.v - vs) / scale});
                const double ascale = std::max({1.0, std::abs(anchor.u), std::abs(anchor.v)});
                tight = std::max({tight, std::abs(u_tilde(c, v, x0, a, k) - anchor.u) / ascale,
                                  std::abs(v_tilde(c, v, x0, a, k) - anchor.v) / ascale});

                auto fu = [&](const Vec6 &x) { return u_v(c, v, unpack(x), k).u; };
                auto fv = [&](const Vec6 &x) { return u_v(c, v, unpack(x), k).v; };
                auto su = [&](const Vec6 &x) { return u_tilde(c, v, x0, unpack(x), k); };
                auto sv = [&](const Vec6 &x) { return v_tilde(c, v, x0, unpack(x), k); };
                const Vec6 gu = oracle::gradient(fu, at), gv = oracle::gradient(fv, at);
                grad = std::max({grad, (gu - oracle::gradient(su, at)).norm() / std::max(1.0, gu.norm()),
                                 (gv - oracle::gradient(sv, at)).norm() / std::max(1.0, gv.norm())});
            }
        }
        return {bound <= 1e-12 && tight <= 1e-12 && grad <= 1e-5,
                fmt("10000 draws, bound violation %.2e (tol 1e-12 rel), anchor gap %.2e (tol 1e-12 rel), "
                    "gradient mismatch %.2e (tol 1e-5 rel)",
                    bound, tight, grad)};
    }

    Outcome proper_bound()
    {
        std::mt19937_64 rng(103);
        double below = 0.0, equal = 0.0;
        int proper = 0;
        for (int t = 0; t < 10000; ++t)
        {
            ScenarioConfig c = random_scenario_rows(rng);
            const bool is_proper = t % 2 == 1;
            if (is_proper)
                for (auto &row : c.hwd.complementary)
                    row = {0.0, 0.0};
            proper += is_proper;
            const LinkVectors v = build_link_vectors(c);
            const Vec2 p = oracle::random_signal(c, rng).p;
            for (int k = 0; k < 2; ++k)
            {
                const double exact = oracle::psinr(c, p, CVec2::Zero(), k);
                const double lb = proper_psinr_lower_bound(c, v, p, k);
                below = std::max(below, (lb - exact) / exact);
                if (is_proper)
                    equal = std::max(equal, std::abs(exact - lb) / exact);
            }
        }
        return {below <= 1e-12 && equal <= 1e-12,
                fmt("10000 draws (%d proper), max (bound - E)/E %.2e, proper max |E - bound|/E %.2e (tol 1e-12)",
                    proper, below, equal)};
    }

    Outcome closed_form_feasibility()
    {
        std::mt19937_64 rng(104);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int disagree = 0, feasible = 0;
        for (int t = 0; t < 1000; ++t)
        {
            ScenarioConfig c = random_scenario(rng);
            for (auto &row : c.hwd.complementary)
                row = {0.0, 0.0};
            const LinkVectors v = build_link_vectors(c);
            const ProfileWeights w = ProfileWeights::from_alpha1(0.05 + 0.9 * u(rng));
            const double target = pgs_power(c, v, w).profile_value * (0.5 + u(rng));
            Eigen::Matrix2d A;
            Vec2 y;
            for (int k = 0; k < 2; ++k)
            {
                const double s = std::sqrt(1.0 + w[k] * target) - 1.0;
                y[k] = s * c.noise_power;
                for (int j = 0; j < 2; ++j)
                {
                    const double g = std::norm(c.channels(j, k)), var = c.hwd.variance[j][k];
                    A(k, j) = j == k ? g * (1.0 - var * s) : -g * (1.0 + var) * s;
                }
            }
            const bool verdict = feasibility_closed_form(c, v, w, target).feasible;
            disagree += verdict != oracle::polygon_nonempty(A, y, c.power_budgets);
            feasible += verdict;
        }

        ScenarioConfig d;
        d.channels = Eigen::Matrix2cd::Identity();
        d.noise_power = 1.0;
        d.power_budgets = Vec2(3.0, 3.0);
        const double threshold = pgs_power(d, build_link_vectors(d), {}, 1e-9).profile_value;
        return {disagree == 0 && std::abs(threshold - 30.0) <= 1e-4,
                fmt("1000 draws (%d feasible), %d disagreements (tol 0); decoupled threshold %.9f (30 +- 1e-4)",
                    feasible, disagree, threshold)};
    }

    Outcome mm_convergence()
    {
        std::mt19937_64 rng(105);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int converged = 0, mu_bad = 0, obj_bad = 0, over_cap = 0;
        for (int t = 0; t < 100; ++t)
        {
            const ScenarioConfig c = oracle::scenario(oracle::random_channels(rng), db_to_linear(20.0 * u(rng)));
            const LinkVectors v = build_link_vectors(c);
            const FpSettings s;
            const auto [x, rep] = mm_outer(c, v, {}, s);
            converged += rep.converged;
            over_cap += rep.iterations > s.max_outer;
            for (std::size_t m = 1; m < rep.objective_trace.size(); ++m)
                obj_bad += rep.objective_trace[m] < rep.objective_trace[m - 1] - 1e-9;
            for (const DinkelbachReport &d : rep.inner)
            {
                over_cap += d.iterations > s.max_inner;
                for (std::size_t l = 1; l < d.mu_trace.size(); ++l)
                    mu_bad += !(d.mu_trace[l] > d.mu_trace[l - 1]);
            }
        }
        return {mu_bad == 0 && obj_bad == 0 && over_cap == 0 && converged >= 95,
                fmt("100 scenarios, converged within M=L=20 at eps=1e-4: %d%% (need 95%%), mu steps not increasing "
                    "%d, objective drops > 1e-9 %d, cap overruns %d",
                    converged, mu_bad, obj_bad, over_cap)};
    }

    OracleGrid refined_grid()
    {
        OracleGrid g;
        g.joint = true;
        g.n_power = 11;
        g.n_kappa = 6;
        g.n_theta = 32;
        g.zoom_levels = 20;
        g.refine_starts = 256;
        return g;
    }

    Outcome oracle_sandwich()
    {
        Outcome out;
        for (double p : {1.0, 10.0})
        {
            const ScenarioConfig c = oracle::scenario(oracle::h1(), p);
            const double pgs = symmetric_rate(c, Method::pgs);
            const double fp = symmetric_rate(c, Method::fp_igs);
            const double orc = grid_oracle(c, {}, refined_grid()).symmetric_rate();
            const bool close = std::abs(fp - orc) <= 5e-2;
            const double gap = std::max(fp, orc) - pgs;
            const bool shape = p == 1.0 ? gap <= 1e-2 : fp >= pgs;
            out.passed = out.passed && close && shape;
            out.detail += fmt("%sP=%g: PGS %.6f FP-IGS %.6f oracle %.6f |FP-oracle| %.1e (tol 5e-2) ",
                              out.detail.empty() ? "" : "; ", p, pgs, fp, orc, std::abs(fp - orc));
            out.detail += p == 1.0 ? fmt("IGS-PGS gap %.4f (tol 1e-2)", gap)
                                   : fmt("FP-IGS - PGS %.4f (need >= 0)", fp - pgs);
        }
        return out;
    }

    Outcome dominance()
    {
        double worst = 0.0;
        int instances = 0;
        const auto compare = [&](const ScenarioConfig &c, const ProfileWeights &w) {
            const LinkVectors v = build_link_vectors(c);
            const Vec2 pgs = solve_point(c, v, Method::pgs, w).rates;
            const Vec2 s = solve_point(c, v, Method::s_igs, w).rates;
            worst = std::max(worst, (pgs - s).maxCoeff());
            ++instances;
        };
        for (double var : {0.5, 1.0})
        {
            const ScenarioConfig c = oracle::scenario(oracle::h2(), 1.0, var);
            for (int i = 0; i <= 20; ++i)
                compare(c, ProfileWeights::from_alpha1(i / 20.0));
        }
        std::mt19937_64 rng(107);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int t = 0; t < 200; ++t)
            compare(random_scenario_rows(rng), ProfileWeights::from_alpha1(u(rng)));
        return {worst <= 1e-9,
                fmt("%d instances (H2 alpha sweeps and random), max PGS - S-IGS per-user rate %.2e (tol 1e-9)",
                    instances, worst)};
    }

    Outcome asymmetry_benefit(int threads)
    {
        Outcome out;
        for (double var : {0.2, 0.5})
        {
            const ScenarioConfig c = oracle::scenario(oracle::h1(), 1.0, var, var);
            const double pgs = symmetric_rate(c, Method::pgs);
            const double s = symmetric_rate(c, Method::s_igs);
            const double fp = symmetric_rate(c, Method::fp_igs);
            out.passed = out.passed && s > pgs + 1e-6 && fp > pgs + 1e-6;
            out.detail += fmt("var %.1f: S-IGS-PGS %.4f FP-IGS-PGS %.4f (need > 1e-6); ", var, s - pgs, fp - pgs);
        }

        SweepSpec sweep;
        sweep.variable = SweepVariable::circularity;
        sweep.values = {0.0, 0.5, 0.9, 1.0};
        sweep.snr_db = 10.0 * std::log10(20.0);
        sweep.hwd_variance = 0.5;
        const std::vector<Method> methods{Method::pgs, Method::s_igs, Method::fp_igs};
        const std::vector<SweepCell> cells = monte_carlo(methods, sweep, 100, 108, {}, threads);
        for (int m = 1; m < 3; ++m)
        {
            std::vector<double> gap;
            for (std::size_t i = 0; i < sweep.values.size(); ++i)
                gap.push_back(cells[3 * i + m].mean - cells[3 * i].mean);
            double worst = 0.0;
            for (std::size_t i = 1; i < gap.size(); ++i)
                worst = std::max(worst, gap[i - 1] - gap[i]);
            out.passed = out.passed && worst <= 1e-3;
            out.detail += fmt("%s gap over circularity {0,.5,.9,1}: %.4f %.4f %.4f %.4f, max drop %.1e (tol 1e-3)%s",
                              to_string(methods[m]).c_str(), gap[0], gap[1], gap[2], gap[3], worst,
                              m == 1 ? "; " : "");
        }
        return out;
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    Outcome determinism(int threads)
    {
        const std::string text = R"({"mode": "sweep", "seed": 9, "methods": ["PGS", "S-IGS", "FP-IGS"],
          "sweep": {"variable": "circularity", "values": [0.0, 1.0], "snr_db": 10, "hwd_variance": 0.3,
                    "realizations": 10}})";
        ExperimentSpec spec = parse_experiment(nlohmann::json::parse(text));
        const auto root = std::filesystem::temp_directory_path() / "icigs_acceptance";
        std::filesystem::remove_all(root);
        int identical = 0, files = 0;
        spec.threads = threads;
        const RunResult a = run_experiment(spec, root / "a", text);
        const RunResult b = run_experiment(spec, root / "b", text);
        for (const std::string &f : a.files)
        {
            if (f.size() < 4 || f.substr(f.size() - 4) != ".csv")
                continue;
            ++files;
            identical += slurp(root / "a" / f) == slurp(root / "b" / f);
        }
        std::filesystem::remove_all(root);
        return {a.exit_code == 0 && b.exit_code == 0 && files == 3 && identical == files,
                fmt("two seeded sweep runs, %d/%d CSVs byte-identical, exit codes %d %d", identical, files,
                    a.exit_code, b.exit_code)};
    }

    struct Criterion
    {
        const char *title;
        double time_limit; // seconds, 0 for none
        std::function<Outcome()> run;
    };
} // namespace

int main()
{
    const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const std::vector<Criterion> criteria{
        {"formula identity", 5.0, formula_identity},
        {"surrogate bounds and gradients", 30.0, surrogate_suite},
        {"proper-signaling lower bound", 0.0, proper_bound},
        {"closed-form feasibility", 0.0, closed_form_feasibility},
        {"Dinkelbach/MM convergence", 120.0, mm_convergence},
        {"oracle sandwich on H1", 120.0, oracle_sandwich},
        {"S-IGS dominates PGS", 0.0, dominance},
        {"asymmetry benefit", 0.0, [&] { return asymmetry_benefit(threads); }},
        {"sweep determinism", 0.0, [&] { return determinism(threads); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        const Criterion &c = criteria[i];
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string timing = fmt("%.2f s", dt);
        if (c.time_limit > 0.0)
        {
            timing += fmt(" (limit %g s)", c.time_limit);
            o.passed = o.passed && dt < c.time_limit;
        }
        failed += !o.passed;
        std::printf("%s %zu %s: %s [%s]\n", o.passed ? "PASS" : "FAIL", i + 1, c.title, o.detail.c_str(),
                    timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
