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

#include "icigs/experiment.hpp"
#include "icigs/verification.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace icigs
{
    using nlohmann::json;

    namespace
    {
        template <class T>
        T get_or(const json &j, const char *key, T fallback)
        {
            if (!j.contains(key))
                return fallback;
            try
            {
                return j.at(key).get<T>();
            }
            catch (const json::exception &)
            {
                throw ConfigError(std::string("key '") + key + "' has the wrong type");
            }
        }

        double number(const json &j, const std::string &what)
        {
            if (!j.is_number())
                throw ConfigError(what + " must be a number");
            return j.get<double>();
        }

        std::array<std::array<double, 2>, 2> real_grid(const json &j, const std::string &what)
        {
            std::array<std::array<double, 2>, 2> out{};
            if (j.is_number())
            {
                for (auto &row : out)
                    row.fill(j.get<double>());
                return out;
            }
            if (!j.is_array() || j.size() != 2)
                throw ConfigError(what + " must be a number or a 2x2 array");
            for (int r = 0; r < 2; ++r)
            {
                if (!j[r].is_array() || j[r].size() != 2)
                    throw ConfigError(what + " must be a number or a 2x2 array");
                for (int c = 0; c < 2; ++c)
                    out[r][c] = number(j[r][c], what);
            }
            return out;
        }

        std::array<std::array<cplx, 2>, 2> complex_grid(const json &j, const std::string &what)
        {
            std::array<std::array<cplx, 2>, 2> out{};
            if (!j.is_array())
            {
                const cplx v = parse_complex(j);
                for (auto &row : out)
                    row.fill(v);
                return out;
            }
            if (j.size() != 2)
                throw ConfigError(what + " must be a 2x2 array");
            for (int r = 0; r < 2; ++r)
            {
                if (!j[r].is_array() || j[r].size() != 2)
                    throw ConfigError(what + " must be a 2x2 array");
                for (int c = 0; c < 2; ++c)
                    out[r][c] = parse_complex(j[r][c]);
            }
            return out;
        }

        json complex_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

        std::vector<double> parse_grid(const json &j)
        {
            std::vector<double> values;
            if (j.contains("values"))
            {
                if (!j["values"].is_array())
                    throw ConfigError("sweep.values must be an array");
                for (const auto &v : j["values"])
                    values.push_back(number(v, "sweep.values entry"));
            }
            else if (j.contains("start") && j.contains("stop") && j.contains("step"))
            {
                const double start = number(j["start"], "sweep.start");
                const double stop = number(j["stop"], "sweep.stop");
                const double step = number(j["step"], "sweep.step");
                if (!(step > 0.0) || stop < start)
                    throw ConfigError("sweep grid needs step > 0 and stop >= start");
                const long n = std::lround((stop - start) / step);
                for (long i = 0; i <= n; ++i)
                    values.push_back(start + static_cast<double>(i) * step);
            }
            if (values.empty())
                throw ConfigError("sweep grid is empty");
            return values;
        }

        std::string lower(std::string s)
        {
            for (auto &c : s)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            return s;
        }

        class CsvFile
        {
        public:
            CsvFile(const std::filesystem::path &path, const std::string &header) : out_(path, std::ios::binary)
            {
                if (!out_)
                    throw std::runtime_error("cannot write " + path.string());
                out_ << header << '\n';
            }

            CsvFile &field(double x)
            {
                sep();
                out_ << format_number(x);
                return *this;
            }

            CsvFile &field(const std::string &s)
            {
                sep();
                out_ << s;
                return *this;
            }

            void end()
            {
                out_ << '\n';
                first_ = true;
            }

        private:
            void sep()
            {
                if (!first_)
                    out_ << ',';
                first_ = false;
            }

            std::ofstream out_;
            bool first_ = true;
        };

        void write_signal_row(CsvFile &csv, const RegionPoint &pt)
        {
            csv.field(pt.weights.alpha1)
                .field(pt.signal.p[0])
                .field(pt.signal.p[1])
                .field(pt.signal.q[0].real())
                .field(pt.signal.q[0].imag())
                .field(pt.signal.q[1].real())
                .field(pt.signal.q[1].imag())
                .field(pt.rates[0])
                .field(pt.rates[1]);
            csv.end();
        }

        const char *region_header = "alpha1,p1,p2,q1_re,q1_im,q2_re,q2_im,R1,R2";
    } // namespace

    std::string to_string(Mode m)
    {
        switch (m)
        {
        case Mode::region:
            return "region";
        case Mode::symmetric:
            return "symmetric";
        case Mode::sweep:
            return "sweep";
        case Mode::oracle:
            return "oracle";
        case Mode::verify:
            return "verify";
        }
        return "unknown";
    }

    Mode mode_from_string(const std::string &name)
    {
        for (Mode m : {Mode::region, Mode::symmetric, Mode::sweep, Mode::oracle, Mode::verify})
            if (name == to_string(m))
                return m;
        throw ConfigError("unknown mode '" + name + "'");
    }

    cplx parse_complex(const json &j)
    {
        if (j.is_number())
            return {j.get<double>(), 0.0};
        if (j.is_object() && j.contains("re") && j.contains("im"))
            return {number(j["re"], "re"), number(j["im"], "im")};
        if (j.is_object() && j.contains("mag") && j.contains("phase_rad"))
            return std::polar(number(j["mag"], "mag"), number(j["phase_rad"], "phase_rad"));
        throw ConfigError("complex value must be {re, im}, {mag, phase_rad} or a number");
    }

    ScenarioConfig parse_scenario(const json &j, std::uint64_t seed)
    {
        if (!j.is_object())
            throw ConfigError("scenario must be an object");
        ScenarioConfig cfg;
        cfg.noise_power = get_or<double>(j, "noise_power", 1.0);

        if (!j.contains("channels"))
            throw ConfigError("scenario.channels is required");
        const json &h = j["channels"];
        if (h.is_object() && h.contains("random_index"))
            cfg.channels = random_channels(seed, get_or<std::uint64_t>(h, "random_index", 0));
        else
        {
            const auto grid = complex_grid(h, "scenario.channels");
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    cfg.channels(r, c) = grid[r][c];
        }

        const int budget_keys = int(j.contains("power_budgets")) + int(j.contains("power")) + int(j.contains("snr_db"));
        if (budget_keys != 1)
            throw ConfigError("scenario needs exactly one of power_budgets, power, snr_db");
        if (j.contains("power_budgets"))
        {
            const json &pb = j["power_budgets"];
            if (!pb.is_array() || pb.size() != 2)
                throw ConfigError("scenario.power_budgets must be [P1, P2]");
            cfg.power_budgets << number(pb[0], "P1"), number(pb[1], "P2");
        }
        else if (j.contains("power"))
        {
            const double p = number(j["power"], "scenario.power");
            cfg.power_budgets << p, p;
        }
        else
        {
            const double p = db_to_linear(number(j["snr_db"], "scenario.snr_db")) * cfg.noise_power;
            cfg.power_budgets << p, p;
        }

        if (j.contains("hwd"))
        {
            const json &d = j["hwd"];
            if (!d.is_object())
                throw ConfigError("scenario.hwd must be an object");
            if (d.contains("variance"))
                cfg.hwd.variance = real_grid(d["variance"], "hwd.variance");
            if (d.contains("complementary"))
                cfg.hwd.complementary = complex_grid(d["complementary"], "hwd.complementary");
        }

        try
        {
            cfg.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
        return cfg;
    }

    json scenario_to_json(const ScenarioConfig &cfg)
    {
        json h = json::array(), var = json::array(), comp = json::array();
        for (int r = 0; r < 2; ++r)
        {
            h.push_back({complex_to_json(cfg.channels(r, 0)), complex_to_json(cfg.channels(r, 1))});
            var.push_back({cfg.hwd.variance[r][0], cfg.hwd.variance[r][1]});
            comp.push_back({complex_to_json(cfg.hwd.complementary[r][0]), complex_to_json(cfg.hwd.complementary[r][1])});
        }
        return json{{"channels", h},
                    {"noise_power", cfg.noise_power},
                    {"power_budgets", {cfg.power_budgets[0], cfg.power_budgets[1]}},
                    {"hwd", {{"variance", var}, {"complementary", comp}}}};
    }

    ExperimentSpec parse_experiment(const json &j)
    {
        if (!j.is_object())
            throw ConfigError("config root must be an object");
        ExperimentSpec spec;
        try
        {
            if (j.contains("mode"))
                spec.mode = mode_from_string(get_or<std::string>(j, "mode", "region"));
            spec.seed = get_or<std::uint64_t>(j, "seed", 0);
            if (j.contains("methods"))
            {
                if (!j["methods"].is_array() || j["methods"].empty())
                    throw ConfigError("methods must be a nonempty array");
                spec.methods.clear();
                for (const auto &m : j["methods"])
                    spec.methods.push_back(method_from_string(m.get<std::string>()));
            }
            spec.points = get_or<int>(j, "points", spec.points);
            spec.verify_samples = get_or<int>(j, "verify_samples", spec.verify_samples);

            if (j.contains("solver"))
            {
                const json &s = j["solver"];
                auto &st = spec.settings;
                st.fp.epsilon = get_or<double>(s, "epsilon", st.fp.epsilon);
                st.dcp.epsilon = st.fp.epsilon;
                st.fp.max_outer = get_or<int>(s, "max_outer", st.fp.max_outer);
                st.fp.max_inner = get_or<int>(s, "max_inner", st.fp.max_inner);
                st.dcp.max_iter = get_or<int>(s, "dcp_max_iter", st.dcp.max_iter);
                st.fp.kernel_tol = st.dcp.kernel_tol = get_or<double>(s, "kernel_tol", st.fp.kernel_tol);
                st.fp.kernel_max_iter = st.dcp.kernel_max_iter =
                    get_or<int>(s, "kernel_max_iter", st.fp.kernel_max_iter);
                st.bisection_tol = get_or<double>(s, "bisection_tol", st.bisection_tol);
                const std::string start = get_or<std::string>(s, "start", "proper_seeded");
                if (start == "zero")
                    st.fp.start = FpStart::zero;
                else if (start == "proper_seeded")
                    st.fp.start = FpStart::proper_seeded;
                else
                    throw ConfigError("solver.start must be \"zero\" or \"proper_seeded\"");
                st.fp.seed_circularity = get_or<double>(s, "seed_circularity", st.fp.seed_circularity);
                st.fp.proper_restart = get_or<bool>(s, "proper_restart", st.fp.proper_restart);
            }
            if (j.contains("oracle"))
            {
                const json &o = j["oracle"];
                auto &g = spec.settings.grid;
                g.n_power = get_or<int>(o, "n_power", g.n_power);
                g.n_kappa = get_or<int>(o, "n_kappa", g.n_kappa);
                g.n_theta = get_or<int>(o, "n_theta", g.n_theta);
                g.passes = get_or<int>(o, "passes", g.passes);
                g.zoom_levels = get_or<int>(o, "zoom_levels", g.zoom_levels);
                g.refine_starts = get_or<int>(o, "refine_starts", g.refine_starts);
                g.joint = get_or<bool>(o, "joint", g.joint);
            }

            if (j.contains("scenario"))
            {
                const json &s = j["scenario"];
                if (s.is_object() && s.contains("random_count"))
                {
                    spec.random_count = get_or<int>(s, "random_count", 0);
                    if (spec.random_count < 1)
                        throw ConfigError("scenario.random_count must be >= 1");
                    json base = s;
                    base.erase("random_count");
                    base["channels"] = json{{"random_index", 0}};
                    spec.scenario = parse_scenario(base, spec.seed);
                }
                else
                    spec.scenario = parse_scenario(s, spec.seed);
            }

            if (j.contains("sweep"))
            {
                const json &s = j["sweep"];
                std::string var = get_or<std::string>(s, "variable", "snr_db");
                if (var == "snr")
                    var = "snr_db";
                spec.sweep.variable = sweep_variable_from_string(var);
                spec.sweep.values = parse_grid(s);
                spec.sweep.noise_power = get_or<double>(s, "noise_power", 1.0);
                spec.sweep.snr_db = get_or<double>(s, "snr_db", 0.0);
                spec.sweep.hwd_variance = get_or<double>(s, "hwd_variance", 0.0);
                spec.sweep.circularity = get_or<double>(s, "circularity", 0.0);
                spec.realizations = get_or<int>(s, "realizations", spec.realizations);
                for (double v : spec.sweep.values)
                    sweep_scenario(spec.sweep, v, Eigen::Matrix2cd::Identity());
            }
        }
        catch (const json::exception &e)
        {
            throw ConfigError(e.what());
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }

        if (spec.points < 2)
            throw ConfigError("points must be >= 2");
        if (spec.realizations < 1)
            throw ConfigError("sweep.realizations must be >= 1");
        if (spec.verify_samples < 1)
            throw ConfigError("verify_samples must be >= 1");
        try
        {
            spec.settings.fp.validate();
            if (spec.settings.dcp.max_iter < 1 || !(spec.settings.bisection_tol > 0.0))
                throw std::invalid_argument("dcp_max_iter must be >= 1 and bisection_tol > 0");
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
        return spec;
    }

    std::string format_number(double x)
    {
        if (x == 0.0)
            x = 0.0; // drops the sign of -0
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
        return std::string(buf, res.ptr);
    }

    std::uint64_t fnv1a(std::string_view bytes)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : bytes)
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    RunResult run_experiment(const ExperimentSpec &spec, const std::filesystem::path &out_dir,
                             std::string_view config_text)
    {
        RunResult res;
        std::filesystem::create_directories(out_dir);
        int attempted = 0;
        int capped = 0;

        auto need_scenario = [&]() -> const ScenarioConfig &
        {
            if (!spec.scenario)
                throw ConfigError(to_string(spec.mode) + " mode needs a scenario block");
            return *spec.scenario;
        };
        auto file_for = [&](const std::string &stem)
        {
            const auto path = out_dir / (stem + ".csv");
            res.files.push_back(path.filename());
            return path;
        };

        try
        {
            switch (spec.mode)
            {
            case Mode::region:
            case Mode::oracle:
            {
                const ScenarioConfig &cfg = need_scenario();
                const std::vector<Method> methods =
                    spec.mode == Mode::oracle ? std::vector<Method>{Method::oracle} : spec.methods;
                for (Method m : methods)
                {
                    const RegionBoundary b = sweep_boundary(cfg, m, spec.points, spec.settings);
                    const std::string stem = to_string(spec.mode) + "_" + lower(to_string(m));
                    CsvFile csv(file_for(stem), region_header);
                    for (const auto &pt : b.points)
                    {
                        write_signal_row(csv, pt);
                        capped += pt.kernel_limit_hit ? 1 : 0;
                    }
                    attempted += spec.points;
                    CsvFile hull(file_for(stem + "_hull"), "R1,R2");
                    for (const Vec2 &v : b.hull)
                    {
                        hull.field(v[0]).field(v[1]);
                        hull.end();
                    }
                    if (!b.failures.empty())
                    {
                        res.exit_code = exit_infeasible;
                        res.diagnostic = "alpha1=" + format_number(b.failures.front().first.alpha1) + ": " +
                                         b.failures.front().second;
                    }
                }
                break;
            }
            case Mode::symmetric:
            {
                const ScenarioConfig &base = need_scenario();
                const int count = std::max(1, spec.random_count);
                for (Method m : spec.methods)
                {
                    CsvFile csv(file_for("symmetric_" + lower(to_string(m))), "realization,R1,R2,sym_rate");
                    for (int r = 0; r < count; ++r)
                    {
                        ScenarioConfig cfg = base;
                        if (spec.random_count > 0)
                            cfg.channels = random_channels(spec.seed, static_cast<std::uint64_t>(r));
                        const RegionPoint pt =
                            solve_point(cfg, build_link_vectors(cfg), m, ProfileWeights{}, spec.settings);
                        ++attempted;
                        capped += pt.kernel_limit_hit ? 1 : 0;
                        csv.field(std::to_string(r)).field(pt.rates[0]).field(pt.rates[1]).field(pt.symmetric_rate());
                        csv.end();
                    }
                }
                break;
            }
            case Mode::sweep:
            {
                if (spec.sweep.values.empty())
                    throw ConfigError("sweep mode needs a sweep block");
                const std::vector<SweepCell> cells = monte_carlo(spec.methods, spec.sweep, spec.realizations,
                                                                 spec.seed, spec.settings, spec.threads);
                const std::string var = to_string(spec.sweep.variable);
                for (Method m : spec.methods)
                {
                    CsvFile csv(file_for("sweep_" + lower(to_string(m))), var + ",method,mean_sym_rate,stderr");
                    for (const auto &c : cells)
                    {
                        if (c.method != m)
                            continue;
                        csv.field(c.value).field(to_string(m)).field(c.mean).field(c.stderr_of_mean);
                        csv.end();
                        attempted += c.samples + c.failures;
                        capped += c.kernel_limit_hits;
                        if (c.failures > 0 && res.exit_code == exit_ok)
                        {
                            res.exit_code = exit_infeasible;
                            res.diagnostic = std::to_string(c.failures) + " realization(s) failed for " +
                                             to_string(m) + " at " + var + "=" + format_number(c.value);
                        }
                    }
                }
                break;
            }
            case Mode::verify:
            {
                const ScenarioConfig &cfg = need_scenario();
                CsvFile csv(file_for("verify"), "check,passed,worst,tolerance,samples");
                for (const auto &c : verify_scenario(cfg, spec.verify_samples, spec.seed))
                {
                    csv.field(c.name)
                        .field(std::string(c.passed ? "true" : "false"))
                        .field(c.worst)
                        .field(c.tolerance)
                        .field(std::to_string(c.samples));
                    csv.end();
                    if (!c.passed && res.exit_code == exit_ok)
                    {
                        res.exit_code = exit_failure;
                        res.diagnostic = "invariant '" + c.name + "' violated (worst " + format_number(c.worst) + ")";
                    }
                }
                break;
            }
            }
        }
        catch (const ConfigError &e)
        {
            res.exit_code = exit_config;
            res.diagnostic = e.what();
            return res;
        }
        catch (const DomainError &e)
        {
            res.exit_code = exit_infeasible;
            res.diagnostic = e.what();
        }
        catch (const std::runtime_error &e)
        {
            res.exit_code = exit_infeasible;
            res.diagnostic = e.what();
        }

        if (res.exit_code == exit_ok && attempted > 0 && 10 * capped > attempted)
        {
            res.exit_code = exit_solver_cap;
            res.diagnostic = "kernel iteration cap hit on " + std::to_string(capped) + " of " +
                             std::to_string(attempted) + " points";
        }

        json methods = json::array();
        for (Method m : spec.methods)
            methods.push_back(to_string(m));
        json files = json::array();
        for (const auto &f : res.files)
            files.push_back(f.string());
        char hash[17];
        std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(config_text)));
        json manifest{{"tool", "ic_igs"},
                      {"version", tool_version},
                      {"mode", to_string(spec.mode)},
                      {"seed", spec.seed},
                      {"config_hash", std::string("fnv1a64:") + hash},
                      {"methods", methods},
                      {"files", files},
                      {"exit_code", res.exit_code}};
        if (spec.scenario)
            manifest["scenario"] = scenario_to_json(*spec.scenario);
        std::ofstream(out_dir / "manifest.json", std::ios::binary) << manifest.dump(2) << '\n';
        return res;
    }

} // namespace icigs
