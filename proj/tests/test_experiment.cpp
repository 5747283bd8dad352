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

#include "oracle.hpp"

#include "icigs/experiment.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace icigs;
using nlohmann::json;

namespace
{
    std::filesystem::path scratch(const std::string &name)
    {
        const auto dir = std::filesystem::temp_directory_path() / ("icigs_test_" + name);
        std::filesystem::remove_all(dir);
        return dir;
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    json h1_scenario(double power)
    {
        json j = json::parse(R"({
          "channels": [[{"mag": 1.4070, "phase_rad": 0.2721}, {"mag": 0.9288, "phase_rad": 1.8320}],
                       [{"mag": 0.9288, "phase_rad": 1.8320}, {"mag": 1.7367, "phase_rad": 1.1136}]],
          "noise_power": 1.0
        })");
        j["power"] = power;
        return j;
    }
} // namespace

TEST_CASE("complex values")
{
    CHECK(parse_complex(json(2.5)) == cplx(2.5, 0.0));
    CHECK(parse_complex(json{{"re", 1.0}, {"im", -2.0}}) == cplx(1.0, -2.0));
    const cplx p = parse_complex(json{{"mag", 2.0}, {"phase_rad", M_PI / 2}});
    CHECK(std::abs(p - cplx(0.0, 2.0)) < 1e-15);
    CHECK_THROWS_AS(parse_complex(json{{"re", 1.0}}), ConfigError);
    CHECK_THROWS_AS(parse_complex(json("1+2i")), ConfigError);
}

TEST_CASE("scenario parsing")
{
    SUBCASE("channels are indexed [transmitter][receiver]")
    {
        const ScenarioConfig c = parse_scenario(h1_scenario(10.0));
        CHECK(c.channels.isApprox(oracle::h1(), 1e-15));
        CHECK(c.power_budgets == Vec2(10.0, 10.0));
        json j = h1_scenario(1.0);
        j["channels"][0][1] = json{{"re", 0.0}, {"im", 3.0}};
        CHECK(parse_scenario(j).channels(0, 1) == cplx(0.0, 3.0));
    }
    SUBCASE("budgets")
    {
        json j = h1_scenario(1.0);
        j.erase("power");
        j["snr_db"] = 10.0;
        j["noise_power"] = 0.5;
        CHECK(parse_scenario(j).power_budgets[0] == doctest::Approx(5.0));
        j["power_budgets"] = {1.0, 2.0};
        CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("exactly one"), ConfigError);
        j.erase("snr_db");
        CHECK(parse_scenario(j).power_budgets == Vec2(1.0, 2.0));
    }
    SUBCASE("distortion, scalar and per link")
    {
        json j = h1_scenario(1.0);
        j["hwd"] = {{"variance", 0.5}, {"complementary", json{{"mag", 0.5}, {"phase_rad", 1.0}}}};
        const ScenarioConfig c = parse_scenario(j);
        CHECK(c.hwd.variance[1][0] == 0.5);
        CHECK(std::abs(c.hwd.complementary[0][1]) == doctest::Approx(0.5));
        j["hwd"] = {{"variance", {{0.1, 0.2}, {0.3, 0.4}}}};
        CHECK(parse_scenario(j).hwd.variance[1][0] == 0.3);
    }
    SUBCASE("invalid distortion is a config error")
    {
        json j = h1_scenario(1.0);
        j["hwd"] = {{"variance", 0.2}, {"complementary", 0.3}};
        CHECK_THROWS_WITH_AS(parse_scenario(j), doctest::Contains("complementary"), ConfigError);
    }
    SUBCASE("random channels")
    {
        json j = h1_scenario(1.0);
        j["channels"] = {{"random_index", 4}};
        CHECK(parse_scenario(j, 77).channels == random_channels(77, 4));
    }
    SUBCASE("missing and malformed fields")
    {
        json j = h1_scenario(1.0);
        j.erase("channels");
        CHECK_THROWS_AS(parse_scenario(j), ConfigError);
        j = h1_scenario(1.0);
        j["channels"] = {{1.0, 0.0}};
        CHECK_THROWS_AS(parse_scenario(j), ConfigError);
        CHECK_THROWS_AS(parse_scenario(json::array()), ConfigError);
    }
}

TEST_CASE("scenario encoding is lossless")
{
    std::mt19937_64 rng(61);
    for (int t = 0; t < 50; ++t)
    {
        ScenarioConfig c = oracle::scenario(oracle::random_channels(rng), 3.7 + t, 0.3, std::polar(0.1, 0.7 * t),
                                            0.1 * (t + 1));
        c.power_budgets[1] = 1.0 / 3.0;
        c.hwd.variance[0][1] = 0.9;
        const ScenarioConfig back = parse_scenario(json::parse(scenario_to_json(c).dump()));
        CHECK(back == c);
    }
}

TEST_CASE("experiment parsing")
{
    json j{{"mode", "sweep"},
           {"seed", 12},
           {"methods", {"pgs", "S-IGS"}},
           {"solver", {{"epsilon", 1e-5}, {"max_outer", 7}, {"start", "zero"}, {"proper_restart", false}}},
           {"oracle", {{"joint", true}, {"refine_starts", 4}}},
           {"sweep", {{"variable", "circularity"}, {"start", 0.0}, {"stop", 1.0}, {"step", 0.25}, {"realizations", 3}}}};
    const ExperimentSpec s = parse_experiment(j);
    CHECK(s.mode == Mode::sweep);
    CHECK(s.seed == 12);
    CHECK(s.methods == std::vector<Method>{Method::pgs, Method::s_igs});
    CHECK(s.settings.fp.epsilon == 1e-5);
    CHECK(s.settings.dcp.epsilon == 1e-5);
    CHECK(s.settings.fp.max_outer == 7);
    CHECK(s.settings.fp.start == FpStart::zero);
    CHECK_FALSE(s.settings.fp.proper_restart);
    CHECK(s.settings.grid.joint);
    CHECK(s.sweep.variable == SweepVariable::circularity);
    CHECK(s.sweep.values == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(s.realizations == 3);

    const ExperimentSpec d = parse_experiment(json::object());
    CHECK(d.mode == Mode::region);
    CHECK(d.points == 21);
    CHECK(d.settings.fp.max_outer == 20);
    CHECK(d.settings.fp.max_inner == 20);
    CHECK(d.settings.dcp.max_iter == 40);

    CHECK_THROWS_AS(parse_experiment(json{{"mode", "plot"}}), ConfigError);
    CHECK_THROWS_AS(parse_experiment(json{{"points", 1}}), ConfigError);
    CHECK_THROWS_AS(parse_experiment(json{{"methods", json::array()}}), ConfigError);
    CHECK_THROWS_AS(parse_experiment(json{{"methods", {"MMSE"}}}), ConfigError);
    CHECK_THROWS_AS(parse_experiment(json{{"solver", {{"epsilon", -1.0}}}}), ConfigError);
    CHECK_THROWS_AS(parse_experiment(json{{"solver", {{"start", "random"}}}}), ConfigError);
    CHECK_THROWS_AS(parse_experiment(json{{"sweep", {{"variable", "phase"}, {"values", {1.0}}}}}), ConfigError);
    CHECK_THROWS_AS(parse_experiment(json::array()), ConfigError);
}

TEST_CASE("number formatting and hashing")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(std::stod(format_number(M_PI)) == doctest::Approx(M_PI).epsilon(1e-12));
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("region run writes CSVs and a manifest")
{
    json j{{"mode", "region"}, {"points", 5}, {"methods", {"PGS", "FP-IGS"}}, {"scenario", h1_scenario(10.0)}};
    const std::string text = j.dump();
    const auto dir = scratch("region");
    const RunResult r = run_experiment(parse_experiment(j), dir, text);
    CHECK(r.exit_code == exit_ok);
    REQUIRE(r.files.size() == 4);
    CHECK(r.files[0] == "region_pgs.csv");
    CHECK(r.files[2] == "region_fp-igs.csv");

    std::istringstream csv(slurp(dir / "region_fp-igs.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "alpha1,p1,p2,q1_re,q1_im,q2_re,q2_im,R1,R2");
    int rows = 0;
    while (std::getline(csv, line))
        ++rows;
    CHECK(rows == 5);
    CHECK(slurp(dir / "region_pgs_hull.csv").rfind("R1,R2\n", 0) == 0);

    const json m = json::parse(slurp(dir / "manifest.json"));
    CHECK(m["mode"] == "region");
    CHECK(m["exit_code"] == 0);
    CHECK(m["version"] == tool_version);
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
    CHECK(m["config_hash"] == std::string("fnv1a64:") + hash);
    CHECK(parse_scenario(m["scenario"]) == *parse_experiment(j).scenario);
}

TEST_CASE("sweep runs are byte-identical across thread counts")
{
    json j{{"mode", "sweep"},
           {"seed", 5},
           {"methods", {"PGS", "S-IGS", "FP-IGS"}},
           {"sweep", {{"variable", "snr_db"}, {"values", {0.0, 10.0}}, {"realizations", 4}}}};
    ExperimentSpec s = parse_experiment(j);
    const auto a = scratch("sweep_a"), b = scratch("sweep_b");
    s.threads = 1;
    CHECK(run_experiment(s, a, j.dump()).exit_code == exit_ok);
    s.threads = 3;
    CHECK(run_experiment(s, b, j.dump()).exit_code == exit_ok);
    for (const char *f : {"sweep_pgs.csv", "sweep_s-igs.csv", "sweep_fp-igs.csv", "manifest.json"})
        CHECK(slurp(a / f) == slurp(b / f));
    CHECK(slurp(a / "sweep_pgs.csv").rfind("snr_db,method,mean_sym_rate,stderr\n", 0) == 0);
}

TEST_CASE("exit codes")
{
    SUBCASE("missing scenario is a config error")
    {
        const RunResult r = run_experiment(parse_experiment(json{{"mode", "region"}}), scratch("noscen"), "{}");
        CHECK(r.exit_code == exit_config);
        CHECK(r.diagnostic.find("scenario") != std::string::npos);
    }
    SUBCASE("verify passes on a valid scenario")
    {
        json j{{"mode", "verify"}, {"verify_samples", 200}, {"scenario", h1_scenario(1.0)}};
        j["scenario"]["hwd"] = {{"variance", 0.3}, {"complementary", 0.2}};
        const auto dir = scratch("verify");
        CHECK(run_experiment(parse_experiment(j), dir, j.dump()).exit_code == exit_ok);
        CHECK(slurp(dir / "verify.csv").find("false") == std::string::npos);
    }
    SUBCASE("kernel cap on most points")
    {
        json j{{"mode", "region"},
               {"points", 3},
               {"methods", {"FP-IGS"}},
               {"solver", {{"kernel_max_iter", 1}}},
               {"scenario", h1_scenario(10.0)}};
        CHECK(run_experiment(parse_experiment(j), scratch("cap"), j.dump()).exit_code == exit_solver_cap);
    }
}
