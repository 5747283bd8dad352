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

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace
{
    int thread_count()
    {
        if (const char *env = std::getenv("IC_IGS_THREADS"))
        {
            const int n = std::atoi(env);
            if (n >= 1)
                return n;
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    std::vector<icigs::Method> parse_methods(const std::string &list)
    {
        std::vector<icigs::Method> out;
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                out.push_back(icigs::method_from_string(item));
        if (out.empty())
            throw icigs::ConfigError("--method list is empty");
        return out;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Rate regions of the two-user interference channel with hardware distortion"};
    app.set_version_flag("--version", icigs::tool_version);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> points;
    std::string methods;

    for (const char *name : {"region", "symmetric", "sweep", "oracle", "verify"})
    {
        static const std::map<std::string, std::string> help{
            {"region", "boundary of the rate region over a weight grid"},
            {"symmetric", "symmetric rate at equal weights"},
            {"sweep", "Monte-Carlo averaged symmetric rate over a parameter grid"},
            {"oracle", "region boundary by exhaustive search"},
            {"verify", "model and algorithm invariant checks"}};
        CLI::App *sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "random seed (overrides the config)");
        sub->add_option("--out", out_dir, "output directory")->capture_default_str();
        sub->add_option("--points", points, "number of weight points (overrides the config)");
        sub->add_option("--method", methods, "comma-separated list of PGS, S-IGS, FP-IGS, ORACLE");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? icigs::exit_ok : icigs::exit_config;
    }
    const std::string mode = app.get_subcommands().front()->get_name();

    std::ifstream in(config_path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    icigs::ExperimentSpec spec;
    try
    {
        nlohmann::json j = nlohmann::json::parse(text);
        if (!j.is_object())
            throw icigs::ConfigError("config root must be an object");
        j["mode"] = mode;
        if (seed)
            j["seed"] = *seed;
        if (points)
            j["points"] = *points;
        spec = icigs::parse_experiment(j);
        if (!methods.empty())
            spec.methods = parse_methods(methods);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        std::cerr << "error: " << config_path << ": " << e.what() << '\n';
        return icigs::exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return icigs::exit_config;
    }
    spec.threads = thread_count();

    icigs::RunResult res;
    try
    {
        res = icigs::run_experiment(spec, out_dir, text);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return icigs::exit_failure;
    }
    for (const auto &f : res.files)
        std::cout << (std::filesystem::path(out_dir) / f).string() << '\n';
    if (res.exit_code != icigs::exit_ok)
        std::cerr << "error: " << res.diagnostic << '\n';
    return res.exit_code;
}
