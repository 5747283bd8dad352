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

#ifndef ICIGS_EXPERIMENT_HPP
#define ICIGS_EXPERIMENT_HPP

#include "icigs/region.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace icigs
{
    inline constexpr const char *tool_version = "1.0.0";

    enum ExitCode : int
    {
        exit_ok = 0,
        exit_failure = 1,
        exit_config = 2,
        exit_infeasible = 3,
        exit_solver_cap = 4
    };

    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    enum class Mode
    {
        region,
        symmetric,
        sweep,
        oracle,
        verify
    };

    std::string to_string(Mode m);
    Mode mode_from_string(const std::string &name);

    /// A parsed and validated configuration file.
    struct ExperimentSpec
    {
        Mode mode = Mode::region;
        std::vector<Method> methods{Method::pgs, Method::fp_igs};
        std::uint64_t seed = 0;

        /// Explicit or single random scenario; absent for sweeps.
        std::optional<ScenarioConfig> scenario;
        /// Random scenarios for symmetric mode: channels random_channels(seed, i),
        /// i < random_count, with the remaining scenario fields kept.
        int random_count = 0;

        int points = 21;
        SweepSpec sweep;
        int realizations = 100;
        int verify_samples = 1000;
        MethodSettings settings;
        int threads = 1;
    };

    /// {re, im} or {mag, phase_rad}. A bare number is a real value.
    cplx parse_complex(const nlohmann::json &j);

    /// Scenario block. Channels are a 2x2 array indexed [transmitter][receiver],
    /// or {"random_index": i} for random_channels(seed, i). Budgets come from
    /// "power_budgets" [P1, P2], "power" P or "snr_db". HWD is "hwd": {"variance",
    /// "complementary"} with scalars (all links) or 2x2 arrays.
    ScenarioConfig parse_scenario(const nlohmann::json &j, std::uint64_t seed = 0);

    /// Lossless encoding accepted by parse_scenario.
    nlohmann::json scenario_to_json(const ScenarioConfig &cfg);

    /// Throws ConfigError naming the offending key or bound.
    ExperimentSpec parse_experiment(const nlohmann::json &j);

    /// 12 significant digits, shortest form, '.' decimal.
    std::string format_number(double x);

    std::uint64_t fnv1a(std::string_view bytes);

    struct RunResult
    {
        int exit_code = exit_ok;
        std::vector<std::filesystem::path> files;
        std::string diagnostic;
    };

    /// Runs the experiment and writes CSVs plus manifest.json into out_dir.
    /// config_text is hashed into the manifest.
    RunResult run_experiment(const ExperimentSpec &spec, const std::filesystem::path &out_dir,
                             std::string_view config_text);

} // namespace icigs

#endif
