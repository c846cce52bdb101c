// Copyright 2026 The statewalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "statewalk/config.hpp"
#include "statewalk/experiments.hpp"

namespace {

constexpr const char* kExperiments =
    "gaussian-overlap, sample-gue, sample-goe, walk, constrained-walk, drift-walk, "
    "classical-limit, verify-all";

}  // namespace

int main(int argc, char** argv)
{
    using namespace statewalk;

    CLI::App app{"statewalk: random Hamiltonian walks on projective Hilbert space"};
    std::string experiment;
    std::string config_path;
    std::optional<std::int64_t> seed;
    std::optional<std::string> out;
    std::optional<std::int64_t> trials;
    bool quiet = false;
    app.add_option("experiment", experiment, std::string("one of ") + kExperiments)->required();
    app.add_option("--config", config_path, "configuration file")->required();
    app.add_option("--seed", seed, "root seed (overrides the file)");
    app.add_option("--out", out, "output directory (overrides the file)");
    app.add_option("--trials", trials, "trial count (overrides the file)");
    app.add_flag("--quiet", quiet, "no progress output");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    std::map<std::string, int> lines;
    ExperimentConfig config;
    try
    {
        if (!is_experiment_name(experiment))
            throw ConfigError(0, "unknown experiment '" + experiment + "' (expected one of "
                                     + kExperiments + ")");
        config = load_config(config_path, &lines);
        if (lines.count("experiment") && config.experiment != experiment)
            throw ConfigError(lines.at("experiment"),
                              "experiment: file says '" + config.experiment
                                  + "' but the command runs '" + experiment + "'");
        config.experiment = experiment;
        // command-line values have no line to point at
        if (seed)
        {
            config.seed = *seed;
            lines.erase("seed");
        }
        if (out)
        {
            config.out = *out;
            lines.erase("out");
        }
        if (trials)
        {
            config.trials = *trials;
            lines.erase("trials");
        }
        validate(config, lines);
    }
    catch (const ConfigError& e)
    {
        std::cerr << "statewalk: " << config_path << ": " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception& e)
    {
        std::cerr << "statewalk: " << e.what() << "\n";
        return kExitRuntime;
    }

    try
    {
        RunOutcome outcome = run_experiment(config, quiet ? nullptr : &std::cerr);
        if (outcome.exit_code == kExitTestFailure && !quiet)
        {
            for (const auto& r : outcome.reports)
                if (!r.passed)
                    std::cerr << "statewalk: test failed: " << r.name << "\n";
        }
        return outcome.exit_code;
    }
    catch (const ConfigError& e)
    {
        std::cerr << "statewalk: " << config_path << ": " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception& e)
    {
        std::cerr << "statewalk: " << experiment << ": " << e.what() << "\n";
        return kExitRuntime;
    }
}
