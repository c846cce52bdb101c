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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace statewalk {

/// Invalid configuration; line is 1-based, 0 when no line applies.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(int line, const std::string& message);
    int line() const { return line_; }

  private:
    int line_;
};

struct GridSection
{
    double extent = 20.0;
    std::int64_t points = 400;
    bool operator==(const GridSection&) const = default;
};

struct OverlapSection
{
    double sigma_min = 0.5;
    double sigma_max = 2.0;
    double separation_max = 4.0;
    std::int64_t pairs = 200;
    bool operator==(const OverlapSection&) const = default;
};

struct EnsembleSection
{
    std::string kind = "gue";
    std::int64_t dim = 64;
    double scale = 1.0;
    std::int64_t samples = 200;
    bool write_matrices = false;
    bool operator==(const EnsembleSection&) const = default;
};

struct WalkSection
{
    std::int64_t dim = 64;
    std::int64_t steps = 100;
    double dt = 0.01;
    std::string stepper = "exact-eigen";
    std::string initial = "basis";
    bool operator==(const WalkSection&) const = default;
};

struct ConstrainedSection
{
    std::int64_t dim = 1;
    std::int64_t steps = 1000;
    double dt = 0.01;
    double step_std = 1.0;
    bool operator==(const ConstrainedSection&) const = default;
};

struct DriftSection
{
    double kappa = 1.0;
    std::int64_t targets = 3;
    double target_theta = 0.8;
    double capture_radius = 0.1;
    bool operator==(const DriftSection&) const = default;
};

struct PotentialSection
{
    std::string kind = "linear";
    double force = 2.0;
    double stiffness = 0.0;
    double quartic = 0.0;
    bool operator==(const PotentialSection&) const = default;
};

struct ClassicalSection
{
    double mass = 1.0;
    double sigma = 0.1;
    double center = 0.0;
    double momentum = 0.0;
    double dt = 1e-3;
    std::int64_t steps = 1000;
    bool operator==(const ClassicalSection&) const = default;
};

/**
 * Everything one run needs. The file format is a flat list of typed
 * `key = value` lines grouped by `[section]` headers; top-level keys come
 * before the first header. Values are integers, floats, booleans
 * (true/false) or double-quoted strings. `#` starts a comment. Unknown
 * sections or keys, duplicates and type mismatches are rejected with the
 * offending line number. docs/config.md lists every key.
 */
struct ExperimentConfig
{
    std::string experiment = "verify-all";
    std::int64_t seed = 2026;
    std::string out = "out";
    std::int64_t trials = 1000;
    std::int64_t stride = 1;
    double alpha = 0.01;
    double hbar = 1.0;

    GridSection grid;
    OverlapSection overlap;
    EnsembleSection ensemble;
    WalkSection walk;
    ConstrainedSection constrained;
    DriftSection drift;
    PotentialSection potential;
    ClassicalSection classical;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Experiment names accepted on the command line and in the file.
bool is_experiment_name(std::string_view name);

/// Parses and validates. Throws ConfigError. key_lines, when given,
/// receives the line of every key present ("section.key" or "key").
ExperimentConfig parse_config(std::string_view text,
                              std::map<std::string, int>* key_lines = nullptr);
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::map<std::string, int>* key_lines = nullptr);

/// Canonical text: every key, in schema order. parse_config of the result
/// reproduces the config exactly.
std::string to_config_text(const ExperimentConfig& config);

/// Range and consistency checks; throws ConfigError anchored at the line
/// recorded for the offending key (0 when it was left at its default).
void validate(const ExperimentConfig& config,
              const std::map<std::string, int>& key_lines = {});

nlohmann::json config_to_json(const ExperimentConfig& config);

}  // namespace statewalk
