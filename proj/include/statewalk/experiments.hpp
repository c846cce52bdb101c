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

#include <ostream>
#include <vector>

#include "statewalk/config.hpp"
#include "statewalk/report.hpp"

namespace statewalk {

inline constexpr const char* kArtifactVersion = "statewalk-artifacts/1";

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitTestFailure = 3;

struct RunOutcome
{
    int exit_code = kExitOk;
    std::vector<TestReport> reports;
};

/**
 * Runs config.experiment and writes its outputs under config.out, then
 * manifest.json. Returns kExitOk or kExitTestFailure; runtime problems
 * propagate as exceptions. Progress goes to `log` when it is not null.
 */
RunOutcome run_experiment(const ExperimentConfig& config, std::ostream* log = nullptr);

}  // namespace statewalk
