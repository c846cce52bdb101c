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
#include <string>
#include <vector>

#include "statewalk/output.hpp"
#include "statewalk/report.hpp"

namespace statewalk {

struct VerifyOptions
{
    std::uint64_t seed = 2026;
    double alpha = 0.01;
    double hbar = 1.0;
};

/// Data behind one figure kind, written as <name>.csv by verify-all.
struct NamedTable
{
    std::string name;
    CsvTable table;
};

struct CriterionResult
{
    int id = 0;
    std::string title;
    double time_limit = 0.0;  // seconds
    double seconds = 0.0;
    std::vector<TestReport> reports;
    std::vector<NamedTable> tables;
    nlohmann::json notes = nlohmann::json::object();

    /// Every conformance report passed and every contrast was detected.
    bool reports_passed() const;
    bool within_time() const { return seconds < time_limit; }
};

inline constexpr int kCriteria = 9;

/// Root seed of criterion `id`: mix64(seed + id).
std::uint64_t criterion_seed(std::uint64_t seed, int id);

/// Runs acceptance criterion 1..9 and times it.
CriterionResult run_criterion(int id, const VerifyOptions& options);

}  // namespace statewalk
