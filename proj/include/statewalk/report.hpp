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

#include <json.hpp>

namespace statewalk {

/// A conformance test passes when the data look like its null (p > alpha).
/// A designed contrast feeds a deliberately violated null; its report
/// passes when the violation is detected (p < alpha).
enum class TestRole
{
    Conformance,
    Contrast
};

/**
 * Outcome of one named statistical test.
 *
 * Serialized as {name, statistic, p_value, alpha, passed, samples, seed,
 * details{}}. details always carries "role" and "kind"; kind is "pvalue"
 * for tests with a reference distribution and "threshold" for tolerance
 * checks, where p_value holds the normalized margin 1 - statistic/limit
 * (clamped to [0, 1]) and alpha is 0.
 */
struct TestReport
{
    std::string name;
    double statistic = 0.0;
    double p_value = 0.0;
    double alpha = 0.01;
    bool passed = false;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    nlohmann::json details = nlohmann::json::object();

    bool is_contrast() const;
    bool is_inconclusive() const;
};

/// Verdict for a p-value under the given role.
bool verdict(double p_value, double alpha, TestRole role);

const char* role_name(TestRole role);

/// Report with p-value semantics; fills passed from the role.
TestReport make_pvalue_report(std::string name, double statistic,
                              double p_value, double alpha, TestRole role,
                              std::uint64_t samples, std::uint64_t seed);

/// Report with tolerance semantics: passes (as conformance) iff
/// statistic < limit.
TestReport make_threshold_report(std::string name, double statistic,
                                 double limit, TestRole role,
                                 std::uint64_t samples, std::uint64_t seed);

void to_json(nlohmann::json& j, const TestReport& r);
void from_json(const nlohmann::json& j, TestReport& r);

}  // namespace statewalk
