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

#include "statewalk/report.hpp"

#include <algorithm>

namespace statewalk {

bool TestReport::is_contrast() const
{
    return details.value("role", std::string{}) == role_name(TestRole::Contrast);
}

bool TestReport::is_inconclusive() const
{
    return details.value("inconclusive", false);
}

bool verdict(double p_value, double alpha, TestRole role)
{
    return role == TestRole::Conformance ? p_value > alpha : p_value < alpha;
}

const char* role_name(TestRole role)
{
    return role == TestRole::Conformance ? "conformance" : "contrast";
}

TestReport make_pvalue_report(std::string name, double statistic,
                              double p_value, double alpha, TestRole role,
                              std::uint64_t samples, std::uint64_t seed)
{
    TestReport r;
    r.name = std::move(name);
    r.statistic = statistic;
    r.p_value = std::clamp(p_value, 0.0, 1.0);
    r.alpha = alpha;
    r.passed = verdict(r.p_value, alpha, role);
    r.samples = samples;
    r.seed = seed;
    r.details["role"] = role_name(role);
    r.details["kind"] = "pvalue";
    return r;
}

TestReport make_threshold_report(std::string name, double statistic,
                                 double limit, TestRole role,
                                 std::uint64_t samples, std::uint64_t seed)
{
    TestReport r;
    r.name = std::move(name);
    r.statistic = statistic;
    r.p_value = std::clamp(1.0 - statistic / limit, 0.0, 1.0);
    r.alpha = 0.0;
    bool within = statistic < limit;
    r.passed = role == TestRole::Conformance ? within : !within;
    r.samples = samples;
    r.seed = seed;
    r.details["role"] = role_name(role);
    r.details["kind"] = "threshold";
    r.details["limit"] = limit;
    return r;
}

void to_json(nlohmann::json& j, const TestReport& r)
{
    j = nlohmann::json{{"name", r.name},       {"statistic", r.statistic},
                       {"p_value", r.p_value}, {"alpha", r.alpha},
                       {"passed", r.passed},   {"samples", r.samples},
                       {"seed", r.seed},       {"details", r.details}};
}

void from_json(const nlohmann::json& j, TestReport& r)
{
    j.at("name").get_to(r.name);
    j.at("statistic").get_to(r.statistic);
    j.at("p_value").get_to(r.p_value);
    j.at("alpha").get_to(r.alpha);
    j.at("passed").get_to(r.passed);
    j.at("samples").get_to(r.samples);
    j.at("seed").get_to(r.seed);
    r.details = j.at("details");
}

}  // namespace statewalk
