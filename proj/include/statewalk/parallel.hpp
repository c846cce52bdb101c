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

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace statewalk {

/// Lane count from STATEWALK_LANES, else the hardware concurrency.
inline int lanes_from_env()
{
    if (const char* env = std::getenv("STATEWALK_LANES"))
    {
        try
        {
            int lanes = std::stoi(env);
            if (lanes >= 1)
                return lanes;
        }
        catch (const std::exception&)
        {
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/**
 * Evaluate fn(trial) for trial = 0..count-1 across lanes. Each lane writes
 * only its own result slots; the returned vector is in trial order, so the
 * output does not depend on the lane count. The first exception thrown by
 * any trial is rethrown after all lanes join.
 */
template <class T, class Fn>
std::vector<T> run_trials(std::size_t count, Fn&& fn, int lanes = lanes_from_env())
{
    std::vector<T> results(count);
    lanes = std::max(1, std::min<int>(lanes, static_cast<int>(count)));
    if (lanes <= 1)
    {
        for (std::size_t t = 0; t < count; ++t)
            results[t] = fn(t);
        return results;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    for (int lane = 0; lane < lanes; ++lane)
    {
        workers.emplace_back([&, lane] {
            try
            {
                for (std::size_t t = lane; t < count; t += lanes)
                    results[t] = fn(t);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    }
    for (auto& w : workers)
        w.join();
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

}  // namespace statewalk
