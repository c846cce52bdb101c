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

#include <array>
#include <cstdint>
#include <string_view>

namespace statewalk {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// SplitMix64 output finalizer.
std::uint64_t mix64(std::uint64_t z);

/**
 * Counter-based random stream.
 *
 * A stream is identified by (root seed, path). Block b of the stream is
 * philox4x32(counter = {b_lo, b_hi, path_lo, path_hi}, key = {seed_lo,
 * seed_hi}). Child streams are derived with
 *
 *     child.path = mix64(parent.path * 0x9E3779B97F4A7C15 + index + 1)
 *
 * so any (seed, index chain) reproduces the same draws regardless of how
 * trials are scheduled. There is no way to share a stream between lanes:
 * split() returns a fresh value and draws advance only the local counter.
 *
 * Uniform doubles take the top 53 bits of each 64-bit output. Normal
 * deviates use the Box-Muller transform and consume two 64-bit outputs per
 * pair; the second deviate of each pair is cached.
 */
class RandomStream
{
  public:
    static constexpr std::string_view generator_name = "philox4x32-10";
    static constexpr std::string_view derivation_rule
        = "child.path = mix64(parent.path * 0x9E3779B97F4A7C15 + index + 1)";

    explicit RandomStream(std::uint64_t seed, std::uint64_t path = 0);

    RandomStream split(std::uint64_t index) const;

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on (0, 1].
    double uniform_positive();
    /// Standard normal deviate.
    double normal();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t path() const { return path_; }

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t path_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

/// Independent stream for one trial of a run rooted at `root_seed`.
RandomStream split_rng(std::uint64_t root_seed, std::uint64_t trial_index);

}  // namespace statewalk
