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

#include <memory>

#include "statewalk/hilbert.hpp"

namespace statewalk {

/**
 * Unnormalized 1D complex DFT of fixed length backed by FFTW.
 *
 * forward() computes X_k = sum_j x_j exp(-2 pi i jk/n); backward() applies
 * the inverse including the 1/n factor, so backward(forward(x)) == x.
 * Plans are created once under a global lock and executed with the
 * new-array interface, which is safe from concurrent lanes.
 */
class Fft
{
  public:
    explicit Fft(Eigen::Index n);
    ~Fft();
    Fft(Fft&&) noexcept;
    Fft& operator=(Fft&&) noexcept;
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    Eigen::Index size() const { return n_; }

    CVector forward(const CVector& x) const;
    CVector backward(const CVector& x) const;

  private:
    struct Plans;
    Eigen::Index n_;
    std::unique_ptr<Plans> plans_;
};

/// Angular wavenumbers 2 pi m / L in FFT order (m = 0, 1, ..., -1).
RVector fft_wavenumbers(Eigen::Index n, double length);

}  // namespace statewalk
