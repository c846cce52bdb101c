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

#include "statewalk/spectral.hpp"

#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

namespace statewalk {
namespace {

std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct Fft::Plans
{
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

Fft::Fft(Eigen::Index n) : n_(n), plans_(std::make_unique<Plans>())
{
    if (n < 1)
        throw std::invalid_argument("fft length must be positive");
    // FFTW_ESTIMATE does not touch the buffers; alignment of later arrays
    // is handled by FFTW_UNALIGNED.
    CVector scratch_in(n), scratch_out(n);
    std::lock_guard lock(planner_mutex());
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans_->forward = fftw_plan_dft_1d(static_cast<int>(n),
                                       as_fftw(scratch_in.data()),
                                       as_fftw(scratch_out.data()),
                                       FFTW_FORWARD, flags);
    plans_->backward = fftw_plan_dft_1d(static_cast<int>(n),
                                        as_fftw(scratch_in.data()),
                                        as_fftw(scratch_out.data()),
                                        FFTW_BACKWARD, flags);
}

Fft::~Fft()
{
    if (!plans_)
        return;
    std::lock_guard lock(planner_mutex());
    if (plans_->forward)
        fftw_destroy_plan(plans_->forward);
    if (plans_->backward)
        fftw_destroy_plan(plans_->backward);
}

Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

CVector Fft::forward(const CVector& x) const
{
    if (x.size() != n_)
        throw std::invalid_argument("fft length mismatch");
    CVector in = x;
    CVector out(n_);
    fftw_execute_dft(plans_->forward, as_fftw(in.data()), as_fftw(out.data()));
    return out;
}

CVector Fft::backward(const CVector& x) const
{
    if (x.size() != n_)
        throw std::invalid_argument("fft length mismatch");
    CVector in = x;
    CVector out(n_);
    fftw_execute_dft(plans_->backward, as_fftw(in.data()), as_fftw(out.data()));
    return out / static_cast<double>(n_);
}

RVector fft_wavenumbers(Eigen::Index n, double length)
{
    RVector k(n);
    for (Eigen::Index m = 0; m < n; ++m)
    {
        Eigen::Index signed_m = (m <= (n - 1) / 2) ? m : m - n;
        k[m] = 2.0 * std::numbers::pi * static_cast<double>(signed_m) / length;
    }
    return k;
}

}  // namespace statewalk
