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

#include "statewalk/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace statewalk {

const Tolerances& default_tolerances()
{
    static const Tolerances tol{};
    return tol;
}

CVector gauge_fixed(const CVector& v)
{
    Eigen::Index peak = 0;
    double peak_abs = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        double a = std::abs(v[i]);
        if (a > peak_abs)
        {
            peak_abs = a;
            peak = i;
        }
    }
    if (peak_abs <= 0.0)
        return v;
    Complex phase = std::conj(v[peak]) / peak_abs;
    CVector out = v * phase;
    // Pin the reference amplitude exactly on the positive real axis.
    out[peak] = Complex(std::abs(out[peak]), 0.0);
    return out;
}

State::State(CVector amplitudes, std::string basis_label)
    : amplitudes_(std::move(amplitudes)), basis_label_(std::move(basis_label))
{
}

State State::normalize(const CVector& v, std::string basis_label)
{
    double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw std::invalid_argument("degenerate state");
    return State(gauge_fixed(v / norm), std::move(basis_label));
}

State State::from_unit(const CVector& v, std::string basis_label)
{
    double norm = v.norm();
    if (std::abs(norm - 1.0) > default_tolerances().unit_input)
        throw std::invalid_argument("state is not unit norm");
    return State(gauge_fixed(v), std::move(basis_label));
}

State normalize(const CVector& v, std::string basis_label)
{
    return State::normalize(v, std::move(basis_label));
}

double fs_distance(const CVector& u, const CVector& v)
{
    if (u.size() != v.size())
        throw std::invalid_argument("dimension mismatch");
    Complex overlap = u.dot(v);
    double r = std::abs(overlap);
    if (r == 0.0)
        return std::numbers::pi / 2;
    // Chord between u and the phase-aligned v: accurate at small angles,
    // where arccos of the overlap loses half the digits.
    CVector aligned = v * (std::conj(overlap) / r);
    double chord = (u - aligned).norm();
    double theta = 2.0 * std::asin(std::min(1.0, 0.5 * chord));
    return std::clamp(theta, 0.0, std::numbers::pi / 2);
}

double fs_distance(const State& u, const State& v)
{
    return fs_distance(u.amplitudes(), v.amplitudes());
}

double transition_probability(const State& u, const State& v)
{
    if (u.dim() != v.dim())
        throw std::invalid_argument("dimension mismatch");
    return std::clamp(std::norm(u.amplitudes().dot(v.amplitudes())), 0.0, 1.0);
}

TangentVector horizontal_project(const State& base, const CVector& w)
{
    if (base.dim() != w.size())
        throw std::invalid_argument("dimension mismatch");
    const CVector& b = base.amplitudes();
    return TangentVector{w - b * b.dot(w), base};
}

HorizontalFrame::HorizontalFrame(State base, CMatrix vectors,
                                 const Tolerances& tol)
    : base_(std::move(base)), vectors_(std::move(vectors))
{
    if (vectors_.rows() != base_.dim())
        throw std::invalid_argument("frame dimension mismatch");
    const Eigen::Index k = vectors_.cols();
    CMatrix gram = vectors_.adjoint() * vectors_;
    double gram_dev = (gram - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (k > 0 && gram_dev > tol.frame)
        throw std::invalid_argument("frame is not orthonormal");
    if (k > 0)
    {
        double vertical
            = (vectors_.adjoint() * base_.amplitudes()).cwiseAbs().maxCoeff();
        if (vertical > tol.frame)
            throw std::invalid_argument("frame is not horizontal");
    }
}

HorizontalFrame HorizontalFrame::complete(const State& base)
{
    const Eigen::Index n = base.dim();
    CMatrix seed(n, n);
    seed.col(0) = base.amplitudes();
    seed.rightCols(n - 1) = CMatrix::Identity(n, n).leftCols(n - 1);
    Eigen::HouseholderQR<CMatrix> qr(seed);
    CMatrix q = qr.householderQ();
    return HorizontalFrame(base, q.rightCols(n - 1));
}

CVector tangent_components(const TangentVector& t, const HorizontalFrame& frame)
{
    if (t.components.size() != frame.base().dim())
        throw std::invalid_argument("dimension mismatch");
    return frame.vectors().adjoint() * t.components;
}

}  // namespace statewalk
