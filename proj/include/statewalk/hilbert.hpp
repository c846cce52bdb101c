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

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace statewalk {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Numerical tolerances of the state arithmetic. Defaults are the contract
/// values; experiments may override them through the config file.
struct Tolerances
{
    double norm = 1e-12;        // unit norm after construction
    double unit_input = 1e-9;   // accepted drift for already-unit inputs
    double horizontal = 1e-10;  // <base, tangent> for horizontal vectors
    double frame = 1e-8;        // Gram deviation of an orthonormal frame
};

const Tolerances& default_tolerances();

/**
 * Unit vector over a finite basis, standing for a point of projective
 * Hilbert space. The representative is gauge fixed: the first amplitude of
 * largest modulus is real and positive.
 */
class State
{
  public:
    /// Rescale and gauge fix. Throws std::invalid_argument("degenerate
    /// state") for a zero vector.
    static State normalize(const CVector& v, std::string basis_label = {});

    /// Gauge fix a vector that is already unit norm (e.g. the output of an
    /// exact unitary step) without rescaling it.
    static State from_unit(const CVector& v, std::string basis_label = {});

    const CVector& amplitudes() const { return amplitudes_; }
    Eigen::Index dim() const { return amplitudes_.size(); }
    const std::string& basis_label() const { return basis_label_; }

    Complex operator[](Eigen::Index i) const { return amplitudes_[i]; }

  private:
    State(CVector amplitudes, std::string basis_label);

    CVector amplitudes_;
    std::string basis_label_;
};

/// Free-function form of State::normalize.
State normalize(const CVector& v, std::string basis_label = {});

/// Multiply by the phase that makes the first largest-modulus entry real
/// and positive.
CVector gauge_fixed(const CVector& v);

/// Fubini-Study angle in [0, pi/2].
double fs_distance(const State& u, const State& v);
double fs_distance(const CVector& u, const CVector& v);

/// |<u, v>|^2.
double transition_probability(const State& u, const State& v);

struct TangentVector
{
    CVector components;
    State base;
};

/// w - base <base, w>.
TangentVector horizontal_project(const State& base, const CVector& w);

/// Orthonormal family of horizontal vectors at a base state, stored as
/// matrix columns.
class HorizontalFrame
{
  public:
    /// Validates orthonormality (Gram deviation) and horizontality; throws
    /// std::invalid_argument otherwise.
    HorizontalFrame(State base, CMatrix vectors,
                    const Tolerances& tol = default_tolerances());

    /// Orthonormal basis of the full horizontal space (n - 1 vectors).
    static HorizontalFrame complete(const State& base);

    const State& base() const { return base_; }
    const CMatrix& vectors() const { return vectors_; }
    Eigen::Index size() const { return vectors_.cols(); }

  private:
    State base_;
    CMatrix vectors_;
};

/// c_k = <basis_k, t>.
CVector tangent_components(const TangentVector& t, const HorizontalFrame& frame);

}  // namespace statewalk
