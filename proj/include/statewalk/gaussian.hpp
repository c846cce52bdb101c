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

#include <utility>
#include <vector>

#include "statewalk/hilbert.hpp"

namespace statewalk {

/**
 * Uniform periodic lattice x_j = x_min + j h, j = 0..points-1, used for
 * every axis of a d-dimensional tensor grid. hbar lives here so that all
 * phase factors built on the grid agree on units.
 */
struct Grid
{
    double x_min = -10.0;
    double spacing = 0.05;
    Eigen::Index points = 400;
    double hbar = 1.0;

    /// Grid of n points on [-extent/2, extent/2).
    static Grid centered(double extent, Eigen::Index n, double hbar = 1.0);

    double x(Eigen::Index j) const { return x_min + spacing * static_cast<double>(j); }
    double x_max() const { return x(points - 1); }
    double extent() const { return spacing * static_cast<double>(points); }
    RVector coordinates() const;
    /// Angular wavenumbers in FFT order.
    RVector wavenumbers() const;

    bool operator==(const Grid& other) const = default;
};

struct GaussianParams
{
    RVector center;    // a, length d
    RVector momentum;  // p, length d
    double width = 1.0;
    int dim = 1;

    static GaussianParams at(double center, double width, double momentum = 0.0);
    static GaussianParams at(const RVector& center, double width);
    bool has_momentum() const;
};

/**
 * Point of the Gaussian submanifold realized on a grid. For d > 1 the state
 * is the tensor product of per-axis factors (axis 0 slowest), and the
 * factors are kept so overlaps can be evaluated axis by axis.
 */
struct ManifoldPoint
{
    GaussianParams params;
    Grid grid;
    std::vector<State> axes;
    State state;
};

/// Normalized samples of exp(-(x-a)^2 / 4 sigma^2) exp(i p x / hbar) on one
/// axis, without gauge fixing (the x-dependent phase convention is kept).
CVector packet_amplitudes(double center, double width, double momentum,
                          const Grid& grid);

/// p = 0 Gaussian. Throws std::invalid_argument("under-resolved Gaussian")
/// when the grid does not cover a +- 6 sigma or h > sigma / 4.
ManifoldPoint gaussian_state(const GaussianParams& params, const Grid& grid);

/// Gaussian wave packet; additionally requires |p| h / hbar < pi / 4.
ManifoldPoint wave_packet(const GaussianParams& params, const Grid& grid);

/// cos^2 theta = (2 sigma delta / (sigma^2 + delta^2))^d
///               exp(-|a - b|^2 / (2 (sigma^2 + delta^2))), p = 0 only.
double overlap_closed_form(const GaussianParams& first, const GaussianParams& second);

/// |<s1, s2>|^2 on a shared grid, factorized over axes.
double overlap_quadrature(const ManifoldPoint& first, const ManifoldPoint& second);

/// Equal-width pair (center 0 and center |a - b| along axis 0) at FS
/// distance theta: |a - b| = 2 sigma sqrt(-ln cos^2 theta).
std::pair<GaussianParams, GaussianParams> realize_fs_distance(double theta,
                                                              double width,
                                                              int dim = 1);

struct TranslationFrame
{
    HorizontalFrame frame;
    /// Norms of the horizontal derivatives before normalization.
    std::vector<double> raw_norms;
};

/// Orthonormal horizontal frame e_j built from d/da_j of the state.
TranslationFrame translation_tangent_basis(const ManifoldPoint& point);

/// fs_distance(g_a, g_{a + eps}) / |eps| for a 1D Gaussian centered on the
/// grid midpoint.
double induced_metric_ratio(double width, double displacement, const Grid& grid);

/// <p> of a 1D grid wavefunction from its discrete spectrum.
double momentum_expectation(const CVector& psi, const Grid& grid);

/// Spectral momentum operator -i hbar d/dx as a dense Hermitian matrix.
CMatrix momentum_operator(const Grid& grid);

/// psi(x) -> psi(x - shift) by the spectral phase exp(-i k shift).
CVector translate_spectral(const CVector& psi, const Grid& grid, double shift);

}  // namespace statewalk
