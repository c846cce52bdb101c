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

#include "statewalk/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "statewalk/spectral.hpp"

namespace statewalk {
namespace {

constexpr double kCoverage = 6.0;
constexpr double kMaxSpacingRatio = 0.25;

void check_grid(const Grid& grid)
{
    if (!(grid.spacing > 0.0) || grid.points < 2 || !(grid.hbar > 0.0))
        throw std::invalid_argument("invalid grid");
}

void check_params(const GaussianParams& params)
{
    if (params.dim != 1 && params.dim != 3)
        throw std::invalid_argument("Gaussian dimension must be 1 or 3");
    if (params.center.size() != params.dim || params.momentum.size() != params.dim)
        throw std::invalid_argument("Gaussian parameter length mismatch");
    if (!(params.width > 0.0))
        throw std::invalid_argument("Gaussian width must be > 0");
}

void check_resolution(const GaussianParams& params, const Grid& grid)
{
    if (grid.spacing > kMaxSpacingRatio * params.width)
        throw std::invalid_argument("under-resolved Gaussian");
    for (Eigen::Index j = 0; j < params.dim; ++j)
    {
        double a = params.center[j];
        if (a - kCoverage * params.width < grid.x_min
            || a + kCoverage * params.width > grid.x_max())
            throw std::invalid_argument("under-resolved Gaussian");
    }
}

CVector kron(const std::vector<CVector>& factors)
{
    CVector out = factors.front();
    for (std::size_t f = 1; f < factors.size(); ++f)
    {
        const CVector& next = factors[f];
        CVector grown(out.size() * next.size());
        for (Eigen::Index i = 0; i < out.size(); ++i)
            grown.segment(i * next.size(), next.size()) = out[i] * next;
        out = std::move(grown);
    }
    return out;
}

ManifoldPoint build_point(const GaussianParams& params, const Grid& grid)
{
    std::vector<State> axes;
    std::vector<CVector> factors;
    for (Eigen::Index j = 0; j < params.dim; ++j)
    {
        axes.push_back(State::normalize(
            packet_amplitudes(params.center[j], params.width,
                              params.momentum[j], grid),
            "grid1d"));
        factors.push_back(axes.back().amplitudes());
    }
    State state = params.dim == 1
                      ? axes.front()
                      : State::normalize(kron(factors), "grid3d");
    return ManifoldPoint{params, grid, std::move(axes), std::move(state)};
}

}  // namespace

Grid Grid::centered(double extent, Eigen::Index n, double hbar)
{
    if (!(extent > 0.0) || n < 2)
        throw std::invalid_argument("invalid grid");
    return Grid{-0.5 * extent, extent / static_cast<double>(n), n, hbar};
}

RVector Grid::coordinates() const
{
    RVector xs(points);
    for (Eigen::Index j = 0; j < points; ++j)
        xs[j] = x(j);
    return xs;
}

RVector Grid::wavenumbers() const { return fft_wavenumbers(points, extent()); }

GaussianParams GaussianParams::at(double center, double width, double momentum)
{
    GaussianParams p;
    p.center = RVector::Constant(1, center);
    p.momentum = RVector::Constant(1, momentum);
    p.width = width;
    p.dim = 1;
    return p;
}

GaussianParams GaussianParams::at(const RVector& center, double width)
{
    GaussianParams p;
    p.center = center;
    p.momentum = RVector::Zero(center.size());
    p.width = width;
    p.dim = static_cast<int>(center.size());
    return p;
}

bool GaussianParams::has_momentum() const
{
    return momentum.size() > 0 && momentum.cwiseAbs().maxCoeff() != 0.0;
}

CVector packet_amplitudes(double center, double width, double momentum,
                          const Grid& grid)
{
    check_grid(grid);
    CVector psi(grid.points);
    const double inv = 1.0 / (4.0 * width * width);
    for (Eigen::Index j = 0; j < grid.points; ++j)
    {
        double x = grid.x(j);
        double envelope = std::exp(-(x - center) * (x - center) * inv);
        psi[j] = envelope * std::polar(1.0, momentum * x / grid.hbar);
    }
    double norm = psi.norm();
    if (!(norm > 0.0))
        throw std::invalid_argument("under-resolved Gaussian");
    return psi / norm;
}

ManifoldPoint gaussian_state(const GaussianParams& params, const Grid& grid)
{
    check_params(params);
    check_grid(grid);
    if (params.has_momentum())
        throw std::invalid_argument("gaussian_state requires zero momentum");
    check_resolution(params, grid);
    return build_point(params, grid);
}

ManifoldPoint wave_packet(const GaussianParams& params, const Grid& grid)
{
    check_params(params);
    check_grid(grid);
    check_resolution(params, grid);
    for (Eigen::Index j = 0; j < params.dim; ++j)
        if (std::abs(params.momentum[j]) * grid.spacing / grid.hbar
            >= std::numbers::pi / 4)
            throw std::invalid_argument("momentum aliases on this grid");
    return build_point(params, grid);
}

double overlap_closed_form(const GaussianParams& first, const GaussianParams& second)
{
    check_params(first);
    check_params(second);
    if (first.dim != second.dim)
        throw std::invalid_argument("dimension mismatch");
    if (first.has_momentum() || second.has_momentum())
        throw std::invalid_argument("closed form requires zero momentum");
    const double s2 = first.width * first.width;
    const double d2 = second.width * second.width;
    const double prefactor = 2.0 * first.width * second.width / (s2 + d2);
    const double dist2 = (first.center - second.center).squaredNorm();
    return std::pow(prefactor, first.dim) * std::exp(-dist2 / (2.0 * (s2 + d2)));
}

double overlap_quadrature(const ManifoldPoint& first, const ManifoldPoint& second)
{
    if (!(first.grid == second.grid))
        throw std::invalid_argument("grid mismatch");
    if (first.axes.size() != second.axes.size())
        throw std::invalid_argument("dimension mismatch");
    double product = 1.0;
    for (std::size_t j = 0; j < first.axes.size(); ++j)
        product *= transition_probability(first.axes[j], second.axes[j]);
    return product;
}

std::pair<GaussianParams, GaussianParams> realize_fs_distance(double theta,
                                                              double width,
                                                              int dim)
{
    if (!(theta > 0.0) || !(theta < std::numbers::pi / 2))
        throw std::invalid_argument("theta must lie strictly inside (0, pi/2)");
    if (!(width > 0.0))
        throw std::invalid_argument("Gaussian width must be > 0");
    // -ln cos^2 theta, written to keep precision as theta -> 0.
    double s = std::sin(theta);
    double neg_log = -std::log1p(-s * s);
    double separation = 2.0 * width * std::sqrt(neg_log);
    RVector a = RVector::Zero(dim);
    RVector b = RVector::Zero(dim);
    b[0] = separation;
    return {GaussianParams::at(a, width), GaussianParams::at(b, width)};
}

TranslationFrame translation_tangent_basis(const ManifoldPoint& point)
{
    const GaussianParams& params = point.params;
    if (params.has_momentum())
        throw std::invalid_argument("translation frame requires zero momentum");
    const double sigma2 = params.width * params.width;
    std::vector<CVector> factors;
    for (const auto& axis : point.axes)
        factors.push_back(axis.amplitudes());

    CMatrix vectors(point.state.dim(), params.dim);
    std::vector<double> raw_norms;
    for (int j = 0; j < params.dim; ++j)
    {
        CVector derivative(point.grid.points);
        for (Eigen::Index i = 0; i < point.grid.points; ++i)
            derivative[i] = factors[j][i]
                            * ((point.grid.x(i) - params.center[j]) / (2.0 * sigma2));
        std::vector<CVector> parts = factors;
        parts[j] = derivative;
        TangentVector t = horizontal_project(point.state, kron(parts));
        double norm = t.components.norm();
        if (!(norm > 1e-6 / params.width))
            throw std::invalid_argument("degenerate translation derivative");
        raw_norms.push_back(norm);
        vectors.col(j) = t.components / norm;
    }
    return TranslationFrame{HorizontalFrame(point.state, std::move(vectors)),
                            std::move(raw_norms)};
}

double induced_metric_ratio(double width, double displacement, const Grid& grid)
{
    double eps = std::abs(displacement);
    if (!(eps > 0.0))
        throw std::invalid_argument("displacement must be nonzero");
    if (eps > width)
        throw std::invalid_argument("displacement outside the small-distance regime");
    double mid = grid.x(grid.points / 2);
    auto g0 = gaussian_state(GaussianParams::at(mid, width), grid);
    auto g1 = gaussian_state(GaussianParams::at(mid + displacement, width), grid);
    return fs_distance(g0.state, g1.state) / eps;
}

double momentum_expectation(const CVector& psi, const Grid& grid)
{
    if (psi.size() != grid.points)
        throw std::invalid_argument("grid mismatch");
    Fft fft(grid.points);
    CVector spectrum = fft.forward(psi);
    RVector k = grid.wavenumbers();
    RVector weight = spectrum.cwiseAbs2();
    return grid.hbar * k.dot(weight) / weight.sum();
}

CMatrix momentum_operator(const Grid& grid)
{
    const Eigen::Index n = grid.points;
    Fft fft(n);
    RVector k = grid.wavenumbers();
    CMatrix p(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
    {
        CVector e = CVector::Unit(n, j);
        CVector spectrum = fft.forward(e);
        spectrum.array() *= (grid.hbar * k).array().cast<Complex>();
        p.col(j) = fft.backward(spectrum);
    }
    // Symmetrize away rounding so the matrix is exactly Hermitian.
    CMatrix herm = 0.5 * (p + p.adjoint());
    return herm;
}

CVector translate_spectral(const CVector& psi, const Grid& grid, double shift)
{
    if (psi.size() != grid.points)
        throw std::invalid_argument("grid mismatch");
    Fft fft(grid.points);
    CVector spectrum = fft.forward(psi);
    RVector k = grid.wavenumbers();
    for (Eigen::Index m = 0; m < k.size(); ++m)
        spectrum[m] *= std::polar(1.0, -k[m] * shift);
    return fft.backward(spectrum);
}

}  // namespace statewalk
