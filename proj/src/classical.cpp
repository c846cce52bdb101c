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

#include "statewalk/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "statewalk/spectral.hpp"

namespace statewalk {

double PotentialSpec::value(double x) const
{
    switch (kind)
    {
    case Kind::Free:
        return 0.0;
    case Kind::Linear:
        return -force * x;
    case Kind::Harmonic:
        return 0.5 * stiffness * x * x;
    case Kind::Anharmonic:
        return 0.5 * stiffness * x * x + 0.25 * quartic * x * x * x * x;
    }
    return 0.0;
}

double PotentialSpec::gradient(double x) const
{
    switch (kind)
    {
    case Kind::Free:
        return 0.0;
    case Kind::Linear:
        return -force;
    case Kind::Harmonic:
        return stiffness * x;
    case Kind::Anharmonic:
        return stiffness * x + quartic * x * x * x;
    }
    return 0.0;
}

std::string to_string(PotentialSpec::Kind kind)
{
    switch (kind)
    {
    case PotentialSpec::Kind::Free:
        return "free";
    case PotentialSpec::Kind::Linear:
        return "linear";
    case PotentialSpec::Kind::Harmonic:
        return "harmonic";
    case PotentialSpec::Kind::Anharmonic:
        return "anharmonic";
    }
    return "free";
}

PotentialSpec::Kind potential_kind_from_string(const std::string& name)
{
    if (name == "free")
        return PotentialSpec::Kind::Free;
    if (name == "linear")
        return PotentialSpec::Kind::Linear;
    if (name == "harmonic")
        return PotentialSpec::Kind::Harmonic;
    if (name == "anharmonic")
        return PotentialSpec::Kind::Anharmonic;
    throw std::invalid_argument("unknown potential '" + name + "'");
}

namespace {

void check_mass(double mass)
{
    if (!(mass > 0.0))
        throw std::invalid_argument("mass must be > 0");
}

RVector potential_values(const Grid& grid, const PotentialSpec& pot)
{
    RVector v(grid.points);
    for (Eigen::Index j = 0; j < grid.points; ++j)
        v[j] = pot.value(grid.x(j));
    return v;
}

RVector kinetic_symbol(const Grid& grid, double mass)
{
    RVector k = grid.wavenumbers();
    return (grid.hbar * grid.hbar / (2.0 * mass)) * k.array().square();
}

Observables observe(const CVector& psi, const CVector& spectrum, const Grid& grid,
                    const RVector& potential, const RVector& kinetic,
                    const RVector& k)
{
    Observables obs;
    RVector density = psi.cwiseAbs2();
    double mass = density.sum();
    RVector xs = grid.coordinates();
    obs.x_mean = xs.dot(density) / mass;
    obs.x_variance = (xs.array() - obs.x_mean).square().matrix().dot(density) / mass;
    obs.potential = potential.dot(density) / mass;
    RVector weight = spectrum.cwiseAbs2();
    double total = weight.sum();
    obs.p_mean = grid.hbar * k.dot(weight) / total;
    obs.kinetic = kinetic.dot(weight) / total;
    return obs;
}

}  // namespace

Observables packet_observables(const CVector& psi, const Grid& grid,
                               const PotentialSpec& pot, double mass)
{
    check_mass(mass);
    if (psi.size() != grid.points)
        throw std::invalid_argument("grid mismatch");
    Fft fft(grid.points);
    return observe(psi, fft.forward(psi), grid, potential_values(grid, pot),
                   kinetic_symbol(grid, mass), grid.wavenumbers());
}

CVector apply_hamiltonian(const CVector& psi, const Grid& grid,
                          const PotentialSpec& pot, double mass)
{
    check_mass(mass);
    if (psi.size() != grid.points)
        throw std::invalid_argument("grid mismatch");
    Fft fft(grid.points);
    CVector spectrum = fft.forward(psi);
    spectrum.array() *= kinetic_symbol(grid, mass).array().cast<Complex>();
    CVector out = fft.backward(spectrum);
    out.array() += potential_values(grid, pot).array().cast<Complex>() * psi.array();
    return out;
}

CMatrix hamiltonian_matrix(const Grid& grid, const PotentialSpec& pot, double mass)
{
    const Eigen::Index n = grid.points;
    CMatrix h(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        h.col(j) = apply_hamiltonian(CVector::Unit(n, j), grid, pot, mass);
    return 0.5 * (h + h.adjoint());
}

PacketPath split_step_evolve(const CVector& initial, const Grid& grid,
                             const PotentialSpec& pot, double mass, double dt,
                             int steps, int stride)
{
    check_mass(mass);
    if (initial.size() != grid.points)
        throw std::invalid_argument("grid mismatch");
    if (!(dt > 0.0) || steps < 0 || stride < 1)
        throw std::invalid_argument("invalid propagation parameters");

    Fft fft(grid.points);
    const RVector potential = potential_values(grid, pot);
    const RVector kinetic = kinetic_symbol(grid, mass);
    const RVector k = grid.wavenumbers();
    CVector kick(grid.points), drift(grid.points);
    for (Eigen::Index j = 0; j < grid.points; ++j)
    {
        kick[j] = std::polar(1.0, -potential[j] * dt / (2.0 * grid.hbar));
        drift[j] = std::polar(1.0, -kinetic[j] * dt / grid.hbar);
    }

    PacketPath path;
    auto record = [&](int step, const CVector& psi) {
        Observables obs = observe(psi, fft.forward(psi), grid, potential, kinetic, k);
        double width = std::sqrt(std::max(obs.x_variance, 0.0));
        if (obs.x_mean - 6.0 * width < grid.x_min
            || obs.x_mean + 6.0 * width > grid.x_max())
            throw std::domain_error("domain exit");
        path.times.push_back(step * dt);
        path.x_mean.push_back(obs.x_mean);
        path.p_mean.push_back(obs.p_mean);
        path.energy.push_back(obs.energy());
        path.sigma_eff.push_back(width);
        if (step % stride == 0 || step == steps)
        {
            path.states.push_back(psi);
            path.state_steps.push_back(step);
        }
    };

    CVector psi = initial;
    record(0, psi);
    for (int step = 1; step <= steps; ++step)
    {
        psi.array() *= kick.array();
        CVector spectrum = fft.forward(psi);
        spectrum.array() *= drift.array();
        psi = fft.backward(spectrum);
        psi.array() *= kick.array();
        record(step, psi);
    }
    return path;
}

PacketPath split_step_evolve(const ManifoldPoint& initial,
                             const PotentialSpec& pot, double mass, double dt,
                             int steps, int stride)
{
    if (initial.params.dim != 1)
        throw std::invalid_argument("split-step propagation is 1D");
    CVector psi = packet_amplitudes(initial.params.center[0], initial.params.width,
                                    initial.params.momentum[0], initial.grid);
    return split_step_evolve(psi, initial.grid, pot, mass, dt, steps, stride);
}

double action_quantum(std::span<const CVector> states, double dt,
                      const Grid& grid, const PotentialSpec& pot, double mass)
{
    check_mass(mass);
    const std::size_t m = states.size();
    if (m < 3)
        throw std::invalid_argument("action needs >= 3 states");
    if (!(dt > 0.0))
        throw std::invalid_argument("time step must be > 0");
    for (const auto& s : states)
        if (s.size() != grid.points)
            throw std::invalid_argument("grid mismatch");

    if (m >= 5)
    {
        double worst = 0.0, scale = 0.0;
        for (std::size_t k = 2; k + 2 < m; ++k)
        {
            CVector d1 = (states[k + 1] - states[k - 1]) / (2.0 * dt);
            CVector d2 = (states[k + 2] - states[k - 2]) / (4.0 * dt);
            worst = std::max(worst, (d1 - d2).norm());
            scale = std::max(scale, d1.norm());
        }
        if (scale > 0.0 && worst > 0.05 * scale)
            throw std::invalid_argument("stride too coarse");
    }

    Fft fft(grid.points);
    const RVector potential = potential_values(grid, pot);
    const RVector kinetic = kinetic_symbol(grid, mass);
    const double n = static_cast<double>(grid.points);

    std::vector<double> integrand(m);
    for (std::size_t k = 0; k < m; ++k)
    {
        CVector derivative;
        if (k == 0)
            derivative = (-3.0 * states[0] + 4.0 * states[1] - states[2]) / (2.0 * dt);
        else if (k == m - 1)
            derivative = (3.0 * states[m - 1] - 4.0 * states[m - 2] + states[m - 3])
                         / (2.0 * dt);
        else
            derivative = (states[k + 1] - states[k - 1]) / (2.0 * dt);
        const CVector& psi = states[k];
        Complex time_part = Complex(0.0, grid.hbar) * psi.dot(derivative);
        CVector spectrum = fft.forward(psi);
        double energy = kinetic.dot(spectrum.cwiseAbs2()) / n
                        + potential.dot(psi.cwiseAbs2());
        integrand[k] = time_part.real() - energy;
    }
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k)
        total += 0.5 * dt * (integrand[k] + integrand[k + 1]);
    return total;
}

double classical_hamiltonian(double p, double a, const PotentialSpec& pot,
                             double mass)
{
    return p * p / (2.0 * mass) + pot.value(a);
}

double action_classical(std::span<const double> times, std::span<const double> a,
                        std::span<const double> p, const PotentialSpec& pot,
                        double mass)
{
    check_mass(mass);
    if (times.size() != a.size() || times.size() != p.size())
        throw std::invalid_argument("path length mismatch");
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < times.size(); ++k)
    {
        double dt = times[k + 1] - times[k];
        double p_da = 0.5 * (p[k] + p[k + 1]) * (a[k + 1] - a[k]);
        double h = 0.5
                   * (classical_hamiltonian(p[k], a[k], pot, mass)
                      + classical_hamiltonian(p[k + 1], a[k + 1], pot, mass));
        total += p_da - h * dt;
    }
    return total;
}

std::vector<CVector> rigid_packet_states(std::span<const double> a,
                                         std::span<const double> p, double width,
                                         const Grid& grid)
{
    if (a.size() != p.size())
        throw std::invalid_argument("path length mismatch");
    std::vector<CVector> states;
    states.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        states.push_back(packet_amplitudes(a[k], width, p[k], grid));
    return states;
}

NewtonPath newtonian_path(double a0, double p0, const PotentialSpec& pot, double mass,
                          double dt, int steps)
{
    check_mass(mass);
    if (!(dt > 0.0) || steps < 0)
        throw std::invalid_argument("invalid propagation parameters");
    NewtonPath path;
    double a = a0, p = p0;
    auto record = [&](int k) {
        path.times.push_back(k * dt);
        path.a.push_back(a);
        path.p.push_back(p);
    };
    record(0);
    for (int k = 1; k <= steps; ++k)
    {
        double ka1 = p / mass, kp1 = -pot.gradient(a);
        double ka2 = (p + 0.5 * dt * kp1) / mass, kp2 = -pot.gradient(a + 0.5 * dt * ka1);
        double ka3 = (p + 0.5 * dt * kp2) / mass, kp3 = -pot.gradient(a + 0.5 * dt * ka2);
        double ka4 = (p + dt * kp3) / mass, kp4 = -pot.gradient(a + dt * ka3);
        a += dt / 6.0 * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
        p += dt / 6.0 * (kp1 + 2.0 * kp2 + 2.0 * kp3 + kp4);
        record(k);
    }
    return path;
}

CVector accelerated_frame(const CVector& free_state, const Grid& grid, double force,
                          double mass, double t)
{
    check_mass(mass);
    CVector out = translate_spectral(free_state, grid, 0.5 * force * t * t / mass);
    for (Eigen::Index j = 0; j < grid.points; ++j)
        out[j] *= std::polar(1.0, force * t * grid.x(j) / grid.hbar);
    return out;
}

double free_spread_width(double sigma, double t, double hbar, double mass)
{
    double spread = hbar * t / (2.0 * mass);
    return std::sqrt(sigma * sigma * sigma * sigma + spread * spread) / sigma;
}

}  // namespace statewalk
