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

#include <span>
#include <string>
#include <vector>

#include "statewalk/gaussian.hpp"

namespace statewalk {

/**
 * External potential on one axis:
 *   free        V = 0
 *   linear      V = -F x
 *   harmonic    V = k x^2 / 2
 *   anharmonic  V = k x^2 / 2 + lambda x^4 / 4
 */
struct PotentialSpec
{
    enum class Kind
    {
        Free,
        Linear,
        Harmonic,
        Anharmonic
    };

    Kind kind = Kind::Free;
    double force = 0.0;
    double stiffness = 0.0;
    double quartic = 0.0;

    static PotentialSpec free_particle() { return {}; }
    static PotentialSpec linear(double force) { return {Kind::Linear, force, 0.0, 0.0}; }
    static PotentialSpec harmonic(double k) { return {Kind::Harmonic, 0.0, k, 0.0}; }
    static PotentialSpec anharmonic(double k, double lambda)
    {
        return {Kind::Anharmonic, 0.0, k, lambda};
    }

    double value(double x) const;
    /// dV/dx.
    double gradient(double x) const;
    bool time_independent() const { return true; }
};

std::string to_string(PotentialSpec::Kind kind);
PotentialSpec::Kind potential_kind_from_string(const std::string& name);

struct PacketPath
{
    std::vector<double> times;
    std::vector<double> x_mean;
    std::vector<double> p_mean;
    std::vector<double> energy;
    std::vector<double> sigma_eff;
    /// Raw (not gauge-fixed) wavefunctions at the snapshot stride.
    std::vector<CVector> states;
    std::vector<int> state_steps;
};

struct Observables
{
    double x_mean = 0.0;
    double x_variance = 0.0;
    double p_mean = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double energy() const { return kinetic + potential; }
};

/// Expectation values of a unit-norm grid wavefunction (spectral kinetic
/// term).
Observables packet_observables(const CVector& psi, const Grid& grid,
                               const PotentialSpec& pot, double mass);

/// <psi| h psi> with h = -hbar^2/(2m) d^2/dx^2 + V on the grid.
CVector apply_hamiltonian(const CVector& psi, const Grid& grid,
                          const PotentialSpec& pot, double mass);

/// Dense discrete Hamiltonian matrix (for eigenstates in tests).
CMatrix hamiltonian_matrix(const Grid& grid, const PotentialSpec& pot, double mass);

/**
 * Strang-split propagation: half potential kick, exact spectral kinetic
 * drift, half kick. Observables are recorded at every step, states every
 * `stride` steps. Throws std::domain_error("domain exit") when
 * <x> +- 6 sigma_eff leaves the grid.
 */
PacketPath split_step_evolve(const CVector& initial, const Grid& grid,
                             const PotentialSpec& pot, double mass, double dt,
                             int steps, int stride = 1);
PacketPath split_step_evolve(const ManifoldPoint& initial,
                             const PotentialSpec& pot, double mass, double dt,
                             int steps, int stride = 1);

/**
 * Discrete S = int <phi| (i hbar d/dt - h) |phi> dt over a dense trajectory
 * with spacing dt: central differences in time (second-order one-sided at
 * the ends), trapezoid in t. Throws std::invalid_argument("stride too
 * coarse") when central differences at dt and 2 dt disagree by more than 5%.
 */
double action_quantum(std::span<const CVector> states, double dt,
                      const Grid& grid, const PotentialSpec& pot, double mass);

/// h(p, a) = p^2 / 2m + V(a).
double classical_hamiltonian(double p, double a, const PotentialSpec& pot,
                             double mass);

/// Trapezoidal int [p da/dt - h(p, a)] dt on a shared time grid.
double action_classical(std::span<const double> times, std::span<const double> a,
                        std::span<const double> p, const PotentialSpec& pot,
                        double mass);

/// Raw grid wavefunctions of a rigid packet exp(-(x-a)^2/4 sigma^2 + i p x / hbar)
/// following a sampled classical path (a(t_k), p(t_k)).
std::vector<CVector> rigid_packet_states(std::span<const double> a,
                                         std::span<const double> p, double width,
                                         const Grid& grid);

struct NewtonPath
{
    std::vector<double> times;
    std::vector<double> a;
    std::vector<double> p;
};

/// Classical trajectory da/dt = p/m, dp/dt = -V'(a) by fourth-order
/// Runge-Kutta, sampled every step.
NewtonPath newtonian_path(double a0, double p0, const PotentialSpec& pot, double mass,
                          double dt, int steps);

/// exp(i F t x / hbar) applied after a spectral shift by F t^2 / 2m: maps the
/// freely evolved state onto the state evolved under V = -F x (up to a
/// global phase) when both start at rest.
CVector accelerated_frame(const CVector& free_state, const Grid& grid, double force,
                          double mass, double t);

/// Width of a freely spreading Gaussian: sqrt(sigma^4 + (hbar t / 2m)^2) / sigma.
double free_spread_width(double sigma, double t, double hbar, double mass);

}  // namespace statewalk
