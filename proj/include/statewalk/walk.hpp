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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "statewalk/ensembles.hpp"
#include "statewalk/gaussian.hpp"
#include "statewalk/hilbert.hpp"
#include "statewalk/random.hpp"

namespace statewalk {

enum class Stepper
{
    ExactEigen,
    FirstOrder
};

std::string to_string(Stepper stepper);
Stepper stepper_from_string(const std::string& name);

/// Largest v dt / hbar accepted by the first-order stepper.
inline constexpr double kFirstOrderBound = 0.05;

/**
 * Random-Hamiltonian walk setup. ensemble.dim must equal dim; a zero
 * ensemble scale switches the noise off (used by drifted walks).
 */
struct WalkConfig
{
    int dim = 64;
    int steps = 100;
    double dt = 0.01;
    EnsembleSpec ensemble;
    double hbar = 1.0;
    Stepper stepper = Stepper::ExactEigen;
    std::uint64_t seed = 0;
    int stride = 1;

    bool noiseless() const { return ensemble.scale == 0.0; }
    void validate() const;
};

struct WalkTrajectory
{
    /// States at k = 0, stride, 2 stride, ... and always the last step.
    std::vector<State> states;
    std::vector<int> state_steps;
    /// theta(phi_0, phi_k) for every k = 0..steps taken.
    std::vector<double> fs_distances;
    WalkConfig config;
};

/// One factor exp(-(i/hbar) H dt) applied to phi. exact-eigen keeps the norm
/// (no renormalization); first-order returns normalize(phi - (i/hbar) H phi
/// dt) and throws std::invalid_argument when v dt / hbar exceeds the bound.
State unconstrained_step(const State& phi, const HermitianSample& h, double dt,
                         double hbar = 1.0, Stepper stepper = Stepper::ExactEigen);

/// N steps with an independent draw per step; step k uses rng.split(k).
WalkTrajectory run_walk(const State& phi0, const WalkConfig& cfg,
                        const RandomStream& rng);

/// Trials fanned out over lanes, trial t on split_rng(cfg.seed, t).
std::vector<WalkTrajectory> run_walk_trials(const State& phi0,
                                            const WalkConfig& cfg,
                                            std::size_t trials);

/// Horizontal first-order step vectors -(i/hbar) H phi dt (projected off
/// phi) for independent draws at a fixed base state; columns are samples,
/// sample t drawn from split_rng(spec.seed, t).
CMatrix first_order_steps(const State& phi, const EnsembleSpec& spec, double dt,
                          double hbar, std::size_t samples);

/// Gaussian-step walk in classical space: xi_k ~ N(0, v0^2 I_d) and
/// d_k = sum_{i <= k} xi_i dt. Columns are steps.
struct ConstrainedTrajectory
{
    RMatrix step_draws;
    RMatrix displacements;
    double dt = 0.0;
    double step_std = 0.0;

    int dim() const { return static_cast<int>(step_draws.rows()); }
    int steps() const { return static_cast<int>(step_draws.cols()); }
    RVector final_displacement() const;
};

ConstrainedTrajectory constrained_walk(int dim, int steps, double dt,
                                       double step_std, RandomStream& rng);

/// Final displacements of `trials` constrained walks (rows are trials),
/// trial t on split_rng(seed, t).
RMatrix constrained_final_displacements(int dim, int steps, double dt,
                                        double step_std, std::uint64_t seed,
                                        std::size_t trials);

/// Time-ordered grid evolution with h(t_k) = xi_k p: each factor
/// exp(-i xi_k dt p / hbar) is applied as a spectral translation by xi_k dt.
/// 1D points only.
State evolve_translations(const ManifoldPoint& start,
                          const ConstrainedTrajectory& trajectory);

/// xi_j = 2 sigma Re <e_j, -(i/hbar) H g>: the component of one Hamiltonian
/// step along the translation directions, in classical velocity units.
RVector project_onto_translations(const HermitianSample& h,
                                  const ManifoldPoint& point);
RVector project_onto_translations(const HermitianSample& h,
                                  const ManifoldPoint& point,
                                  const TranslationFrame& frame);

struct DriftResult
{
    WalkTrajectory trajectory;
    std::optional<std::size_t> outcome;
};

/**
 * Random walk with a deterministic pull toward the FS-nearest target chi:
 * after each random step,
 *
 *     phi <- normalize(phi + kappa dt (chi <chi, phi> - phi |<chi, phi>|^2)).
 *
 * Stops when theta(phi, chi) < capture_radius (outcome = target index) or
 * after cfg.steps steps (no outcome). fs_distances track theta to phi_0.
 */
DriftResult walk_with_drift(const State& phi0, std::span<const State> targets,
                            double kappa, const WalkConfig& cfg,
                            double capture_radius, const RandomStream& rng);

}  // namespace statewalk
