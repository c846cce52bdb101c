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

#include "statewalk/walk.hpp"

#include <cmath>
#include <stdexcept>

#include "statewalk/parallel.hpp"

namespace statewalk {

std::string to_string(Stepper stepper)
{
    return stepper == Stepper::ExactEigen ? "exact-eigen" : "first-order";
}

Stepper stepper_from_string(const std::string& name)
{
    if (name == "exact-eigen")
        return Stepper::ExactEigen;
    if (name == "first-order")
        return Stepper::FirstOrder;
    throw std::invalid_argument("unknown stepper '" + name + "'");
}

void WalkConfig::validate() const
{
    if (dim < 2)
        throw std::invalid_argument("walk dimension must be >= 2");
    if (steps < 0)
        throw std::invalid_argument("walk steps must be >= 0");
    if (!(dt > 0.0))
        throw std::invalid_argument("time step must be > 0");
    if (!(hbar > 0.0))
        throw std::invalid_argument("hbar must be > 0");
    if (stride < 1)
        throw std::invalid_argument("snapshot stride must be >= 1");
    if (ensemble.dim != dim)
        throw std::invalid_argument("ensemble dimension differs from walk dimension");
    if (ensemble.scale < 0.0 || !std::isfinite(ensemble.scale))
        throw std::invalid_argument("ensemble scale must be >= 0");
    if (stepper == Stepper::FirstOrder
        && ensemble.scale * dt / hbar > kFirstOrderBound)
        throw std::invalid_argument("stepper accuracy bound violated");
}

State unconstrained_step(const State& phi, const HermitianSample& h, double dt,
                         double hbar, Stepper stepper)
{
    if (h.entries.rows() != phi.dim())
        throw std::invalid_argument("Hamiltonian dimension mismatch");
    const CVector& v = phi.amplitudes();
    if (stepper == Stepper::FirstOrder)
    {
        if (h.spec.scale * dt / hbar > kFirstOrderBound)
            throw std::invalid_argument("stepper accuracy bound violated");
        CVector next = v - Complex(0.0, dt / hbar) * (h.entries * v);
        return State::normalize(next, phi.basis_label());
    }
    Eigensystem eig = eigensystem(h.entries);
    CVector coeffs = eig.vectors.adjoint() * v;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
        coeffs[i] *= std::polar(1.0, -eig.values[i] * dt / hbar);
    return State::from_unit(eig.vectors * coeffs, phi.basis_label());
}

WalkTrajectory run_walk(const State& phi0, const WalkConfig& cfg,
                        const RandomStream& rng)
{
    cfg.validate();
    if (phi0.dim() != cfg.dim)
        throw std::invalid_argument("initial state dimension differs from walk dimension");
    WalkTrajectory traj;
    traj.config = cfg;
    traj.states.push_back(phi0);
    traj.state_steps.push_back(0);
    traj.fs_distances.push_back(0.0);
    State phi = phi0;
    for (int k = 1; k <= cfg.steps; ++k)
    {
        if (!cfg.noiseless())
        {
            RandomStream step_rng = rng.split(static_cast<std::uint64_t>(k));
            HermitianSample h = sample_ensemble(cfg.ensemble, step_rng, k);
            phi = unconstrained_step(phi, h, cfg.dt, cfg.hbar, cfg.stepper);
        }
        traj.fs_distances.push_back(fs_distance(phi0, phi));
        if (k % cfg.stride == 0 || k == cfg.steps)
        {
            traj.states.push_back(phi);
            traj.state_steps.push_back(k);
        }
    }
    return traj;
}

std::vector<WalkTrajectory> run_walk_trials(const State& phi0,
                                            const WalkConfig& cfg,
                                            std::size_t trials)
{
    cfg.validate();
    return run_trials<WalkTrajectory>(trials, [&](std::size_t t) {
        return run_walk(phi0, cfg, split_rng(cfg.seed, t));
    });
}

CMatrix first_order_steps(const State& phi, const EnsembleSpec& spec, double dt,
                          double hbar, std::size_t samples)
{
    spec.validate();
    if (spec.dim != phi.dim())
        throw std::invalid_argument("ensemble dimension differs from state");
    if (!(dt > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("invalid step parameters");
    auto steps = run_trials<CVector>(samples, [&](std::size_t t) {
        RandomStream rng = split_rng(spec.seed, t);
        HermitianSample h = sample_ensemble(spec, rng, static_cast<std::int64_t>(t));
        CVector v = Complex(0.0, -dt / hbar) * (h.entries * phi.amplitudes());
        return horizontal_project(phi, v).components;
    });
    CMatrix out(phi.dim(), static_cast<Eigen::Index>(samples));
    for (std::size_t t = 0; t < samples; ++t)
        out.col(static_cast<Eigen::Index>(t)) = steps[t];
    return out;
}

RVector ConstrainedTrajectory::final_displacement() const
{
    if (displacements.cols() == 0)
        return RVector::Zero(displacements.rows());
    return displacements.col(displacements.cols() - 1);
}

ConstrainedTrajectory constrained_walk(int dim, int steps, double dt,
                                       double step_std, RandomStream& rng)
{
    if (dim < 1)
        throw std::invalid_argument("dimension must be >= 1");
    if (steps < 1)
        throw std::invalid_argument("constrained walk needs >= 1 step");
    if (!(dt > 0.0) || step_std < 0.0)
        throw std::invalid_argument("invalid constrained walk parameters");
    ConstrainedTrajectory traj;
    traj.dt = dt;
    traj.step_std = step_std;
    traj.step_draws.resize(dim, steps);
    traj.displacements.resize(dim, steps);
    RVector position = RVector::Zero(dim);
    for (int k = 0; k < steps; ++k)
    {
        for (int j = 0; j < dim; ++j)
            traj.step_draws(j, k) = step_std * rng.normal();
        position += traj.step_draws.col(k) * dt;
        traj.displacements.col(k) = position;
    }
    return traj;
}

RMatrix constrained_final_displacements(int dim, int steps, double dt,
                                        double step_std, std::uint64_t seed,
                                        std::size_t trials)
{
    auto finals = run_trials<RVector>(trials, [&](std::size_t t) {
        RandomStream rng = split_rng(seed, t);
        return constrained_walk(dim, steps, dt, step_std, rng).final_displacement();
    });
    RMatrix out(static_cast<Eigen::Index>(trials), dim);
    for (std::size_t t = 0; t < trials; ++t)
        out.row(static_cast<Eigen::Index>(t)) = finals[t].transpose();
    return out;
}

State evolve_translations(const ManifoldPoint& start,
                          const ConstrainedTrajectory& trajectory)
{
    if (start.params.dim != 1 || trajectory.dim() != 1)
        throw std::invalid_argument("grid translation evolution is 1D");
    CVector psi = start.state.amplitudes();
    for (int k = 0; k < trajectory.steps(); ++k)
        psi = translate_spectral(psi, start.grid,
                                 trajectory.step_draws(0, k) * trajectory.dt);
    return State::normalize(psi, start.state.basis_label());
}

RVector project_onto_translations(const HermitianSample& h,
                                  const ManifoldPoint& point,
                                  const TranslationFrame& frame)
{
    const CVector& g = point.state.amplitudes();
    if (h.entries.rows() != g.size())
        throw std::invalid_argument("Hamiltonian dimension mismatch");
    CVector velocity = Complex(0.0, -1.0 / point.grid.hbar) * (h.entries * g);
    CVector along = frame.frame.vectors().adjoint() * velocity;
    return 2.0 * point.params.width * along.real();
}

RVector project_onto_translations(const HermitianSample& h,
                                  const ManifoldPoint& point)
{
    return project_onto_translations(h, point, translation_tangent_basis(point));
}

namespace {

std::size_t nearest_target(const State& phi, std::span<const State> targets,
                           double& theta)
{
    std::size_t best = 0;
    theta = fs_distance(phi, targets[0]);
    for (std::size_t i = 1; i < targets.size(); ++i)
    {
        double d = fs_distance(phi, targets[i]);
        if (d < theta)
        {
            theta = d;
            best = i;
        }
    }
    return best;
}

}  // namespace

DriftResult walk_with_drift(const State& phi0, std::span<const State> targets,
                            double kappa, const WalkConfig& cfg,
                            double capture_radius, const RandomStream& rng)
{
    cfg.validate();
    if (targets.empty())
        throw std::invalid_argument("no drift targets");
    if (!(capture_radius > 0.0) || kappa < 0.0)
        throw std::invalid_argument("invalid drift parameters");
    for (const auto& t : targets)
        if (t.dim() != phi0.dim())
            throw std::invalid_argument("target dimension mismatch");
    for (std::size_t i = 0; i < targets.size(); ++i)
        for (std::size_t j = i + 1; j < targets.size(); ++j)
            if (fs_distance(targets[i], targets[j]) <= 2.0 * capture_radius)
                throw std::invalid_argument("overlapping capture regions");

    DriftResult result;
    WalkTrajectory& traj = result.trajectory;
    traj.config = cfg;
    traj.states.push_back(phi0);
    traj.state_steps.push_back(0);
    traj.fs_distances.push_back(0.0);

    double theta = 0.0;
    std::size_t nearest = nearest_target(phi0, targets, theta);
    if (theta < capture_radius)
    {
        result.outcome = nearest;
        return result;
    }
    State phi = phi0;
    for (int k = 1; k <= cfg.steps; ++k)
    {
        if (!cfg.noiseless())
        {
            RandomStream step_rng = rng.split(static_cast<std::uint64_t>(k));
            HermitianSample h = sample_ensemble(cfg.ensemble, step_rng, k);
            phi = unconstrained_step(phi, h, cfg.dt, cfg.hbar, cfg.stepper);
        }
        nearest = nearest_target(phi, targets, theta);
        const CVector& chi = targets[nearest].amplitudes();
        const CVector& v = phi.amplitudes();
        Complex overlap = chi.dot(v);
        CVector pull = chi * overlap - v * std::norm(overlap);
        phi = State::normalize(v + kappa * cfg.dt * pull, phi.basis_label());

        nearest = nearest_target(phi, targets, theta);
        traj.fs_distances.push_back(fs_distance(phi0, phi));
        bool captured = theta < capture_radius;
        if (k % cfg.stride == 0 || k == cfg.steps || captured)
        {
            traj.states.push_back(phi);
            traj.state_steps.push_back(k);
        }
        if (captured)
        {
            result.outcome = nearest;
            break;
        }
    }
    return result;
}

}  // namespace statewalk
