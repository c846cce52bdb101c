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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "statewalk/stattests.hpp"
#include "statewalk/walk.hpp"

using namespace statewalk;

namespace {

CVector random_vector(Eigen::Index n, RandomStream& rng)
{
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = Complex(rng.normal(), rng.normal());
    return v;
}

WalkConfig config(int n, int steps, double dt, double v = 1.0, std::uint64_t seed = 1)
{
    WalkConfig cfg;
    cfg.dim = n;
    cfg.steps = steps;
    cfg.dt = dt;
    cfg.ensemble = EnsembleSpec{EnsembleKind::GUE, n, v, seed};
    cfg.seed = seed;
    return cfg;
}

HermitianSample wrap(const CMatrix& m, int n)
{
    return HermitianSample{m, EnsembleSpec{EnsembleKind::GUE, n, 1.0, 0}, 0};
}

}  // namespace

TEST_CASE("zero and scalar Hamiltonians")
{
    RandomStream rng(1);
    State phi = normalize(random_vector(6, rng));
    State same = unconstrained_step(phi, wrap(CMatrix::Zero(6, 6), 6), 0.1);
    CHECK((same.amplitudes() - phi.amplitudes()).norm() < 1e-15);

    State phased = unconstrained_step(phi, wrap(3.0 * CMatrix::Identity(6, 6), 6), 0.1);
    CHECK(fs_distance(phased, phi) < 1e-12);
    CHECK((phased.amplitudes() - phi.amplitudes()).norm() < 1e-12);  // gauge fixed

    State first = unconstrained_step(phi, wrap(3.0 * CMatrix::Identity(6, 6), 6), 0.01,
                                     1.0, Stepper::FirstOrder);
    CHECK(fs_distance(first, phi) < 1e-12);
}

TEST_CASE("first-order accuracy bound")
{
    RandomStream rng(2);
    State phi = normalize(random_vector(4, rng));
    RandomStream hr(3);
    HermitianSample h = sample_gue(EnsembleSpec{EnsembleKind::GUE, 4, 1.0, 0}, hr);
    CHECK_THROWS_WITH(unconstrained_step(phi, h, 0.1, 1.0, Stepper::FirstOrder),
                      "stepper accuracy bound violated");
    CHECK_NOTHROW(unconstrained_step(phi, h, 0.1, 1.0, Stepper::ExactEigen));
    WalkConfig cfg = config(4, 10, 0.1);
    cfg.stepper = Stepper::FirstOrder;
    CHECK_THROWS_WITH(cfg.validate(), "stepper accuracy bound violated");
    CHECK(stepper_from_string("first-order") == Stepper::FirstOrder);
    CHECK(to_string(Stepper::ExactEigen) == "exact-eigen");
}

TEST_CASE("exact stepping is unitary and an isometry")
{
    RandomStream rng(4);
    State phi = normalize(random_vector(8, rng));
    State psi = normalize(random_vector(8, rng));
    const EnsembleSpec spec{EnsembleKind::GUE, 8, 1.0, 0};
    double worst_iso = 0.0;
    for (int k = 0; k < 10000; ++k)
    {
        RandomStream hr = split_rng(77, static_cast<std::uint64_t>(k));
        HermitianSample h = sample_gue(spec, hr, k);
        double before = fs_distance(phi, psi);
        phi = unconstrained_step(phi, h, 0.05);
        psi = unconstrained_step(psi, h, 0.05);
        worst_iso = std::max(worst_iso, std::abs(fs_distance(phi, psi) - before));
    }
    CHECK(std::abs(phi.amplitudes().norm() - 1.0) < 1e-9);
    CHECK(worst_iso < 1e-10);
}

TEST_CASE("run_walk basics")
{
    RandomStream rng(5);
    State phi0 = normalize(random_vector(16, rng));
    WalkConfig none = config(16, 0, 0.01);
    WalkTrajectory t0 = run_walk(phi0, none, RandomStream(9));
    CHECK(t0.states.size() == 1);
    CHECK(t0.fs_distances == std::vector<double>{0.0});

    WalkConfig cfg = config(16, 50, 0.05);
    cfg.stride = 7;
    WalkTrajectory a = run_walk(phi0, cfg, split_rng(3, 0));
    WalkTrajectory b = run_walk(phi0, cfg, split_rng(3, 0));
    CHECK(a.fs_distances == b.fs_distances);
    CHECK(a.fs_distances.size() == 51);
    CHECK(a.state_steps == std::vector<int>{0, 7, 14, 21, 28, 35, 42, 49, 50});
    for (double th : a.fs_distances)
    {
        CHECK(th >= 0.0);
        CHECK(th <= std::acos(0.0));
    }
    for (const auto& s : a.states)
        CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-12);

    WalkConfig wrong = config(8, 5, 0.01);
    CHECK_THROWS(run_walk(phi0, wrong, RandomStream(1)));
}

TEST_CASE("mean squared FS distance grows linearly at small angles")
{
    // n = 64, v dt / hbar = 0.02; fit over the steps where <theta^2> stays
    // below 0.25
    WalkConfig cfg = config(64, 40, 0.02, 1.0, 11);
    cfg.stepper = Stepper::FirstOrder;
    State phi0 = normalize(CVector::Unit(64, 0));
    auto trajs = run_walk_trials(phi0, cfg, 200);
    std::vector<double> k, msd;
    for (int step = 1; step <= cfg.steps; ++step)
    {
        double m = 0.0;
        for (const auto& t : trajs)
            m += t.fs_distances[step] * t.fs_distances[step];
        m /= static_cast<double>(trajs.size());
        if (m > 0.25)
            break;
        k.push_back(step);
        msd.push_back(m);
    }
    REQUIRE(k.size() >= 5);
    LinearFit fit = linear_fit(k, msd);
    CHECK(fit.r_squared > 0.99);
    // one step moves theta^2 by about (n - 1) v^2 dt^2 / hbar^2
    CHECK(fit.slope == doctest::Approx(63 * 0.0004).epsilon(0.15));
}

TEST_CASE("constrained walk bookkeeping and variance")
{
    RandomStream zero_rng(1);
    ConstrainedTrajectory still = constrained_walk(2, 10, 0.1, 0.0, zero_rng);
    CHECK(still.final_displacement().norm() == 0.0);
    CHECK_THROWS(constrained_walk(1, 0, 0.1, 1.0, zero_rng));

    RandomStream rng(2);
    ConstrainedTrajectory t = constrained_walk(3, 100, 0.01, 1.5, rng);
    RVector sum = t.step_draws.rowwise().sum() * 0.01;
    CHECK((sum - t.final_displacement()).norm() < 1e-12);

    RMatrix finals = constrained_final_displacements(1, 1000, 0.01, 1.0, 7, 10000);
    std::vector<double> col(finals.data(), finals.data() + finals.rows());
    CHECK(sample_variance(col) == doctest::Approx(0.1).epsilon(0.1));
}

TEST_CASE("step draws are independent across steps")
{
    const int trials = 500, steps = 40;
    std::vector<double> x, y;
    for (int tr = 0; tr < trials; ++tr)
    {
        RandomStream rng = split_rng(8, static_cast<std::uint64_t>(tr));
        ConstrainedTrajectory t = constrained_walk(1, steps, 0.01, 1.0, rng);
        for (int k = 0; k + 1 < steps; ++k)
        {
            x.push_back(t.step_draws(0, k));
            y.push_back(t.step_draws(0, k + 1));
        }
    }
    double mx = sample_mean(x), my = sample_mean(y), sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    CHECK(std::abs(sxy / std::sqrt(sxx * syy)) < 3.0 / std::sqrt(static_cast<double>(x.size())));
}

TEST_CASE("grid translations follow the constrained displacement")
{
    Grid grid{-10.0, 0.05, 400, 1.0};
    ManifoldPoint start = gaussian_state(GaussianParams::at(0.0, 1.0), grid);
    RandomStream rng(12);
    ConstrainedTrajectory path = constrained_walk(1, 1000, 0.01, 1.0, rng);
    State evolved = evolve_translations(start, path);
    ManifoldPoint target = gaussian_state(
        GaussianParams::at(path.final_displacement()[0], 1.0), grid);
    CHECK((evolved.amplitudes() - target.state.amplitudes()).norm() < 1e-6);
}

TEST_CASE("projection onto translations")
{
    Grid grid = Grid::centered(14.0, 56);
    ManifoldPoint g = gaussian_state(GaussianParams::at(0.0, 1.0), grid);
    TranslationFrame frame = translation_tangent_basis(g);

    CMatrix p = momentum_operator(grid);
    HermitianSample pure{0.7 * p, EnsembleSpec{EnsembleKind::GUE, 56, 1.0, 0}, 0};
    CHECK(project_onto_translations(pure, g, frame)[0] == doctest::Approx(0.7).epsilon(1e-6));

    RandomStream rng(3);
    HermitianSample goe = sample_goe(EnsembleSpec{EnsembleKind::GOE, 56, 1.0, 0}, rng);
    CHECK(std::abs(project_onto_translations(goe, g, frame)[0]) < 1e-12);

    const int draws = 10000;
    std::vector<double> xi;
    const EnsembleSpec spec{EnsembleKind::GUE, 56, 1.0, 0};
    for (int t = 0; t < draws; ++t)
    {
        RandomStream r = split_rng(21, static_cast<std::uint64_t>(t));
        xi.push_back(project_onto_translations(sample_gue(spec, r, t), g, frame)[0]);
    }
    CHECK(std::abs(sample_mean(xi)) < 4.0 * std::sqrt(2.0) / std::sqrt(draws));
    // 2 sigma^2 v^2 / hbar^2
    CHECK(sample_variance(xi) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("horizontal first-order steps")
{
    RandomStream rng(4);
    State phi = normalize(random_vector(8, rng));
    CMatrix steps = first_order_steps(phi, EnsembleSpec{EnsembleKind::GUE, 8, 2.0, 5}, 0.01,
                                      1.0, 2000);
    CHECK(steps.cols() == 2000);
    CHECK((phi.amplitudes().adjoint() * steps).cwiseAbs().maxCoeff() < 1e-14);
    // E |step|^2 = (n - 1) v^2 dt^2 / hbar^2
    double mean_sq = steps.colwise().squaredNorm().mean();
    CHECK(mean_sq == doctest::Approx(7 * 4.0 * 1e-4).epsilon(0.05));
}

TEST_CASE("drift walk: pure gradient flow captures monotonically")
{
    RandomStream rng(6);
    State phi0 = normalize(random_vector(5, rng));
    State target = normalize(random_vector(5, rng));
    WalkConfig cfg = config(5, 500, 0.02);
    cfg.ensemble.scale = 0.0;
    std::vector<State> targets{target};
    DriftResult r = walk_with_drift(phi0, targets, 10.0, cfg, 0.05, RandomStream(1));
    REQUIRE(r.outcome.has_value());
    CHECK(*r.outcome == 0);
    double previous = fs_distance(phi0, target);
    for (const auto& s : r.trajectory.states)
    {
        double d = fs_distance(s, target);
        CHECK(d <= previous + 1e-12);
        previous = d;
    }
    CHECK(previous < 0.05);
}

TEST_CASE("drift walk without drift does not capture")
{
    WalkConfig cfg = config(6, 200, 0.01, 1.0, 3);
    State phi0 = normalize(CVector::Unit(6, 0));
    std::vector<State> targets{normalize(CVector::Unit(6, 3))};
    int captured = 0;
    for (std::uint64_t t = 0; t < 20; ++t)
        if (walk_with_drift(phi0, targets, 0.0, cfg, 1e-3, split_rng(3, t)).outcome)
            ++captured;
    CHECK(captured == 0);
}

TEST_CASE("drift walk rejects overlapping capture regions")
{
    WalkConfig cfg = config(3, 10, 0.01);
    State a = normalize(CVector::Unit(3, 0));
    CVector near = CVector::Unit(3, 0);
    near[1] = 0.05;
    std::vector<State> targets{a, normalize(near)};
    CHECK_THROWS_WITH(walk_with_drift(a, targets, 1.0, cfg, 0.1, RandomStream(1)),
                      "overlapping capture regions");
}

TEST_CASE("nearer targets are captured at least as often")
{
    const int n = 4;
    State phi0 = normalize(CVector::Unit(n, 0));
    auto at = [&](double theta, int axis) {
        CVector v = CVector::Zero(n);
        v[0] = std::cos(theta);
        v[axis] = std::sin(theta);
        return normalize(v);
    };
    std::vector<State> targets{at(0.5, 1), at(0.9, 2)};
    WalkConfig cfg = config(n, 400, 0.02, 1.0, 19);
    int hits[2] = {0, 0};
    for (std::uint64_t t = 0; t < 1000; ++t)
    {
        DriftResult r = walk_with_drift(phi0, targets, 2.0, cfg, 0.1, split_rng(19, t));
        if (r.outcome)
            ++hits[*r.outcome];
    }
    MESSAGE("captures " << hits[0] << " / " << hits[1]);
    CHECK(hits[0] + hits[1] > 100);
    CHECK(hits[0] >= hits[1]);
}
