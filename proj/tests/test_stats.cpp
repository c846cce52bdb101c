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
#include <numbers>
#include <vector>

#include "statewalk/stats.hpp"
#include "statewalk/walk.hpp"

using namespace statewalk;

namespace {

State basis(int n, int k) { return normalize(CVector::Unit(n, k)); }

WalkConfig first_order(int dim, int steps, double scale, std::uint64_t seed)
{
    WalkConfig cfg;
    cfg.dim = dim;
    cfg.steps = steps;
    cfg.dt = 0.02;
    cfg.ensemble = {EnsembleKind::GUE, dim, scale, seed};
    cfg.stepper = Stepper::FirstOrder;
    cfg.seed = seed;
    cfg.stride = steps;
    return cfg;
}

std::vector<double> final_distances(const State& phi0, const WalkConfig& cfg,
                                    std::size_t trials)
{
    std::vector<double> out;
    for (const auto& w : run_walk_trials(phi0, cfg, trials))
        out.push_back(w.fs_distances.back());
    return out;
}

State random_state(int n, std::uint64_t seed)
{
    RandomStream rng(seed);
    CVector v(n);
    for (int i = 0; i < n; ++i)
        v[i] = Complex(rng.normal(), rng.normal());
    return normalize(v);
}

RMatrix normal_matrix(std::uint64_t seed, Eigen::Index rows, Eigen::Index cols)
{
    RandomStream rng(seed);
    RMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i)
        m.data()[i] = rng.normal();
    return m;
}

template <class Fn>
double pass_rate(Fn&& passes_for_seed)
{
    int passed = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
        passed += passes_for_seed(seed) ? 1 : 0;
    return passed / 100.0;
}

}  // namespace

TEST_CASE("isotropy of first-order GUE steps")
{
    const int n = 16;
    const double v = 1.0, dt = 0.02;
    State phi = random_state(n, 3);
    HorizontalFrame frame = HorizontalFrame::complete(phi);
    CMatrix steps = first_order_steps(phi, {EnsembleKind::GUE, n, v, 9}, dt, 1.0, 4000);
    TestReport r = isotropy_test(steps, frame);
    CHECK(r.passed);
    CHECK(r.details["coordinates"] == 2 * (n - 1));
    CHECK(r.details["common_variance"].get<double>()
          == doctest::Approx(v * v * dt * dt).epsilon(0.05));

    // one direction stretched
    CMatrix coords = frame.vectors().adjoint() * steps;
    coords.row(2) *= 2.0;
    CMatrix skewed = frame.vectors() * coords;
    TestReport contrast = isotropy_test(skewed, frame, kDefaultAlpha, TestRole::Contrast);
    CHECK(contrast.passed);
    CHECK(contrast.p_value < kDefaultAlpha);
    CHECK_FALSE(isotropy_test(skewed, frame).passed);
}

TEST_CASE("isotropy input validation")
{
    CHECK_THROWS_WITH(isotropy_test(normal_matrix(1, 999, 4)),
                      "isotropy test needs >= 1000 step samples");
    CHECK_THROWS(isotropy_test(normal_matrix(1, 1000, 1)));
    CHECK_THROWS(isotropy_test(RMatrix::Zero(1000, 3)));
}

TEST_CASE("calibration: isotropy")
{
    double rate = pass_rate(
        [](std::uint64_t s) { return isotropy_test(normal_matrix(s, 1000, 6)).passed; });
    CHECK(rate >= 0.95);
}

TEST_CASE("homogeneity across initial states")
{
    const int n = 8;
    WalkConfig a = first_order(n, 20, 1.0, 100);
    WalkConfig b = first_order(n, 20, 1.0, 200);
    auto da = final_distances(basis(n, 0), a, 600);
    auto db = final_distances(random_state(n, 5), b, 600);
    TestReport r = homogeneity_test(da, db, a, b);
    CHECK(r.passed);
    CHECK(r.seed == 100);

    WalkConfig loud = first_order(n, 20, 1.6, 300);
    auto dc = final_distances(random_state(n, 5), loud, 600);
    TestReport contrast = homogeneity_test(da, dc, a, loud, kDefaultAlpha, TestRole::Contrast);
    CHECK(contrast.passed);

    WalkConfig other = b;
    other.steps = 21;
    CHECK_THROWS_WITH(homogeneity_test(da, db, a, other), "config mismatch");
    other = b;
    other.stepper = Stepper::ExactEigen;
    CHECK_THROWS_WITH(homogeneity_test(da, db, a, other), "config mismatch");
}

TEST_CASE("calibration: homogeneity")
{
    const int n = 6;
    double rate = pass_rate([&](std::uint64_t s) {
        WalkConfig a = first_order(n, 8, 1.0, 1000 + s);
        WalkConfig b = first_order(n, 8, 1.0, 5000 + s);
        auto da = final_distances(basis(n, 0), a, 300);
        auto db = final_distances(random_state(n, s), b, 300);
        return homogeneity_test(da, db, a, b).passed;
    });
    CHECK(rate >= 0.95);
}

TEST_CASE("gaussian steps of the constrained walk")
{
    RMatrix d = constrained_final_displacements(2, 10, 0.1, 1.0, 17, 3000);
    TestReport r = gaussian_step_test(d, 10, 0.1, 1.0);
    CHECK(r.passed);
    CHECK(r.details["expected_variance"].get<double>() == doctest::Approx(0.1));

    TestReport wrong = gaussian_step_test(d, 10, 0.1, 1.3, kDefaultAlpha, TestRole::Contrast);
    CHECK(wrong.passed);

    // Cauchy steps with the same median spread
    RandomStream rng(4);
    RMatrix heavy = RMatrix::Zero(3000, 1);
    for (Eigen::Index t = 0; t < heavy.rows(); ++t)
        for (int k = 0; k < 10; ++k)
            heavy(t, 0) += 0.1 * 0.6745 * std::tan(std::numbers::pi * (rng.uniform() - 0.5));
    TestReport tails = gaussian_step_test(heavy, 10, 0.1, 1.0, kDefaultAlpha, TestRole::Contrast);
    CHECK(tails.passed);
}

TEST_CASE("gaussian step test on trajectories")
{
    std::vector<ConstrainedTrajectory> walks;
    for (std::size_t t = 0; t < 1500; ++t)
    {
        RandomStream rng = split_rng(8, t);
        walks.push_back(constrained_walk(3, 5, 0.2, 0.5, rng));
    }
    CHECK(gaussian_step_test(walks).passed);
    RandomStream rng(1);
    walks.push_back(constrained_walk(3, 6, 0.2, 0.5, rng));
    CHECK_THROWS_WITH(gaussian_step_test(walks), "mixed constrained ensemble");
}

TEST_CASE("degenerate step law")
{
    RMatrix d = constrained_final_displacements(2, 10, 0.1, 0.0, 1, 100);
    TestReport r = gaussian_step_test(d, 10, 0.1, 0.0);
    CHECK(r.passed);
    CHECK(r.details["expected_variance"] == 0.0);
    d(3, 1) = 1e-3;
    CHECK_FALSE(gaussian_step_test(d, 10, 0.1, 0.0).passed);
}

TEST_CASE("calibration: gaussian steps")
{
    double rate = pass_rate([](std::uint64_t s) {
        RMatrix d = constrained_final_displacements(3, 10, 0.1, 1.0, s, 1000);
        return gaussian_step_test(d, 10, 0.1, 1.0).passed;
    });
    CHECK(rate >= 0.95);
}

TEST_CASE("brownian scaling")
{
    const double dt = 0.1, v0 = 1.0;
    std::vector<ScalingSample> samples;
    for (int steps : {10, 20, 50, 100})
        samples.push_back(
            {steps, constrained_final_displacements(2, steps, dt, v0, 40 + steps, 2000)});
    TestReport r = brownian_scaling_fit(samples, dt);
    CHECK(r.passed);
    CHECK(r.details["r_squared"].get<double>() > 0.99);
    CHECK(r.details["slope"].get<double>() == doctest::Approx(dt * v0 * v0).epsilon(0.1));

    // one velocity per walk: Var grows like N^2
    std::vector<ScalingSample> ballistic;
    for (int steps : {10, 20, 50, 100})
    {
        RMatrix v = constrained_final_displacements(2, 1, dt, v0, 90 + steps, 2000);
        ballistic.push_back({steps, v * static_cast<double>(steps)});
    }
    CHECK(brownian_scaling_fit(ballistic, dt, kDefaultAlpha, TestRole::Contrast).passed);
    CHECK_FALSE(brownian_scaling_fit(ballistic, dt).passed);

    std::vector<ScalingSample> short_span(samples.begin(), samples.begin() + 3);
    short_span.push_back({25, samples[0].final_displacements});
    CHECK_THROWS(brownian_scaling_fit(short_span, dt));
    short_span.pop_back();
    CHECK_THROWS(brownian_scaling_fit(short_span, dt));
}

TEST_CASE("equal distance equiprobability")
{
    const int n = 4;
    const double theta = 0.8;
    State origin = basis(n, 0);
    std::vector<State> targets;
    for (int j = 1; j < n; ++j)
    {
        CVector t = std::cos(theta) * CVector::Unit(n, 0) + std::sin(theta) * CVector::Unit(n, j);
        targets.push_back(normalize(t));
    }
    WalkConfig cfg = first_order(n, 110, 1.0, 77);
    cfg.dt = 0.04;
    std::vector<State> finals;
    for (const auto& w : run_walk_trials(origin, cfg, 6000))
        finals.push_back(w.states.back());
    TestReport r = equal_distance_equiprobability(origin, finals, targets, 0.4);
    CHECK(r.passed);
    CHECK_FALSE(r.is_inconclusive());

    // one target pulled closer to the origin
    std::vector<State> uneven = targets;
    uneven[0] = normalize(std::cos(0.4) * CVector::Unit(n, 0) + std::sin(0.4) * CVector::Unit(n, 1));
    CHECK_THROWS_WITH(equal_distance_equiprobability(origin, finals, uneven, 0.4),
                      "targets not equidistant");
    TestReport contrast = equal_distance_equiprobability(origin, finals, uneven, 0.4,
                                                         kDefaultAlpha, TestRole::Contrast);
    CHECK(contrast.passed);

    std::vector<State> few(finals.begin(), finals.begin() + 20);
    TestReport thin = equal_distance_equiprobability(origin, few, targets, 0.4);
    CHECK(thin.is_inconclusive());
    CHECK_FALSE(thin.passed);

    std::vector<State> two(targets.begin(), targets.begin() + 2);
    CHECK_THROWS(equal_distance_equiprobability(origin, finals, two, 0.4));
}

TEST_CASE("born transition density")
{
    CHECK(normal_density(0.0, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
    CHECK(born_transition_density(0.7, 1.0, 0.01)
          == doctest::Approx(normal_density(0.7, 1.0)).epsilon(1e-3));
    CHECK(born_analytic_deviation(1.0, 0.01) < 1e-4);

    // the deviation shrinks as delta^2
    double coarse = born_analytic_deviation(2.0, 0.04), fine = born_analytic_deviation(2.0, 0.02);
    CHECK(std::log2(coarse / fine) >= 1.95);
}

TEST_CASE("born identity on the constrained walk")
{
    const int steps = 10;
    const double dt = 0.1, v0 = 1.0;
    const double s = std::sqrt(static_cast<double>(steps)) * dt * v0;
    RMatrix d = constrained_final_displacements(1, steps, dt, v0, 2026, 100000);
    TestReport gate = gaussian_step_test(d, steps, dt, v0);
    REQUIRE(gate.passed);
    std::vector<double> samples(d.data(), d.data() + d.rows());

    TestReport r = born_identity_check(s, samples, gate);
    CHECK(r.passed);
    CHECK(r.statistic < 0.05);
    CHECK(r.details["bin_centers"].size() == 6);

    BornCurve curve = born_curve(s, samples);
    for (std::size_t i = 0; i < curve.empirical.size(); ++i)
        CHECK(curve.empirical[i] == doctest::Approx(curve.closed_form[i]).epsilon(0.05));

    TestReport contrast = born_identity_check(1.3 * s, samples, gate, {}, TestRole::Contrast);
    CHECK(contrast.passed);

    TestReport failed = gaussian_step_test(d, steps, dt, 1.5 * v0);
    CHECK_THROWS(born_identity_check(s, samples, failed));
}
