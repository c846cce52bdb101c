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

#include "statewalk/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "statewalk/classical.hpp"
#include "statewalk/ensembles.hpp"
#include "statewalk/gaussian.hpp"
#include "statewalk/parallel.hpp"
#include "statewalk/random.hpp"
#include "statewalk/stats.hpp"
#include "statewalk/stattests.hpp"
#include "statewalk/walk.hpp"

namespace statewalk {

namespace {

constexpr auto kConform = TestRole::Conformance;
constexpr auto kContrast = TestRole::Contrast;

/// Seed of sub-experiment `part` inside a criterion.
std::uint64_t part_seed(std::uint64_t root, int part)
{
    return mix64(root + 256u * static_cast<std::uint64_t>(part));
}

TestReport labelled(TestReport r, const std::string& label)
{
    r.details["case"] = label;
    return r;
}

std::vector<double> column(const RMatrix& m, Eigen::Index j)
{
    return std::vector<double>(m.col(j).data(), m.col(j).data() + m.rows());
}

State random_state(int n, RandomStream rng)
{
    CVector v(n);
    for (int i = 0; i < n; ++i)
        v[i] = Complex(rng.normal(), rng.normal());
    return normalize(v);
}

// ---------------------------------------------------------------- 1

void overlap_identity(CriterionResult& out, const VerifyOptions& o, std::uint64_t root)
{
    const Grid grid = Grid::centered(32.0, 640, o.hbar);
    const std::uint64_t seed = part_seed(root, 0);
    RandomStream rng(seed);
    CsvTable table({"sigma", "delta", "separation", "closed_form", "quadrature", "abs_error"});
    double worst = 0.0;
    const int pairs = 200;
    for (int t = 0; t < pairs; ++t)
    {
        double s = 0.5 + 1.5 * rng.uniform(), d = 0.5 + 1.5 * rng.uniform();
        double a = -2.0 + 4.0 * rng.uniform(), b = -2.0 + 4.0 * rng.uniform();
        auto p = GaussianParams::at(a, s), q = GaussianParams::at(b, d);
        double closed = overlap_closed_form(p, q);
        double quad = overlap_quadrature(gaussian_state(p, grid), gaussian_state(q, grid));
        double err = std::abs(quad - closed);
        worst = std::max(worst, err);
        table.row({s, d, std::abs(a - b), closed, quad, err});
    }
    out.reports.push_back(make_threshold_report("overlap_quadrature_1d", worst, 1e-8, kConform,
                                                pairs, seed));
    out.tables.push_back({"overlap", std::move(table)});

    const std::uint64_t seed3 = part_seed(root, 1);
    RandomStream rng3(seed3);
    double worst3 = 0.0;
    for (int t = 0; t < pairs; ++t)
    {
        double s = 0.5 + 1.5 * rng3.uniform(), d = 0.5 + 1.5 * rng3.uniform();
        RVector a(3), b(3);
        for (int k = 0; k < 3; ++k)
        {
            a[k] = -2.0 + 4.0 * rng3.uniform();
            b[k] = -2.0 + 4.0 * rng3.uniform();
        }
        double joint = overlap_closed_form(GaussianParams::at(a, s), GaussianParams::at(b, d));
        double product = 1.0;
        for (int k = 0; k < 3; ++k)
            product *= overlap_closed_form(GaussianParams::at(a[k], s),
                                           GaussianParams::at(b[k], d));
        worst3 = std::max(worst3, std::abs(joint - product));
    }
    out.reports.push_back(make_threshold_report("closed_form_3d_factorization", worst3, 1e-14,
                                                kConform, pairs, seed3));
}

// ---------------------------------------------------------------- 2

void spot_values(CriterionResult& out, const VerifyOptions& o, std::uint64_t root)
{
    const Grid grid{-20.0, 0.05, 800, o.hbar};
    auto g0 = gaussian_state(GaussianParams::at(0.0, 1.0), grid);
    auto g2 = gaussian_state(GaussianParams::at(2.0, 1.0), grid);
    double spot = std::abs(overlap_quadrature(g0, g2) - std::exp(-1.0));
    out.reports.push_back(make_threshold_report("overlap_spot_value", spot, 1e-8, kConform, 1, 0));

    const std::uint64_t seed = part_seed(root, 0);
    RandomStream rng(seed);
    double worst = 0.0;
    const int count = 100;
    for (int t = 0; t < count; ++t)
    {
        double theta = 0.01 + 1.45 * rng.uniform();
        auto [p, q] = realize_fs_distance(theta, 1.0);
        double back = fs_distance(gaussian_state(p, grid).state, gaussian_state(q, grid).state);
        worst = std::max(worst, std::abs(back - theta));
    }
    out.reports.push_back(make_threshold_report("realize_fs_distance_round_trip", worst, 1e-8,
                                                kConform, count, seed));
}

// ---------------------------------------------------------------- 3

void induced_metric(CriterionResult& out, const VerifyOptions& o, std::uint64_t)
{
    const Grid coarse = Grid::centered(40.0, 800, o.hbar);
    const Grid fine = Grid::centered(40.0, 1600, o.hbar);
    double worst = 0.0, truncation = 0.0;
    nlohmann::json ratios = nlohmann::json::array();
    for (double sigma : {0.5, 1.0, 2.0})
    {
        double r = induced_metric_ratio(sigma, sigma / 100.0, coarse);
        double r2 = induced_metric_ratio(sigma, sigma / 100.0, fine);
        worst = std::max(worst, std::abs(r - 1.0 / (2.0 * sigma)));
        truncation = std::max(truncation, std::abs(r2 - r));
        ratios.push_back({{"sigma", sigma}, {"ratio", r}, {"ratio_doubled_points", r2}});
    }
    TestReport metric = make_threshold_report("induced_metric_constant", worst, 1e-4, kConform, 3, 0);
    metric.details["ratios"] = ratios;
    out.reports.push_back(metric);
    out.reports.push_back(make_threshold_report("induced_metric_truncation", truncation, 1e-6,
                                                kConform, 3, 0));
}

// ---------------------------------------------------------------- 4

void isotropy_homogeneity(CriterionResult& out, const VerifyOptions& o, std::uint64_t root)
{
    const int n = 64;
    const double v = 1.0, dt = 0.01;

    const std::uint64_t iso_seed = part_seed(root, 0);
    State phi = random_state(n, RandomStream(part_seed(root, 1)));
    HorizontalFrame frame = HorizontalFrame::complete(phi);
    CMatrix steps = first_order_steps(phi, {EnsembleKind::GUE, n, v, iso_seed}, dt, o.hbar, 10000);
    TestReport iso = isotropy_test(steps, frame, o.alpha, kConform, iso_seed);
    out.reports.push_back(iso);

    double expected = v * v * dt * dt / (o.hbar * o.hbar);
    double common = iso.details["common_variance"].get<double>();
    TestReport var = make_threshold_report("isotropy_common_variance",
                                           std::abs(common / expected - 1.0), 0.05, kConform,
                                           iso.samples, iso_seed);
    var.details["common_variance"] = common;
    var.details["expected"] = expected;
    out.reports.push_back(var);

    CMatrix comps = frame.vectors().adjoint() * steps;
    RMatrix coords(comps.cols(), 2 * comps.rows());
    coords.leftCols(comps.rows()) = comps.real().transpose();
    coords.rightCols(comps.rows()) = comps.imag().transpose();
    coords.col(0) *= std::sqrt(2.0);
    out.reports.push_back(labelled(isotropy_test(coords, o.alpha, kContrast, iso_seed),
                                   "one variance doubled"));

    auto config = [&](double scale, std::uint64_t seed) {
        WalkConfig cfg;
        cfg.dim = n;
        cfg.steps = 20;
        cfg.dt = dt;
        cfg.ensemble = {EnsembleKind::GUE, n, scale, seed};
        cfg.hbar = o.hbar;
        cfg.stepper = Stepper::FirstOrder;
        cfg.seed = seed;
        cfg.stride = cfg.steps;
        return cfg;
    };
    const std::size_t walks = 1000;
    WalkConfig ca = config(v, part_seed(root, 2));
    WalkConfig cb = config(v, part_seed(root, 3));
    WalkConfig cc = config(1.5 * v, part_seed(root, 4));
    State basis = normalize(CVector::Unit(n, 0));
    State other = random_state(n, RandomStream(part_seed(root, 5)));
    auto wa = run_walk_trials(basis, ca, walks);
    auto wb = run_walk_trials(other, cb, walks);
    auto wc = run_walk_trials(other, cc, walks);
    auto finals = [](const std::vector<WalkTrajectory>& ws) {
        std::vector<double> d;
        for (const auto& w : ws)
            d.push_back(w.fs_distances.back());
        return d;
    };
    auto da = finals(wa), db = finals(wb), dc = finals(wc);
    out.reports.push_back(homogeneity_test(da, db, ca, cb, o.alpha, kConform));
    out.reports.push_back(
        labelled(homogeneity_test(da, dc, ca, cc, o.alpha, kContrast), "different scale"));

    CsvTable theta({"set", "trial", "theta"});
    for (std::size_t t = 0; t < walks; ++t)
        theta.row({0.0, double(t), da[t]});
    for (std::size_t t = 0; t < walks; ++t)
        theta.row({1.0, double(t), db[t]});
    for (std::size_t t = 0; t < walks; ++t)
        theta.row({2.0, double(t), dc[t]});
    out.tables.push_back({"theta_dist", std::move(theta)});

    // mean square FS distance of the basis-state walks
    CsvTable msd({"k", "t", "mean_theta2"});
    std::vector<double> ks, m2;
    for (int k = 0; k <= ca.steps; ++k)
    {
        double acc = 0.0;
        for (const auto& w : wa)
            acc += w.fs_distances[k] * w.fs_distances[k];
        acc /= static_cast<double>(walks);
        msd.row({double(k), k * dt, acc});
        if (acc <= 0.25)
        {
            ks.push_back(k * dt);
            m2.push_back(acc);
        }
    }
    LinearFit fit = linear_fit(ks, m2);
    out.notes["msd_slope"] = fit.slope;
    out.notes["msd_r_squared"] = fit.r_squared;
    out.notes["msd_expected_slope"] = (n - 1) * v * v * dt / (o.hbar * o.hbar);
    out.tables.push_back({"msd", std::move(msd)});
}

// ---------------------------------------------------------------- 5

void constrained(CriterionResult& out, const VerifyOptions& o, std::uint64_t root)
{
    const int dim = 2, steps = 1000;
    const double dt = 0.01, v0 = 1.0;
    const std::size_t trials = 10000;

    const std::uint64_t seed = part_seed(root, 0);
    RMatrix finals = constrained_final_displacements(dim, steps, dt, v0, seed, trials);
    out.reports.push_back(gaussian_step_test(finals, steps, dt, v0, o.alpha, kConform, seed));

    double expected = steps * dt * dt * v0 * v0, worst = 0.0;
    nlohmann::json variances = nlohmann::json::array();
    for (int j = 0; j < dim; ++j)
    {
        double var = sample_variance(column(finals, j));
        variances.push_back(var);
        worst = std::max(worst, std::abs(var / expected - 1.0));
    }
    TestReport var = make_threshold_report("constrained_variance", worst, 0.1, kConform, trials, seed);
    var.details["variances"] = variances;
    var.details["expected"] = expected;
    out.reports.push_back(var);

    // Cauchy steps scaled to the same interquartile range
    const std::uint64_t heavy_seed = part_seed(root, 1);
    const std::size_t heavy_trials = 1000;
    auto heavy_rows = run_trials<double>(heavy_trials, [&](std::size_t t) {
        RandomStream rng = split_rng(heavy_seed, t);
        double d = 0.0;
        for (int k = 0; k < steps; ++k)
            d += dt * v0 * 0.6745 * std::tan(std::numbers::pi * (rng.uniform() - 0.5));
        return d;
    });
    RMatrix heavy = Eigen::Map<RMatrix>(heavy_rows.data(), heavy_trials, 1);
    out.reports.push_back(labelled(
        gaussian_step_test(heavy, steps, dt, v0, o.alpha, kContrast, heavy_seed), "Cauchy steps"));

    CsvTable hist({"trial", "k", "t", "d_1", "d_2"});
    for (Eigen::Index t = 0; t < finals.rows(); ++t)
        hist.row({double(t), double(steps), steps * dt, finals(t, 0), finals(t, 1)});
    out.tables.push_back({"step_hist", std::move(hist)});

    std::vector<ScalingSample> samples, ballistic;
    CsvTable scaling({"steps", "t", "var_1", "var_2"});
    // 2500 completes a decade above 250
    int part = 10;
    for (int n : {250, 500, 1000, 2000, 2500})
    {
        RMatrix d = constrained_final_displacements(dim, n, dt, v0, part_seed(root, part++), trials);
        scaling.row({double(n), n * dt, sample_variance(column(d, 0)), sample_variance(column(d, 1))});
        samples.push_back({n, std::move(d)});
        // one persistent velocity per walk
        RMatrix vel = constrained_final_displacements(dim, 1, dt, v0, part_seed(root, part++), trials);
        ballistic.push_back({n, vel * static_cast<double>(n)});
    }
    TestReport fit = brownian_scaling_fit(samples, dt, o.alpha, kConform, part_seed(root, 10));
    fit.details["expected_slope"] = dt * v0 * v0;
    out.reports.push_back(fit);
    out.reports.push_back(labelled(
        brownian_scaling_fit(ballistic, dt, o.alpha, kContrast, part_seed(root, 11)),
        "persistent velocity"));
    out.tables.push_back({"scaling", std::move(scaling)});
}

// ---------------------------------------------------------------- 6

void translations(CriterionResult& out, const VerifyOptions& o, std::uint64_t root)
{
    const Grid grid = Grid::centered(14.0, 56, o.hbar);
    const double sigma = 1.0, v = 1.0;
    ManifoldPoint g = gaussian_state(GaussianParams::at(0.0, sigma), grid);
    TranslationFrame frame = translation_tangent_basis(g);
    const int n = static_cast<int>(grid.points);
    const std::size_t draws = 10000;

    const std::uint64_t seed = part_seed(root, 0);
    const EnsembleSpec gue{EnsembleKind::GUE, n, v, seed};
    std::vector<double> xi = run_trials<double>(draws, [&](std::size_t t) {
        RandomStream rng = split_rng(seed, t);
        auto h = sample_gue(gue, rng, static_cast<std::int64_t>(t));
        return project_onto_translations(h, g, frame)[0];
    });
    double mean = sample_mean(xi), var = sample_variance(xi);
    double expected = 2.0 * sigma * sigma * v * v / (o.hbar * o.hbar);
    double z = mean / std::sqrt(var / static_cast<double>(draws));
    out.reports.push_back(make_pvalue_report("translation_mean_zero", z,
                                             2.0 * (1.0 - normal_cdf(std::abs(z))), o.alpha,
                                             kConform, draws, seed));
    TestReport iso = make_threshold_report("translation_variance", std::abs(var / expected - 1.0),
                                           0.05, kConform, draws, seed);
    iso.details["variance"] = var;
    iso.details["expected"] = expected;
    out.reports.push_back(iso);
    const double sd = std::sqrt(expected);
    TestOutcome ks = ks_one_sample(xi, [&](double x) { return normal_cdf(x / sd); });
    out.reports.push_back(make_pvalue_report("translation_step_normality", ks.statistic,
                                             ks.p_value, o.alpha, kConform, draws, seed));

    // walks built from consecutive projected steps against constrained_walk
    const int block = 10;
    const double dt = 0.1;
    std::vector<double> projected;
    for (std::size_t b = 0; b + block <= draws; b += block)
    {
        double d = 0.0;
        for (int k = 0; k < block; ++k)
            d += xi[b + k] * dt;
        projected.push_back(d);
    }
    const std::uint64_t ref_seed = part_seed(root, 1);
    RMatrix ref = constrained_final_displacements(1, block, dt, std::sqrt(var), ref_seed, 10000);
    TestOutcome law = ks_two_sample(projected, column(ref, 0));
    TestReport walk = make_pvalue_report("translation_walk_law", law.statistic, law.p_value,
                                         o.alpha, kConform, projected.size(), ref_seed);
    walk.details["measured_step_std"] = std::sqrt(var);
    out.reports.push_back(walk);

    const std::uint64_t goe_seed = part_seed(root, 2);
    const EnsembleSpec goe{EnsembleKind::GOE, n, v, goe_seed};
    double worst = 0.0;
    const int goe_draws = 200;
    for (int t = 0; t < goe_draws; ++t)
    {
        RandomStream rng = split_rng(goe_seed, static_cast<std::uint64_t>(t));
        worst = std::max(worst,
                         std::abs(project_onto_translations(sample_goe(goe, rng, t), g, frame)[0]));
    }
    out.reports.push_back(make_threshold_report("goe_translation_vanishes", worst, 1e-12,
                                                kConform, goe_draws, goe_seed));
}

// ---------------------------------------------------------------- 7

void born(CriterionResult& out, const VerifyOptions& o, std::uint64_t root)
{
    const int steps = 1000;
    const double dt = 0.01, v0 = 1.0;
    const double s = std::sqrt(static_cast<double>(steps)) * dt * v0;
    BornOptions opts;

    double analytic = born_analytic_deviation(s, s * opts.delta_ratio);
    out.reports.push_back(make_threshold_report("born_analytic_ratio", analytic,
                                                opts.analytic_tolerance, kConform, 0, 0));
    double coarse = born_analytic_deviation(s, 2.0 * s * opts.delta_ratio);
    double order = std::log2(coarse / analytic);
    TestReport conv = make_threshold_report("born_convergence_order", 2.0 - order, 0.05,
                                            kConform, 0, 0);
    conv.details["order"] = order;
    out.reports.push_back(conv);

    const std::uint64_t seed = part_seed(root, 0);
    RMatrix d = constrained_final_displacements(1, steps, dt, v0, seed, 100000);
    TestReport gate = gaussian_step_test(d, steps, dt, v0, o.alpha, kConform, seed);
    out.reports.push_back(gate);
    std::vector<double> samples = column(d, 0);
    if (gate.passed)
    {
        out.reports.push_back(born_identity_check(s, samples, gate, opts, kConform, seed));
        out.reports.push_back(labelled(
            born_identity_check(1.3 * s, samples, gate, opts, kContrast, seed), "wrong width"));
    }
    BornCurve curve = born_curve(s, samples, opts);
    CsvTable table({"b", "empirical", "closed_form"});
    for (std::size_t i = 0; i < curve.bin_centers.size(); ++i)
        table.row({curve.bin_centers[i], curve.empirical[i], curve.closed_form[i]});
    out.tables.push_back({"born_curve", std::move(table)});
}

// ---------------------------------------------------------------- 8

void classical_limit(CriterionResult& out, const VerifyOptions& o, std::uint64_t)
{
    const double mass = 1.0, sigma = 0.1, force = 2.0, dt = 1e-3;
    const int steps = 1000;
    const Grid wide = Grid::centered(80.0, 4096, o.hbar);
    const PotentialSpec linear = PotentialSpec::linear(force);

    CVector psi = packet_amplitudes(0.0, sigma, 0.0, wide);
    PacketPath pushed = split_step_evolve(psi, wide, linear, mass, dt, steps, steps);
    NewtonPath newton = newtonian_path(0.0, 0.0, linear, mass, dt, steps);
    double scale = 0.0, dx = 0.0, dp = 0.0, de = 0.0;
    CsvTable path({"t", "x_mean", "p_mean", "energy", "sigma_eff"});
    for (std::size_t k = 0; k < newton.a.size(); ++k)
    {
        scale = std::max(scale, std::abs(newton.a[k]));
        dx = std::max(dx, std::abs(pushed.x_mean[k] - newton.a[k]));
        dp = std::max(dp, std::abs(pushed.p_mean[k] - newton.p[k]));
        de = std::max(de, std::abs(pushed.energy[k] / pushed.energy.front() - 1.0));
        path.row({pushed.times[k], pushed.x_mean[k], pushed.p_mean[k], pushed.energy[k],
                  pushed.sigma_eff[k]});
    }
    TestReport center = make_threshold_report("ehrenfest_linear_center", dx / std::max(1.0, scale),
                                              1e-6, kConform, steps, 0);
    center.details["max_momentum_residual"] = dp;
    out.reports.push_back(center);
    out.reports.push_back(make_threshold_report("energy_conservation", de, 1e-6, kConform, steps, 0));
    out.tables.push_back({"classical_path", std::move(path)});

    PacketPath free = split_step_evolve(psi, wide, PotentialSpec::free_particle(), mass, dt,
                                        steps, steps);
    CVector moved = accelerated_frame(free.states.back(), wide, force, mass, steps * dt);
    out.reports.push_back(make_threshold_report("accelerated_frame",
                                                fs_distance(moved, pushed.states.back()), 1e-6,
                                                kConform, 1, 0));

    // quantum minus classical action along rigid packets on three paths
    // with shared endpoints
    const Grid box = Grid::centered(4.0, 320, o.hbar);
    nlohmann::json constants = nlohmann::json::array();
    double spread = 0.0;
    for (PotentialSpec pot : {PotentialSpec::linear(1.5), PotentialSpec::harmonic(2.0)})
    {
        std::vector<double> diffs;
        for (int variant = 0; variant < 3; ++variant)
        {
            std::vector<double> t, a, p;
            for (int k = 0; k <= steps; ++k)
            {
                double s = k * dt, bump = std::sin(std::numbers::pi * s);
                double lift = variant == 2 ? -2.0 : static_cast<double>(variant);
                t.push_back(s);
                a.push_back(-0.5 + s + 0.3 * variant * bump);
                p.push_back(0.5 + s + lift * bump * bump);
            }
            auto states = rigid_packet_states(a, p, sigma, box);
            double diff = action_quantum(states, dt, box, pot, mass)
                          - action_classical(t, a, p, pot, mass);
            diffs.push_back(diff);
            if (variant == 0)
            {
                double T = t.back();
                double boundary = p.back() * a.back() - p.front() * a.front();
                // <V> - V(a) is k sigma^2 / 2 for the harmonic well, 0 for linear
                double spread_term = 0.5 * pot.stiffness * sigma * sigma;
                constants.push_back(
                    {{"potential", to_string(pot.kind)},
                     {"measured", -(diff + boundary) / T},
                     {"expected", o.hbar * o.hbar / (8.0 * mass * sigma * sigma) + spread_term}});
            }
        }
        spread = std::max({spread, std::abs(diffs[1] - diffs[0]), std::abs(diffs[2] - diffs[0])});
    }
    TestReport indep = make_threshold_report("action_path_independence", spread, 1e-4, kConform,
                                             6, 0);
    indep.details["constants"] = constants;
    out.reports.push_back(indep);

    // beyond quadratic potentials the center follows Newton up to O(sigma^2)
    const Grid fine = Grid::centered(6.0, 8192, 1e-3);
    const PotentialSpec quartic = PotentialSpec::anharmonic(1.0, 1.0);
    NewtonPath reference = newtonian_path(1.0, 0.0, quartic, mass, dt, steps);
    std::vector<double> dev;
    for (double w : {0.1, 0.05})
    {
        PacketPath p = split_step_evolve(packet_amplitudes(1.0, w, 0.0, fine), fine, quartic, mass,
                                         dt, steps, steps);
        double worst = 0.0;
        for (std::size_t k = 0; k < reference.a.size(); ++k)
            worst = std::max(worst, std::abs(p.x_mean[k] - reference.a[k]));
        dev.push_back(worst);
    }
    TestReport aq = make_threshold_report("anharmonic_width_scaling", dev[1] / dev[0], 0.55,
                                          kConform, 2, 0);
    aq.details["deviations"] = dev;
    aq.details["hbar"] = fine.hbar;
    out.reports.push_back(aq);
}

// ---------------------------------------------------------------- 9

void ensembles(CriterionResult& out, const VerifyOptions& o, std::uint64_t root)
{
    const int n = 200;
    const std::size_t samples = 1000;
    CsvTable table({"ensemble", "sample", "k", "spacing", "ratio"});
    const std::size_t recorded = 50;
    auto record = [&](const char* name, const std::vector<RVector>& spectra) {
        for (std::size_t s = 0; s < recorded; ++s)
        {
            auto r = spacing_ratios(spectra[s]);
            for (std::size_t k = 0; k < r.size(); ++k)
                table.row_text({name, std::to_string(s), std::to_string(k),
                                format_number(spectra[s][k + 1] - spectra[s][k]),
                                format_number(r[k])});
        }
    };
    auto check = [&](const char* name, const std::vector<RVector>& spectra, double oracle,
                     std::uint64_t seed) {
        double stat = spacing_ratio_stat(std::span<const RVector>(spectra));
        TestReport r = make_threshold_report(std::string("spacing_ratio_") + name,
                                             std::abs(stat - oracle), 0.01, kConform,
                                             spectra.size(), seed);
        r.details["mean_ratio"] = stat;
        r.details["oracle"] = oracle;
        out.reports.push_back(r);
        record(name, spectra);
    };
    int part = 0;
    for (auto [kind, oracle] : {std::pair{EnsembleKind::GUE, 0.600}, {EnsembleKind::GOE, 0.536}})
    {
        const std::uint64_t seed = part_seed(root, part++);
        const EnsembleSpec spec{kind, n, 1.0, seed};
        auto spectra = run_trials<RVector>(samples, [&](std::size_t t) {
            RandomStream rng = split_rng(seed, t);
            return eigenvalues(sample_ensemble(spec, rng, static_cast<std::int64_t>(t)));
        });
        check(kind == EnsembleKind::GUE ? "GUE" : "GOE", spectra, oracle, seed);
    }
    const std::uint64_t pseed = part_seed(root, part++);
    auto poisson = run_trials<RVector>(samples, [&](std::size_t t) {
        RandomStream rng = split_rng(pseed, t);
        RVector x(n);
        for (int i = 0; i < n; ++i)
            x[i] = rng.uniform();
        std::sort(x.data(), x.data() + x.size());
        return x;
    });
    check("Poisson", poisson, 0.386, pseed);
    out.tables.push_back({"spacings", std::move(table)});

    const std::uint64_t useed = part_seed(root, part++);
    RandomStream urng(useed);
    CMatrix u = haar_unitary(4, urng);
    out.reports.push_back(conjugation_invariance_check(
        {EnsembleKind::GUE, 4, 1.0, part_seed(root, part++)}, u, 2000, o.alpha, kConform));
    out.reports.push_back(
        labelled(conjugation_invariance_check({EnsembleKind::GOE, 4, 1.0, part_seed(root, part++)},
                                              u, 2000, o.alpha, kContrast),
                 "complex unitary"));
}

struct CriterionSpec
{
    const char* title;
    double time_limit;
    void (*run)(CriterionResult&, const VerifyOptions&, std::uint64_t);
};

const CriterionSpec kSpecs[kCriteria] = {
    {"Gaussian overlap identity", 10.0, overlap_identity},
    {"overlap spot values and FS distance round trip", 5.0, spot_values},
    {"induced metric constant", 5.0, induced_metric},
    {"isotropy and homogeneity of random steps", 120.0, isotropy_homogeneity},
    {"constrained walk and Brownian scaling", 120.0, constrained},
    {"GUE steps as translations", 120.0, translations},
    {"Born identity on the Gaussian family", 180.0, born},
    {"Newtonian limit", 120.0, classical_limit},
    {"ensemble sanity", 180.0, ensembles},
};

}  // namespace

bool CriterionResult::reports_passed() const
{
    return !reports.empty()
           && std::all_of(reports.begin(), reports.end(),
                          [](const TestReport& r) { return r.passed; });
}

std::uint64_t criterion_seed(std::uint64_t seed, int id)
{
    return mix64(seed + static_cast<std::uint64_t>(id));
}

CriterionResult run_criterion(int id, const VerifyOptions& options)
{
    if (id < 1 || id > kCriteria)
        throw std::invalid_argument("no criterion " + std::to_string(id));
    const CriterionSpec& spec = kSpecs[id - 1];
    CriterionResult result;
    result.id = id;
    result.title = spec.title;
    result.time_limit = spec.time_limit;
    auto start = std::chrono::steady_clock::now();
    spec.run(result, options, criterion_seed(options.seed, id));
    result.seconds
        = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace statewalk
