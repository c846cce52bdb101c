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

#include "statewalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "statewalk/gaussian.hpp"
#include "statewalk/stattests.hpp"

namespace statewalk {

namespace {

std::vector<double> column(const RMatrix& m, Eigen::Index j)
{
    std::vector<double> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        out[static_cast<std::size_t>(i)] = m(i, j);
    return out;
}

// Conformance verdict computed elsewhere; a contrast passes when the
// conformance check fails.
void settle(TestReport& r, bool conforms, TestRole role)
{
    r.passed = role == TestRole::Conformance ? conforms : !conforms;
}

}  // namespace

TestReport isotropy_test(const RMatrix& coordinates, double alpha, TestRole role,
                         std::uint64_t seed)
{
    const Eigen::Index samples = coordinates.rows();
    const Eigen::Index m = coordinates.cols();
    if (static_cast<std::size_t>(samples) < kMinIsotropySamples)
        throw std::invalid_argument("isotropy test needs >= 1000 step samples");
    if (m < 2)
        throw std::invalid_argument("isotropy test needs >= 2 coordinates");

    TestOutcome spread = brown_forsythe(coordinates);
    TestOutcome corr = max_correlation_test(coordinates);

    Eigen::VectorXd variances(m);
    for (Eigen::Index j = 0; j < m; ++j)
        variances[j] = sample_variance(column(coordinates, j));
    const double pooled = variances.mean();
    if (!(pooled > 0.0))
        throw std::invalid_argument("isotropy test on degenerate steps");
    const double sd = std::sqrt(pooled);
    std::vector<double> ks_p(static_cast<std::size_t>(m));
    double ks_worst = 0.0;
    for (Eigen::Index j = 0; j < m; ++j)
    {
        TestOutcome ks = ks_one_sample(column(coordinates, j),
                                       [sd](double x) { return normal_cdf(x / sd); });
        ks_p[static_cast<std::size_t>(j)] = ks.p_value;
        ks_worst = std::max(ks_worst, ks.statistic);
    }
    const double normality_p = bonferroni(ks_p);
    const double parts[] = {spread.p_value, corr.p_value, normality_p};
    const double p = bonferroni(parts);

    TestReport r = make_pvalue_report("isotropy_test", spread.statistic, p, alpha,
                                      role, static_cast<std::uint64_t>(samples), seed);
    r.details["coordinates"] = m;
    r.details["variance_f"] = spread.statistic;
    r.details["variance_p"] = spread.p_value;
    r.details["max_correlation"] = corr.statistic;
    r.details["correlation_p"] = corr.p_value;
    r.details["max_ks"] = ks_worst;
    r.details["normality_p"] = normality_p;
    r.details["pooled_variance"] = pooled;
    r.details["min_variance"] = variances.minCoeff();
    r.details["max_variance"] = variances.maxCoeff();
    return r;
}

TestReport isotropy_test(const CMatrix& steps, const HorizontalFrame& frame,
                         double alpha, TestRole role, std::uint64_t seed)
{
    if (steps.rows() != frame.base().dim())
        throw std::invalid_argument("step dimension differs from frame");
    CMatrix components = frame.vectors().adjoint() * steps;  // (n-1) x S
    const Eigen::Index k = components.rows();
    RMatrix coords(steps.cols(), 2 * k);
    coords.leftCols(k) = components.real().transpose();
    coords.rightCols(k) = components.imag().transpose();
    TestReport r = isotropy_test(coords, alpha, role, seed);
    // E|c|^2 = Var Re + Var Im
    r.details["common_variance"] = 2.0 * r.details["pooled_variance"].get<double>();
    return r;
}

TestReport homogeneity_test(std::span<const double> distances_a,
                            std::span<const double> distances_b,
                            const WalkConfig& config_a, const WalkConfig& config_b,
                            double alpha, TestRole role)
{
    if (config_a.dim != config_b.dim || config_a.steps != config_b.steps
        || config_a.dt != config_b.dt || config_a.hbar != config_b.hbar
        || config_a.stepper != config_b.stepper
        || config_a.ensemble.kind != config_b.ensemble.kind)
        throw std::invalid_argument("config mismatch");
    TestOutcome ks = ks_two_sample(distances_a, distances_b);
    TestReport r = make_pvalue_report("homogeneity_test", ks.statistic, ks.p_value,
                                      alpha, role,
                                      distances_a.size() + distances_b.size(),
                                      config_a.seed);
    r.details["samples_a"] = distances_a.size();
    r.details["samples_b"] = distances_b.size();
    r.details["seed_b"] = config_b.seed;
    r.details["mean_a"] = sample_mean(distances_a);
    r.details["mean_b"] = sample_mean(distances_b);
    r.details["scale_a"] = config_a.ensemble.scale;
    r.details["scale_b"] = config_b.ensemble.scale;
    return r;
}

TestReport gaussian_step_test(const RMatrix& final_displacements, int steps,
                              double dt, double step_std, double alpha,
                              TestRole role, std::uint64_t seed)
{
    const Eigen::Index trials = final_displacements.rows();
    const Eigen::Index d = final_displacements.cols();
    if (trials < 2 || d < 1)
        throw std::invalid_argument("gaussian step test needs samples");
    const double expected = steps * dt * dt * step_std * step_std;
    const auto n = static_cast<std::uint64_t>(trials);

    if (expected == 0.0)
    {
        bool zero = final_displacements.cwiseAbs().maxCoeff() == 0.0;
        TestReport r = make_pvalue_report("gaussian_step_test", 0.0, zero ? 1.0 : 0.0,
                                          alpha, role, n, seed);
        r.details["degenerate"] = true;
        r.details["expected_variance"] = 0.0;
        return r;
    }

    const double sd = std::sqrt(expected);
    std::vector<double> p;
    std::vector<double> variances;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < d; ++j)
    {
        auto col = column(final_displacements, j);
        TestOutcome ks = ks_one_sample(col, [sd](double x) { return normal_cdf(x / sd); });
        p.push_back(ks.p_value);
        worst = std::max(worst, ks.statistic);
        variances.push_back(sample_variance(col));
    }
    const double ks_p = bonferroni(p);
    double corr_p = 1.0, corr_stat = 0.0;
    if (d > 1)
    {
        TestOutcome c = max_correlation_test(final_displacements);
        corr_p = c.p_value;
        corr_stat = c.statistic;
    }
    const double parts[] = {ks_p, corr_p};
    TestReport r = make_pvalue_report("gaussian_step_test", worst,
                                      d > 1 ? bonferroni(parts) : ks_p, alpha, role,
                                      n, seed);
    r.details["expected_variance"] = expected;
    r.details["variances"] = variances;
    r.details["normality_p"] = ks_p;
    r.details["max_correlation"] = corr_stat;
    r.details["correlation_p"] = corr_p;
    r.details["steps"] = steps;
    r.details["dt"] = dt;
    r.details["step_std"] = step_std;
    return r;
}

TestReport gaussian_step_test(std::span<const ConstrainedTrajectory> ensemble,
                              double alpha, TestRole role, std::uint64_t seed)
{
    if (ensemble.empty())
        throw std::invalid_argument("empty ensemble");
    const auto& first = ensemble.front();
    RMatrix finals(static_cast<Eigen::Index>(ensemble.size()), first.dim());
    for (std::size_t t = 0; t < ensemble.size(); ++t)
    {
        const auto& tr = ensemble[t];
        if (tr.dim() != first.dim() || tr.steps() != first.steps() || tr.dt != first.dt
            || tr.step_std != first.step_std)
            throw std::invalid_argument("mixed constrained ensemble");
        finals.row(static_cast<Eigen::Index>(t)) = tr.final_displacement().transpose();
    }
    return gaussian_step_test(finals, first.steps(), first.dt, first.step_std, alpha,
                              role, seed);
}

TestReport brownian_scaling_fit(std::span<const ScalingSample> samples, double dt,
                                double alpha, TestRole role, std::uint64_t seed)
{
    if (samples.size() < 4)
        throw std::invalid_argument("scaling fit needs >= 4 walk lengths");
    std::vector<double> x, y;
    std::uint64_t total = 0;
    int lo = samples.front().steps, hi = lo;
    bool degenerate = true;
    for (const auto& s : samples)
    {
        if (s.final_displacements.rows() < 2)
            throw std::invalid_argument("scaling fit needs >= 2 trials per length");
        lo = std::min(lo, s.steps);
        hi = std::max(hi, s.steps);
        total += static_cast<std::uint64_t>(s.final_displacements.rows());
        for (Eigen::Index j = 0; j < s.final_displacements.cols(); ++j)
        {
            double v = sample_variance(column(s.final_displacements, j));
            degenerate = degenerate && v == 0.0;
            x.push_back(s.steps * dt);
            y.push_back(v);
        }
    }
    if (hi < 10 * lo)
        throw std::invalid_argument("walk lengths must span >= one decade");

    if (degenerate)
    {
        TestReport r = make_pvalue_report("brownian_scaling_fit", 1.0, 1.0, alpha,
                                          TestRole::Conformance, total, seed);
        settle(r, true, role);
        r.details["role"] = role_name(role);
        r.details["degenerate"] = true;
        r.details["diffusion"] = 0.0;
        r.details["slope"] = 0.0;
        r.details["intercept"] = 0.0;
        return r;
    }

    LinearFit fit = linear_fit(x, y);
    double p_intercept = 1.0;
    if (fit.intercept_se > 0.0)
        p_intercept = student_t_two_sided_p(fit.intercept / fit.intercept_se, fit.dof);
    const bool linear = fit.r_squared > 0.99;
    TestReport r = make_pvalue_report("brownian_scaling_fit", fit.r_squared,
                                      p_intercept, alpha, role, total, seed);
    settle(r, linear && p_intercept > alpha, role);
    r.details["slope"] = fit.slope;
    r.details["slope_se"] = fit.slope_se;
    r.details["intercept"] = fit.intercept;
    r.details["intercept_se"] = fit.intercept_se;
    r.details["r_squared"] = fit.r_squared;
    r.details["diffusion"] = 0.5 * fit.slope * dt;
    r.details["diffusion_rate"] = 0.5 * fit.slope;
    r.details["dof"] = fit.dof;
    return r;
}

TestReport equal_distance_equiprobability(const State& origin,
                                          std::span<const State> final_states,
                                          std::span<const State> targets,
                                          double radius, double alpha, TestRole role,
                                          std::uint64_t seed)
{
    if (targets.size() < 3)
        throw std::invalid_argument("equiprobability test needs >= 3 targets");
    if (!(radius > 0.0))
        throw std::invalid_argument("ball radius must be > 0");
    std::vector<double> distances;
    for (const auto& t : targets)
        distances.push_back(fs_distance(origin, t));
    auto [dmin, dmax] = std::minmax_element(distances.begin(), distances.end());
    const double spread = *dmax - *dmin;
    if (role == TestRole::Conformance && spread > 1e-6)
        throw std::invalid_argument("targets not equidistant");

    std::vector<std::uint64_t> counts(targets.size(), 0);
    for (const auto& s : final_states)
        for (std::size_t i = 0; i < targets.size(); ++i)
            if (fs_distance(s, targets[i]) < radius)
                ++counts[i];
    std::uint64_t hits = 0;
    for (auto c : counts)
        hits += c;

    TestOutcome chi = chi_square_equal(counts);
    TestReport r = make_pvalue_report("equal_distance_equiprobability", chi.statistic,
                                      chi.p_value, alpha, role, final_states.size(),
                                      seed);
    r.details["counts"] = counts;
    r.details["target_distances"] = distances;
    r.details["distance_spread"] = spread;
    r.details["radius"] = radius;
    if (hits < 5 * targets.size())
    {
        r.details["inconclusive"] = true;
        r.passed = false;
    }
    return r;
}

double normal_density(double b, double s)
{
    return std::exp(-0.5 * b * b / (s * s)) / (std::sqrt(2.0 * std::numbers::pi) * s);
}

double born_transition_density(double b, double s, double delta)
{
    double overlap = overlap_closed_form(GaussianParams::at(0.0, s),
                                         GaussianParams::at(b, delta));
    return overlap / (std::sqrt(8.0 * std::numbers::pi) * delta);
}

double born_analytic_deviation(double s, double delta, double window, int points)
{
    if (points < 2)
        throw std::invalid_argument("need >= 2 evaluation points");
    double worst = 0.0;
    for (int i = 0; i < points; ++i)
    {
        double b = -window * s + 2.0 * window * s * i / (points - 1);
        worst = std::max(worst,
                         std::abs(born_transition_density(b, s, delta) / normal_density(b, s)
                                  - 1.0));
    }
    return worst;
}

BornCurve born_curve(double s, std::span<const double> samples,
                     const BornOptions& options)
{
    if (!(s > 0.0) || options.bins < 1 || !(options.window > 0.0))
        throw std::invalid_argument("invalid Born curve parameters");
    if (samples.empty())
        throw std::invalid_argument("empty sample");
    const double lo = -options.window * s;
    const double width = 2.0 * options.window * s / options.bins;
    const double delta = s * options.delta_ratio;
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(options.bins), 0);
    for (double v : samples)
    {
        double u = (v - lo) / width;
        if (u >= 0.0 && u < options.bins)
            ++counts[static_cast<std::size_t>(u)];
    }
    BornCurve curve;
    const double n = static_cast<double>(samples.size());
    constexpr int kPanels = 64;  // Simpson, even
    for (int i = 0; i < options.bins; ++i)
    {
        double a = lo + i * width;
        curve.bin_centers.push_back(a + 0.5 * width);
        curve.empirical.push_back(counts[static_cast<std::size_t>(i)] / (n * width));
        double h = width / kPanels, acc = 0.0;
        for (int k = 0; k <= kPanels; ++k)
        {
            double w = (k == 0 || k == kPanels) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            acc += w * born_transition_density(a + k * h, s, delta);
        }
        curve.closed_form.push_back(acc * h / 3.0 / width);
    }
    return curve;
}

TestReport born_identity_check(double s, std::span<const double> samples,
                               const TestReport& step_report,
                               const BornOptions& options, TestRole role,
                               std::uint64_t seed)
{
    if (step_report.name != "gaussian_step_test" || step_report.is_contrast()
        || !step_report.passed)
        throw std::invalid_argument("Born identity check requires a passed gaussian step test");
    BornCurve curve = born_curve(s, samples, options);
    double worst = 0.0;
    for (std::size_t i = 0; i < curve.empirical.size(); ++i)
        worst = std::max(worst,
                         std::abs(curve.empirical[i] / curve.closed_form[i] - 1.0));
    const double analytic
        = born_analytic_deviation(s, s * options.delta_ratio, options.window);
    TestReport r = make_threshold_report("born_identity_check", worst,
                                         options.density_tolerance, role,
                                         samples.size(), seed);
    settle(r, worst < options.density_tolerance && analytic < options.analytic_tolerance,
           role);
    r.details["analytic_deviation"] = analytic;
    r.details["analytic_limit"] = options.analytic_tolerance;
    r.details["s"] = s;
    r.details["delta"] = s * options.delta_ratio;
    r.details["bin_centers"] = curve.bin_centers;
    r.details["empirical"] = curve.empirical;
    r.details["closed_form"] = curve.closed_form;
    return r;
}

}  // namespace statewalk
