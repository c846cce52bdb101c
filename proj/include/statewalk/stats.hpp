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
#include <span>
#include <vector>

#include "statewalk/hilbert.hpp"
#include "statewalk/report.hpp"
#include "statewalk/walk.hpp"

namespace statewalk {

inline constexpr double kDefaultAlpha = 0.01;
inline constexpr std::size_t kMinIsotropySamples = 1000;

/**
 * Composite isotropy test on real tangent coordinates (rows are samples,
 * columns coordinates): Brown-Forsythe equality of variances, largest
 * pairwise correlation, and per-coordinate KS normality against N(0, pooled
 * variance). Each part is Bonferroni corrected over its family and the
 * three parts over each other.
 */
TestReport isotropy_test(const RMatrix& coordinates, double alpha = kDefaultAlpha,
                         TestRole role = TestRole::Conformance,
                         std::uint64_t seed = 0);

/// Same test on complex horizontal steps (columns) expressed in a frame:
/// each complex component contributes its real and imaginary parts.
/// details.common_variance is the per-component E|c_k|^2.
TestReport isotropy_test(const CMatrix& steps, const HorizontalFrame& frame,
                         double alpha = kDefaultAlpha,
                         TestRole role = TestRole::Conformance,
                         std::uint64_t seed = 0);

/// Two-sample KS on final FS distances of walks from two initial states.
/// Throws std::invalid_argument("config mismatch") when the observation
/// protocol differs (dimension, steps, dt, hbar, stepper, ensemble kind);
/// the ensemble scale is the law under test and may differ.
TestReport homogeneity_test(std::span<const double> distances_a,
                            std::span<const double> distances_b,
                            const WalkConfig& config_a, const WalkConfig& config_b,
                            double alpha = kDefaultAlpha,
                            TestRole role = TestRole::Conformance);

/// KS of every component of d_N (rows are trials) against
/// N(0, N dt^2 v0^2), plus cross-component correlation, Bonferroni
/// combined.
TestReport gaussian_step_test(const RMatrix& final_displacements, int steps,
                              double dt, double step_std,
                              double alpha = kDefaultAlpha,
                              TestRole role = TestRole::Conformance,
                              std::uint64_t seed = 0);
TestReport gaussian_step_test(std::span<const ConstrainedTrajectory> ensemble,
                              double alpha = kDefaultAlpha,
                              TestRole role = TestRole::Conformance,
                              std::uint64_t seed = 0);

struct ScalingSample
{
    int steps = 0;
    RMatrix final_displacements;  // rows are trials
};

/// Linear fit of the per-component Var(d_N) against N dt. Conforms when
/// R^2 > 0.99 and the intercept is within its t-interval of 0; reports the
/// diffusion coefficient D = slope / 2.
TestReport brownian_scaling_fit(std::span<const ScalingSample> samples, double dt,
                                double alpha = kDefaultAlpha,
                                TestRole role = TestRole::Conformance,
                                std::uint64_t seed = 0);

/// Chi-square test of equal hit counts in FS balls of the given radius
/// around targets equidistant from the origin. Conformance runs throw
/// std::invalid_argument when the targets are not equidistant within 1e-6;
/// with fewer than 5 hits per target the report is flagged inconclusive
/// and does not pass.
TestReport equal_distance_equiprobability(const State& origin,
                                          std::span<const State> final_states,
                                          std::span<const State> targets,
                                          double radius,
                                          double alpha = kDefaultAlpha,
                                          TestRole role = TestRole::Conformance,
                                          std::uint64_t seed = 0);

/// cos^2 theta(g_{0,s}, g_{b,delta}) / ((8 pi)^{d/2} delta^d), 1D.
double born_transition_density(double b, double s, double delta);

/// Normal density with variance s^2.
double normal_density(double b, double s);

/// max |born_transition_density / normal_density - 1| over b in
/// [-window s, window s].
double born_analytic_deviation(double s, double delta, double window = 2.0,
                               int points = 401);

struct BornOptions
{
    double window = 2.0;         // in units of s
    int bins = 6;                // histogram bins across the window
    double delta_ratio = 0.01;   // delta = s * delta_ratio
    double density_tolerance = 0.05;
    double analytic_tolerance = 1e-4;
};

/**
 * Compares the empirical density of d_N with the Born transition density to
 * narrow Gaussian targets. The histogram on the central window is compared
 * with the bin averages of born_transition_density. Requires a passed
 * gaussian_step_test report for the same ensemble (std::invalid_argument
 * otherwise).
 */
TestReport born_identity_check(double s, std::span<const double> samples,
                               const TestReport& step_report,
                               const BornOptions& options = {},
                               TestRole role = TestRole::Conformance,
                               std::uint64_t seed = 0);

struct BornCurve
{
    std::vector<double> bin_centers;
    std::vector<double> empirical;
    std::vector<double> closed_form;
};

/// Histogram and bin-averaged closed-form curve used by born_identity_check.
BornCurve born_curve(double s, std::span<const double> samples,
                     const BornOptions& options = {});

}  // namespace statewalk
