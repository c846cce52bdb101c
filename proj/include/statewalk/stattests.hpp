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
#include <functional>
#include <span>

#include <Eigen/Dense>

namespace statewalk {

struct TestOutcome
{
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Standard normal CDF.
double normal_cdf(double z);

/// Survival function of the Kolmogorov distribution, Q(lambda).
double kolmogorov_survival(double lambda);

/// One-sample Kolmogorov-Smirnov test against a continuous CDF. The
/// p-value uses the asymptotic law with Stephens' small-sample correction.
TestOutcome ks_one_sample(std::span<const double> sample,
                          const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov test (asymptotic, effective size
/// n1 n2 / (n1 + n2)).
TestOutcome ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Brown-Forsythe equality-of-variances test; each column is a group.
TestOutcome brown_forsythe(const Eigen::MatrixXd& groups);

/// Largest pairwise Pearson correlation among the columns, with a
/// Bonferroni-corrected two-sided p-value from Fisher's z transform.
TestOutcome max_correlation_test(const Eigen::MatrixXd& columns);

/// Pearson chi-square test of equal expected counts.
TestOutcome chi_square_equal(std::span<const std::uint64_t> counts);

/// Bonferroni combination: min(1, m * min p).
double bonferroni(std::span<const double> p_values);

struct LinearFit
{
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_se = 0.0;
    double intercept_se = 0.0;
    int dof = 0;
};

/// Ordinary least squares y = intercept + slope x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Two-sided Student t quantile, t_{1 - alpha/2, dof}.
double student_t_critical(double alpha, int dof);

/// Two-sided p-value of a t statistic.
double student_t_two_sided_p(double t, int dof);

double sample_mean(std::span<const double> x);
/// Unbiased sample variance.
double sample_variance(std::span<const double> x);

}  // namespace statewalk
