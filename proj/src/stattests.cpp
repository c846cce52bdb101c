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

#include "statewalk/stattests.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace statewalk {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double kolmogorov_survival(double lambda)
{
    if (lambda < 0.2)
        return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k)
    {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-17)
            break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double ks_pvalue(double d, double n_eff)
{
    double root = std::sqrt(n_eff);
    return kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

TestOutcome ks_one_sample(std::span<const double> sample,
                          const std::function<double(double)>& cdf)
{
    if (sample.empty())
        throw std::invalid_argument("empty sample");
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        double f = cdf(x[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return {d, ks_pvalue(d, n)};
}

TestOutcome ks_two_sample(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("empty sample");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size())
    {
        double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v)
            ++i;
        while (j < y.size() && y[j] == v)
            ++j;
        d = std::max(d, std::abs(i / nx - j / ny));
    }
    return {d, ks_pvalue(d, nx * ny / (nx + ny))};
}

TestOutcome brown_forsythe(const Eigen::MatrixXd& groups)
{
    const Eigen::Index n = groups.rows();
    const Eigen::Index k = groups.cols();
    if (k < 2 || n < 2)
        throw std::invalid_argument("brown_forsythe needs >= 2 groups of >= 2");
    Eigen::MatrixXd z(n, k);
    std::vector<double> col(static_cast<std::size_t>(n));
    for (Eigen::Index g = 0; g < k; ++g)
    {
        for (Eigen::Index i = 0; i < n; ++i)
            col[i] = groups(i, g);
        auto mid = col.begin() + n / 2;
        std::nth_element(col.begin(), mid, col.end());
        double median = *mid;
        if (n % 2 == 0)
            median = 0.5 * (median + *std::max_element(col.begin(), mid));
        z.col(g) = (groups.col(g).array() - median).abs();
    }
    Eigen::VectorXd group_means = z.colwise().mean();
    double grand = group_means.mean();
    double between = n * (group_means.array() - grand).square().sum();
    double within
        = (z.rowwise() - group_means.transpose()).array().square().sum();
    double df1 = static_cast<double>(k - 1);
    double df2 = static_cast<double>(n * k - k);
    if (within <= 0.0)
        return {0.0, 1.0};
    double f = (between / df1) / (within / df2);
    boost::math::fisher_f dist(df1, df2);
    return {f, boost::math::cdf(boost::math::complement(dist, f))};
}

TestOutcome max_correlation_test(const Eigen::MatrixXd& columns)
{
    const Eigen::Index n = columns.rows();
    const Eigen::Index k = columns.cols();
    if (k < 2)
        return {0.0, 1.0};
    if (n < 4)
        throw std::invalid_argument("too few samples for correlation test");
    Eigen::MatrixXd centered = columns.rowwise() - columns.colwise().mean();
    Eigen::VectorXd scale = centered.colwise().norm();
    for (Eigen::Index j = 0; j < k; ++j)
        if (scale[j] > 0.0)
            centered.col(j) /= scale[j];
    Eigen::MatrixXd corr = centered.transpose() * centered;
    double max_abs = 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = i + 1; j < k; ++j)
            max_abs = std::max(max_abs, std::abs(corr(i, j)));
    double pairs = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
    double z = std::atanh(std::min(max_abs, 1.0 - 1e-16))
               * std::sqrt(static_cast<double>(n - 3));
    double p_single = std::erfc(z / std::sqrt(2.0));
    return {max_abs, std::min(1.0, pairs * p_single)};
}

TestOutcome chi_square_equal(std::span<const std::uint64_t> counts)
{
    if (counts.size() < 2)
        throw std::invalid_argument("chi-square needs >= 2 cells");
    double total = 0.0;
    for (auto c : counts)
        total += static_cast<double>(c);
    if (total <= 0.0)
        return {0.0, 1.0};
    double expected = total / static_cast<double>(counts.size());
    double stat = 0.0;
    for (auto c : counts)
        stat += (c - expected) * (c - expected) / expected;
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return {stat, boost::math::cdf(boost::math::complement(dist, stat))};
}

double bonferroni(std::span<const double> p_values)
{
    if (p_values.empty())
        return 1.0;
    double min_p = *std::min_element(p_values.begin(), p_values.end());
    return std::min(1.0, static_cast<double>(p_values.size()) * min_p);
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("linear_fit needs >= 3 paired points");
    const double n = static_cast<double>(x.size());
    double mx = sample_mean(x), my = sample_mean(y);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit fit;
    fit.dof = static_cast<int>(x.size()) - 2;
    if (sxx <= 0.0)
        throw std::invalid_argument("linear_fit needs distinct x values");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        double r = y[i] - fit.intercept - fit.slope * x[i];
        sse += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    double s2 = sse / fit.dof;
    fit.slope_se = std::sqrt(s2 / sxx);
    fit.intercept_se = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
    return fit;
}

double student_t_critical(double alpha, int dof)
{
    boost::math::students_t dist(static_cast<double>(dof));
    return boost::math::quantile(boost::math::complement(dist, alpha / 2.0));
}

double student_t_two_sided_p(double t, int dof)
{
    boost::math::students_t dist(static_cast<double>(dof));
    return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

double sample_mean(std::span<const double> x)
{
    if (x.empty())
        throw std::invalid_argument("empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x)
{
    if (x.size() < 2)
        throw std::invalid_argument("variance needs >= 2 samples");
    double m = sample_mean(x);
    double s = 0.0;
    for (double v : x)
        s += (v - m) * (v - m);
    return s / static_cast<double>(x.size() - 1);
}

}  // namespace statewalk
