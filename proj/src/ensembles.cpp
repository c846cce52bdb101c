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

#include "statewalk/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "statewalk/stattests.hpp"

namespace statewalk {

std::string to_string(EnsembleKind kind)
{
    return kind == EnsembleKind::GUE ? "GUE" : "GOE";
}

EnsembleKind ensemble_kind_from_string(const std::string& name)
{
    if (name == "GUE" || name == "gue")
        return EnsembleKind::GUE;
    if (name == "GOE" || name == "goe")
        return EnsembleKind::GOE;
    throw std::invalid_argument("unknown ensemble '" + name + "'");
}

void EnsembleSpec::validate() const
{
    if (dim < 2)
        throw std::invalid_argument("ensemble dimension must be >= 2");
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("ensemble scale must be > 0");
}

HermitianSample sample_gue(const EnsembleSpec& spec, RandomStream& rng,
                           std::int64_t draw_index)
{
    if (spec.kind != EnsembleKind::GUE)
        throw std::invalid_argument("sample_gue needs a GUE spec");
    spec.validate();
    const int n = spec.dim;
    const double v = spec.scale;
    const double off = v / std::sqrt(2.0);
    CMatrix h(n, n);
    for (int j = 0; j < n; ++j)
    {
        h(j, j) = Complex(v * rng.normal(), 0.0);
        for (int k = j + 1; k < n; ++k)
        {
            double re = off * rng.normal();
            double im = off * rng.normal();
            h(j, k) = Complex(re, im);
            h(k, j) = Complex(re, -im);
        }
    }
    return HermitianSample{std::move(h), spec, draw_index};
}

HermitianSample sample_goe(const EnsembleSpec& spec, RandomStream& rng,
                           std::int64_t draw_index)
{
    if (spec.kind != EnsembleKind::GOE)
        throw std::invalid_argument("sample_goe needs a GOE spec");
    spec.validate();
    const int n = spec.dim;
    const double v = spec.scale;
    const double diag = v * std::sqrt(2.0);
    CMatrix h(n, n);
    for (int j = 0; j < n; ++j)
    {
        h(j, j) = Complex(diag * rng.normal(), 0.0);
        for (int k = j + 1; k < n; ++k)
        {
            double x = v * rng.normal();
            h(j, k) = Complex(x, 0.0);
            h(k, j) = Complex(x, 0.0);
        }
    }
    return HermitianSample{std::move(h), spec, draw_index};
}

HermitianSample sample_ensemble(const EnsembleSpec& spec, RandomStream& rng,
                                std::int64_t draw_index)
{
    return spec.kind == EnsembleKind::GUE ? sample_gue(spec, rng, draw_index)
                                          : sample_goe(spec, rng, draw_index);
}

double hermiticity_defect(const CMatrix& h)
{
    if (h.rows() != h.cols())
        throw std::invalid_argument("matrix is not square");
    if (h.size() == 0)
        return 0.0;
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

void require_hermitian(const CMatrix& h)
{
    double defect = hermiticity_defect(h);
    double scale = h.size() ? h.cwiseAbs().maxCoeff() : 0.0;
    if (defect > 1e-10 * std::max(1.0, scale))
        throw std::invalid_argument("non-Hermitian input");
}

}  // namespace

RVector eigenvalues(const CMatrix& h)
{
    require_hermitian(h);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensolver did not converge");
    return solver.eigenvalues();
}

RVector eigenvalues(const HermitianSample& h) { return eigenvalues(h.entries); }

Eigensystem eigensystem(const CMatrix& h)
{
    require_hermitian(h);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensolver did not converge");
    return Eigensystem{solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<double> spacing_ratios(const RVector& levels)
{
    if (levels.size() < 3)
        throw std::invalid_argument("too few levels for spacing ratios");
    std::vector<double> ratios;
    ratios.reserve(static_cast<std::size_t>(levels.size() - 2));
    for (Eigen::Index k = 0; k + 2 < levels.size(); ++k)
    {
        double s0 = levels[k + 1] - levels[k];
        double s1 = levels[k + 2] - levels[k + 1];
        double hi = std::max(s0, s1);
        if (hi > 0.0)
            ratios.push_back(std::min(s0, s1) / hi);
    }
    return ratios;
}

double spacing_ratio_stat(std::span<const RVector> spectra)
{
    if (spectra.empty())
        throw std::invalid_argument("no samples");
    double total = 0.0;
    for (const auto& levels : spectra)
    {
        auto r = spacing_ratios(levels);
        if (r.empty())
            throw std::invalid_argument("too few distinct levels");
        total += sample_mean(r);
    }
    return total / static_cast<double>(spectra.size());
}

double spacing_ratio_stat(std::span<const HermitianSample> samples)
{
    std::vector<RVector> spectra;
    spectra.reserve(samples.size());
    for (const auto& s : samples)
        spectra.push_back(eigenvalues(s));
    return spacing_ratio_stat(std::span<const RVector>(spectra));
}

CMatrix haar_unitary(int n, RandomStream& rng)
{
    if (n < 1)
        throw std::invalid_argument("unitary dimension must be positive");
    CMatrix z(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            z(i, j) = Complex(rng.normal(), rng.normal()) / std::sqrt(2.0);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
    {
        Complex d = r(j, j);
        double a = std::abs(d);
        if (a > 0.0)
            q.col(j) *= d / a;
    }
    return q;
}

TestReport conjugation_invariance_check(const EnsembleSpec& spec,
                                        const CMatrix& unitary, int trials,
                                        double alpha, TestRole role)
{
    spec.validate();
    const int n = spec.dim;
    if (unitary.rows() != n || unitary.cols() != n)
        throw std::invalid_argument("unitary dimension mismatch");
    double defect
        = (unitary.adjoint() * unitary - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
        throw std::invalid_argument("matrix is not unitary");
    if (trials < 2)
        throw std::invalid_argument("too few trials");
    if (n < 3)
        throw std::invalid_argument("conjugation check needs dim >= 3");

    RandomStream root(spec.seed);
    RandomStream probe_rng = root.split(0);
    std::vector<CVector> probes;
    for (int p = 0; p < 3; ++p)
    {
        CVector phi(n);
        for (int i = 0; i < n; ++i)
            phi[i] = Complex(probe_rng.normal(), probe_rng.normal());
        probes.push_back(phi.normalized());
    }

    constexpr int kFeatures = 8;
    std::vector<std::vector<double>> plain(kFeatures), rotated(kFeatures);
    auto features = [&](const CMatrix& h) {
        std::vector<double> f = {h(0, 0).real(), h(0, 1).real(), h(0, 1).imag(),
                                 h(1, 2).real(), h(1, 2).imag()};
        for (const auto& phi : probes)
            f.push_back(phi.dot(h * phi).real());
        return f;
    };
    RandomStream draws_a = root.split(1);
    RandomStream draws_b = root.split(2);
    for (int t = 0; t < trials; ++t)
    {
        RandomStream ra = draws_a.split(static_cast<std::uint64_t>(t));
        RandomStream rb = draws_b.split(static_cast<std::uint64_t>(t));
        auto fa = features(sample_ensemble(spec, ra, t).entries);
        CMatrix hb = sample_ensemble(spec, rb, t).entries;
        auto fb = features(unitary.adjoint() * hb * unitary);
        for (int k = 0; k < kFeatures; ++k)
        {
            plain[k].push_back(fa[k]);
            rotated[k].push_back(fb[k]);
        }
    }
    std::vector<double> p_values;
    nlohmann::json per_feature = nlohmann::json::array();
    double max_d = 0.0;
    for (int k = 0; k < kFeatures; ++k)
    {
        auto ks = ks_two_sample(plain[k], rotated[k]);
        p_values.push_back(ks.p_value);
        max_d = std::max(max_d, ks.statistic);
        per_feature.push_back({{"ks_d", ks.statistic}, {"p_value", ks.p_value}});
    }
    auto report = make_pvalue_report(
        "conjugation_invariance_" + to_string(spec.kind), max_d,
        bonferroni(p_values), alpha, role,
        static_cast<std::uint64_t>(trials), spec.seed);
    report.details["features"] = per_feature;
    report.details["feature_names"]
        = {"H00", "ReH01", "ImH01", "ReH12", "ImH12", "probe0", "probe1", "probe2"};
    report.details["dim"] = n;
    report.details["unitary_defect"] = defect;
    return report;
}

}  // namespace statewalk
