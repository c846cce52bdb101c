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
#include <string>
#include <vector>

#include "statewalk/hilbert.hpp"
#include "statewalk/random.hpp"
#include "statewalk/report.hpp"

namespace statewalk {

enum class EnsembleKind
{
    GUE,
    GOE
};

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);

/**
 * Gaussian ensemble with scale v (energy units). Variance convention:
 *
 *   GUE: H_jj ~ N(0, v^2); Re H_jk, Im H_jk ~ N(0, v^2/2) for j < k,
 *        so E|H_jk|^2 = v^2 and E[H_ij H_lk] = v^2 d_ik d_jl.
 *   GOE: H_jj ~ N(0, 2 v^2); H_jk ~ N(0, v^2) for j < k.
 *
 * v does not scale with the dimension.
 */
struct EnsembleSpec
{
    EnsembleKind kind = EnsembleKind::GUE;
    int dim = 2;
    double scale = 1.0;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless dim >= 2 and scale > 0.
    void validate() const;
};

struct HermitianSample
{
    CMatrix entries;
    EnsembleSpec spec;
    std::int64_t draw_index = 0;
};

/// Draws consume the stream row by row over the upper triangle: for each
/// j, the diagonal entry then (Re, Im) of H_jk for k > j.
HermitianSample sample_gue(const EnsembleSpec& spec, RandomStream& rng,
                           std::int64_t draw_index = 0);
HermitianSample sample_goe(const EnsembleSpec& spec, RandomStream& rng,
                           std::int64_t draw_index = 0);
/// Dispatches on spec.kind.
HermitianSample sample_ensemble(const EnsembleSpec& spec, RandomStream& rng,
                                std::int64_t draw_index = 0);

/// Largest |H - H^dagger| entry.
double hermiticity_defect(const CMatrix& h);

struct Eigensystem
{
    RVector values;   // ascending
    CMatrix vectors;  // columns
};

/// Ascending eigenvalues of a Hermitian matrix. Throws
/// std::invalid_argument("non-Hermitian input") when the Hermiticity defect
/// exceeds 1e-10 relative to the largest entry.
RVector eigenvalues(const CMatrix& h);
RVector eigenvalues(const HermitianSample& h);
Eigensystem eigensystem(const CMatrix& h);

/// Mean over samples of the mean ratio min(s_k, s_k+1)/max(s_k, s_k+1)
/// of consecutive level spacings.
double spacing_ratio_stat(std::span<const HermitianSample> samples);
double spacing_ratio_stat(std::span<const RVector> spectra);
/// Ratios r_k of one sorted spectrum.
std::vector<double> spacing_ratios(const RVector& sorted_levels);

/// Haar-random unitary (QR of a complex Ginibre matrix with the phases of
/// R's diagonal absorbed).
CMatrix haar_unitary(int n, RandomStream& rng);

/// Two-sample KS comparison of {H} against {U^-1 H' U} from independent
/// draws: real entry marginals H_00, Re/Im H_01, Re/Im H_12 and quadratic
/// forms <phi|H|phi> for three fixed random probes, Bonferroni combined.
TestReport conjugation_invariance_check(const EnsembleSpec& spec,
                                        const CMatrix& unitary, int trials,
                                        double alpha = 0.01,
                                        TestRole role = TestRole::Conformance);

}  // namespace statewalk
