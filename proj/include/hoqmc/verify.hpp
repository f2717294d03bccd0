// Copyright 2026 The hoqmc Authors
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

// Cross-module oracle suites shared by the verify command and the
// acceptance harness.

#include <cstdint>
#include <string>
#include <vector>

#include "hoqmc/cbc.hpp"
#include "hoqmc/pointgen.hpp"
#include "hoqmc/weights.hpp"

namespace hoqmc {

struct SuiteResult {
    std::string name;
    std::uint64_t passed = 0;
    std::uint64_t total = 0;
    double seconds = 0.0;
    std::vector<std::string> failures;  // first few only

    bool ok() const { return total > 0 && passed == total; }
    void record(bool pass, const std::string& what);
};

struct GridCase {
    unsigned b = 2;
    int m = 2;
    int alpha = 2;
    std::size_t s = 1;
    WeightFamily family = WeightFamily::Spod;
};

/// beta_j = 0.5 j^-2 with the summability exponent used for order alpha:
/// p = 0.6 for alpha = 2; for alpha >= 3 the first three values are listed
/// explicitly with p = 1/alpha + 0.0667 (power decay with theta = 2 cannot
/// declare p < 1/2).
BetaSequence grid_beta(int alpha);
WeightSpec grid_spec(const GridCase& c);

std::vector<GridCase> make_grid(const std::vector<unsigned>& bases, int m_min, int m_max,
                                const std::vector<int>& alphas, std::size_t s_max);

/// Fast CBC against the brute-force CBC: identical vectors and criterion
/// traces within relative tolerance.
SuiteResult suite_cbc_equivalence(const std::vector<GridCase>& grid, double rel_tol = 1e-10);

/// Rader/FFT product against the direct product for random vectors.
SuiteResult suite_rader(unsigned b, int m_min, int m_max, int vectors, std::uint64_t seed,
                        double rel_tol = 1e-9);

/// Walsh character sums of the classical point set of a rule against
/// dual_membership, exhaustive over k modulo b^m plus `samples` random
/// vectors with components below b^{2m}. Requires b^m <= 64.
SuiteResult suite_character_sums(const std::vector<CbcResult>& rules, int samples,
                                  std::uint64_t seed);

/// Character sums of given interlaced points against the dual net of the
/// rule; exhaustive when small, sampled otherwise.
SuiteResult suite_character_sums_points(const InterlacedRule& rule, const PointSet& pts,
                                        int samples, std::uint64_t seed);

/// Kernel identity for |v| <= 2 with cutoff K = m + 4, plus the truncated
/// worst-case error against the criterion where the enumeration fits.
SuiteResult suite_kernel_identity(const std::vector<CbcResult>& rules);

/// The interlacing inequality for all z_j < b^digits, and the alpha = 1
/// identity.
SuiteResult suite_mu_inequality(unsigned b, const std::vector<int>& alphas, int digits);

}  // namespace hoqmc
