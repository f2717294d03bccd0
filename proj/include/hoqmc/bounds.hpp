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

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hoqmc/pointgen.hpp"
#include "hoqmc/weights.hpp"

namespace hoqmc {

/// rho_{alpha,b}(lambda) for 1/alpha < lambda <= 1.
double rho_alpha_b(double lambda, int alpha, unsigned b);

/// Certified bound on the CBC criterion of a rule with b^m points in s
/// dimensions: the order-grouped SPOD form or the exponential product form,
/// depending on spec.family.
double cbc_bound(double lambda, const WeightSpec& spec, int m, std::size_t s);

/// The tighter bound summing gamma tilde_v^lambda ((b-1)/(b^{alpha lambda}-b))^{|v|}
/// over all nonempty v in {1..alpha s}, grouped by u(v). Enumerates block
/// subsets; s <= 20.
double cbc_bound_subsets(double lambda, const WeightSpec& spec, int m, std::size_t s);

struct BoundReport {
    unsigned b = 2;
    int m = 0;
    std::size_t s = 0;
    int alpha = 2;
    double p = 1.0;
    WeightFamily family = WeightFamily::Spod;
    std::vector<double> lambdas;
    std::vector<double> bounds;
    double best_lambda = 0.0;
    double best_bound = 0.0;
    double bound_at_p = 0.0;
    std::optional<SmallnessCheck> smallness;  // set when p == 1
};

/// The lambda grid: grid_size - 1 uniform points on [1/alpha + 1e-3, 1] plus
/// p (grid_size uniform points when p already lies on them), sorted.
std::vector<double> lambda_grid(int alpha, double p, int grid_size = 50);

/// Evaluate cbc_bound on lambda_grid and report the minimum.
BoundReport optimize_lambda(const WeightSpec& spec, int m, std::size_t s, int grid_size = 50);

/// mu_1(l): number of base-b digits of l (0 for l = 0).
int mu_one(std::uint64_t l, unsigned b);

/// sum_{l >= b^K} b^{-alpha mu_1(l)}, the per-coordinate tail beyond a
/// digit cutoff K.
double dual_tail(int K, int alpha, unsigned b);
/// sum_{l >= 1} b^{-alpha mu_1(l)} = (b-1)/(b^alpha - b).
double dual_series(int alpha, unsigned b);

struct TruncatedSum {
    double partial = 0.0;
    double tail = 0.0;  // bound on the discarded terms
};

/// sum over l_v in D_v^* with every l_j < b^K of b^{-alpha mu_1(l_v)}, for
/// the coordinates q_v of a classical rule, with the tail bound.
TruncatedSum dual_sum_truncated(std::span<const PolyGF> qv, const Modulus& P, int K, int alpha);

/// Worst-case error e_{s,alpha,gamma,1} of an interlaced rule, truncated to
/// classical components l_j < b^K, with a tail bound from the interlacing
/// inequality. Small instances only (b^m <= 32, alpha s <= 6, K <= m + 4,
/// bounded enumeration count), otherwise EnvelopeError.
TruncatedSum dualnet_wce_truncated(const InterlacedRule& rule, const WeightSpec& spec, int K);

/// wal_k(y) = exp(2 pi i / b * sum_i kappa_i y_{i+1}).
std::complex<double> walsh_eval(std::uint64_t k, const DigitFraction& y);

/// (1/N) sum_n prod_j wal_{k_j}(y_j^{(n)}) over a point set; precomputes the
/// digits so that repeated evaluation is cheap.
class CharacterSums {
public:
    explicit CharacterSums(const PointSet& pts);
    std::complex<double> operator()(std::span<const std::uint64_t> k) const;

private:
    unsigned b_;
    int digits_;
    std::size_t s_;
    std::uint64_t n_;
    std::vector<std::uint64_t> reversed_;  // b = 2: bit i holds digit i+1
    std::vector<std::uint8_t> digits_tab_; // b > 2: digit i+1 at [(n*s+j)*digits+i]
};

}  // namespace hoqmc
