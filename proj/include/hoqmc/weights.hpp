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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hoqmc/common.hpp"

namespace hoqmc {

/// Fluctuation sizes beta_1 >= beta_2 >= ... with a declared summability
/// exponent p.
struct BetaSequence {
    enum class Kind { Power, List };

    Kind kind = Kind::Power;
    double c = 0.0;              // Power: beta_j = c * j^-theta
    double theta = 2.0;
    std::vector<double> values;  // List: beta_1..beta_n, zero beyond
    double p = 1.0;

    static BetaSequence power(double c, double theta, double p);
    static BetaSequence list(std::vector<double> values, double p);

    /// beta_j for 1-based j.
    double operator()(std::size_t j) const;
    std::vector<double> first(std::size_t s) const;
    /// sum_{j>=1} beta_j (closed form through zeta for power decay).
    double total() const;

    /// Throws Error on a negative or increasing sequence, p outside (0,1], or
    /// theta * p <= 1 for power decay.
    void validate() const;
};

enum class WeightFamily { Spod, Product };

const char* to_string(WeightFamily f);
WeightFamily parse_weight_family(const std::string& s);

/// Weight family, interlacing order and beta sequence, plus the derived
/// per-order factors used by the fast CBC.
struct WeightSpec {
    WeightFamily family = WeightFamily::Spod;
    unsigned b = 2;
    int alpha = 2;
    BetaSequence beta;

    /// C_{alpha,b} * b^{alpha(alpha-1)/2}, the per-block multiplier of gamma tilde.
    double block_multiplier() const;
    /// SPOD per-order factor gamma_j(nu) = C b^{alpha(alpha-1)/2} 2^{delta(nu,alpha)} beta_j^nu.
    double spod_factor(std::size_t j, int nu) const;
    /// Product per-coordinate factor C b^{alpha(alpha-1)/2} gamma_j.
    double product_factor(std::size_t j) const;

    void validate() const;
};

/// alpha = floor(1/p) + 1.
int choose_alpha(double p);

/// The Walsh-coefficient constant C_{alpha,b}.
double c_alpha_b(int alpha, unsigned b);

/// SPOD weight gamma_u for a set of 1-based coordinates u.
double spod_weight(std::span<const std::size_t> u, const WeightSpec& spec);
/// Reference SPOD weight by enumerating all alpha^|u| order vectors.
double spod_weight_bruteforce(std::span<const std::size_t> u, const WeightSpec& spec);

/// Product weight gamma_j = sum_{nu=1}^alpha nu! 2^{delta(nu,alpha)} beta_j^nu.
double product_weight(std::size_t j, const WeightSpec& spec);
/// prod_{j in u} gamma_j.
double product_set_weight(std::span<const std::size_t> u, const WeightSpec& spec);

/// gamma_u of the spec's family.
double weight(std::span<const std::size_t> u, const WeightSpec& spec);

/// u(v) = { ceil(j / alpha) : j in v } for 1-based v, sorted and unique.
std::vector<std::size_t> u_of_v(std::span<const std::size_t> v, int alpha);

/// gamma tilde_v = C^{|u|} b^{alpha(alpha-1)|u|/2} gamma_u, u = u(v).
double tilde_gamma(std::span<const std::size_t> v, const WeightSpec& spec);

/// Per-order factors of a spec for the first s blocks: row j-1 holds
/// gamma_j(1..alpha) (SPOD) or the single product factor (Product).
std::vector<std::vector<double>> tilde_gamma_factors(const WeightSpec& spec, std::size_t s);

struct SmallnessCheck {
    bool ok = false;
    double sum = 0.0;
    double threshold = 0.0;
};

/// Upper limit on sum beta_j required for p = 1.
double smallness_threshold(unsigned b);
SmallnessCheck check_smallness(const BetaSequence& beta, unsigned b);

}  // namespace hoqmc
