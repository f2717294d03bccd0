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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hoqmc/weights.hpp"

using namespace hoqmc;

namespace {

WeightSpec spec_with(std::vector<double> beta, int alpha, WeightFamily family = WeightFamily::Spod,
                     double p = 0.6) {
    WeightSpec s;
    s.family = family;
    s.b = 2;
    s.alpha = alpha;
    s.beta = BetaSequence::list(std::move(beta), p);
    return s;
}

// Independent transcription of the C_{alpha,b} formula.
double c_oracle(int alpha, unsigned b) {
    const double bd = b, t = 2.0 * std::sin(std::numbers::pi / bd);
    double m = 2.0 / std::pow(t, alpha);
    for (int z = 1; z <= alpha - 1; ++z) m = std::max(m, std::pow(t, -z));
    return m * std::pow(1.0 + 1.0 / bd + 1.0 / (bd * (bd + 1.0)), alpha - 2) *
           (3.0 + 2.0 / bd + (2.0 * bd + 1.0) / (bd - 1.0));
}

}  // namespace

TEST_CASE("choose_alpha") {
    CHECK(choose_alpha(1.0) == 2);
    CHECK(choose_alpha(0.5) == 3);
    CHECK(choose_alpha(0.4) == 3);
    CHECK(choose_alpha(0.6) == 2);
    CHECK_THROWS_AS(choose_alpha(0.0), Error);
    CHECK_THROWS_AS(choose_alpha(1.5), Error);
    for (int i = 1; i <= 1000; ++i) {
        const double p = i / 1000.0;
        const int a = choose_alpha(p);
        CHECK(a >= 2);
        CHECK(1.0 / a < p);
    }
}

TEST_CASE("C_{alpha,b}") {
    CHECK(c_alpha_b(2, 2) == 4.5);
    CHECK(c_alpha_b(3, 2) == doctest::Approx(7.5).epsilon(1e-15));
    CHECK_THROWS_AS(c_alpha_b(1, 2), Error);
    double prev = 0.0;
    for (int alpha = 2; alpha <= 6; ++alpha) {
        const double c = c_alpha_b(alpha, 2);
        CHECK(c == doctest::Approx(c_oracle(alpha, 2)).epsilon(1e-14));
        CHECK(c > prev);
        prev = c;
    }
    for (unsigned b : {3U, 5U, 7U})
        for (int alpha = 2; alpha <= 4; ++alpha)
            CHECK(c_alpha_b(alpha, b) == doctest::Approx(c_oracle(alpha, b)).epsilon(1e-14));
}

TEST_CASE("SPOD weight examples") {
    const double b = 0.3;
    const auto spec = spec_with({b, b, b}, 2);
    const std::size_t one[] = {1};
    const std::size_t two[] = {1, 2};
    CHECK(spod_weight(one, spec) == doctest::Approx(b + 4 * b * b).epsilon(1e-15));
    CHECK(spod_weight(two, spec) ==
          doctest::Approx(2 * b * b + 24 * b * b * b + 96 * b * b * b * b).epsilon(1e-14));
    CHECK(spod_weight(std::span<const std::size_t>{}, spec) == 1.0);
}

TEST_CASE("product weight examples") {
    const double b = 0.3;
    const auto spec = spec_with({b, b, 0.0}, 2, WeightFamily::Product);
    CHECK(product_weight(1, spec) == doctest::Approx(b + 4 * b * b).epsilon(1e-15));
    CHECK(product_weight(3, spec) == 0.0);
    const std::size_t two[] = {1, 2};
    const double prod = b * b * (1 + 4 * b) * (1 + 4 * b);
    CHECK(product_set_weight(two, spec) == doctest::Approx(prod).epsilon(1e-14));
    CHECK(prod != doctest::Approx(2 * b * b + 24 * b * b * b + 96 * b * b * b * b));
}

TEST_CASE("grouped SPOD recurrence matches brute-force enumeration") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(0.01, 0.9);
    for (int alpha = 1; alpha <= 3; ++alpha) {
        for (int t = 0; t < 20; ++t) {
            std::vector<double> beta(5);
            for (auto& v : beta) v = U(rng);
            std::sort(beta.rbegin(), beta.rend());
            const auto spec = spec_with(beta, std::max(alpha, 2));
            for (std::size_t n = 1; n <= 5; ++n) {
                std::vector<std::size_t> u;
                for (std::size_t j = 1; j <= n; ++j) u.push_back(j);
                CHECK(spod_weight(u, spec) ==
                      doctest::Approx(spod_weight_bruteforce(u, spec)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("singleton weights coincide across families") {
    for (int alpha = 2; alpha <= 5; ++alpha) {
        const auto sp = spec_with({0.7, 0.2}, alpha);
        const auto pr = spec_with({0.7, 0.2}, alpha, WeightFamily::Product);
        for (std::size_t j = 1; j <= 2; ++j) {
            const std::size_t u[] = {j};
            CHECK(spod_weight(u, sp) == doctest::Approx(product_weight(j, pr)).epsilon(1e-15));
        }
    }
}

TEST_CASE("weights increase with each beta_j") {
    const std::vector<double> base = {0.5, 0.4, 0.3, 0.2};
    for (auto fam : {WeightFamily::Spod, WeightFamily::Product}) {
        for (std::size_t j = 0; j < base.size(); ++j) {
            auto bumped = base;
            bumped[j] *= 1.01;
            const auto s0 = spec_with(base, 3, fam), s1 = spec_with(bumped, 3, fam);
            const std::size_t u[] = {1, 2, 3, 4};
            CHECK(weight(u, s1) > weight(u, s0));
        }
    }
}

TEST_CASE("tilde gamma machinery") {
    const auto spec = spec_with({0.5, 0.25}, 2);
    CHECK(spec.block_multiplier() == 9.0);
    CHECK(tilde_gamma(std::span<const std::size_t>{}, spec) == 1.0);
    const std::size_t v[] = {1, 3};
    CHECK(u_of_v(v, 2) == std::vector<std::size_t>{1, 2});
    const std::size_t w[] = {1, 2};
    CHECK(u_of_v(w, 2) == std::vector<std::size_t>{1});
    const std::size_t one[] = {1};
    CHECK(tilde_gamma(w, spec) == doctest::Approx(9.0 * spod_weight(one, spec)).epsilon(1e-15));
    CHECK(spec.spod_factor(1, 2) == doctest::Approx(9.0 * 2.0 * 0.25).epsilon(1e-15));
}

TEST_CASE("smallness condition") {
    CHECK(smallness_threshold(2) == doctest::Approx(1.0 / 45.0).epsilon(1e-14));
    CHECK(check_smallness(BetaSequence::list({0.01}, 1.0), 2).ok);
    for (unsigned b = 2; b <= 97; ++b) {
        if (!is_prime(b)) continue;
        CHECK(smallness_threshold(b) < 1.0);
        CHECK_FALSE(check_smallness(BetaSequence::list({0.5, 0.5}, 1.0), b).ok);
    }
    // power decay sum in closed form: c zeta(2) = c pi^2 / 6
    const auto r = check_smallness(BetaSequence::power(0.01, 2.0, 1.0), 2);
    CHECK(r.sum == doctest::Approx(0.01 * std::numbers::pi * std::numbers::pi / 6).epsilon(1e-14));
    CHECK(r.ok);
}

TEST_CASE("beta sequence validation") {
    CHECK_THROWS_AS(BetaSequence::power(0.1, 2.0, 0.4), Error);  // theta p <= 1
    CHECK_THROWS_AS(BetaSequence::list({0.1, 0.2}, 0.5), Error);  // increasing
    CHECK_THROWS_AS(BetaSequence::list({-0.1}, 0.5), Error);
    const auto b = BetaSequence::power(0.5, 2.0, 0.6);
    CHECK(b(2) == 0.125);
    CHECK(BetaSequence::list({0.3}, 0.5)(4) == 0.0);
}
