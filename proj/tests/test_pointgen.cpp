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

#include <algorithm>
#include <cmath>
#include <random>

#include "hoqmc/bounds.hpp"
#include "hoqmc/pointgen.hpp"

using namespace hoqmc;

namespace {

PolyGF P2(std::uint64_t code) { return PolyGF::from_encoding(2, code); }

InterlacedRule example_rule() {
    return InterlacedRule{2, PolyLatticeRule{Modulus(P2(7)), {P2(1), P2(1)}}};
}

// mu_alpha from its definition: sum of the alpha most significant nonzero
// digit positions, read off a digit string.
int mu_oracle(std::uint64_t k, int alpha, unsigned b) {
    std::vector<unsigned> digits;
    for (; k > 0; k /= b) digits.push_back(static_cast<unsigned>(k % b));
    int sum = 0, taken = 0;
    for (int i = static_cast<int>(digits.size()) - 1; i >= 0 && taken < alpha; --i) {
        if (digits[static_cast<std::size_t>(i)] != 0) {
            sum += i + 1;
            ++taken;
        }
    }
    return sum;
}

}  // namespace

TEST_CASE("classical points example") {
    const PolyLatticeRule rule{Modulus(P2(7)), {P2(1)}};
    const auto pts = classical_points(rule);
    REQUIRE(pts.size() == 4);
    CHECK(pts.numerator(0, 0) == 0);
    CHECK(pts.value(1, 0) == 0.25);
}

TEST_CASE("each classical coordinate is a permutation of the grid") {
    std::mt19937_64 rng(3);
    for (unsigned b : {2U, 3U, 5U}) {
        const auto P = find_irreducible(b, b == 2 ? 7 : 3);
        std::uniform_int_distribution<std::uint64_t> pick(1, P.order() - 1);
        std::vector<PolyGF> q;
        for (int j = 0; j < 4; ++j) q.push_back(PolyGF::from_encoding(b, pick(rng)));
        const auto pts = classical_points(PolyLatticeRule{P, q});
        for (std::size_t j = 0; j < q.size(); ++j) {
            std::vector<std::uint64_t> col;
            for (std::uint64_t n = 0; n < pts.size(); ++n) col.push_back(pts.numerator(n, j));
            std::sort(col.begin(), col.end());
            for (std::uint64_t i = 0; i < col.size(); ++i) CHECK(col[i] == i);
        }
    }
}

TEST_CASE("interlace_digits examples") {
    const DigitFraction quarter{1, 2, 2};
    const DigitFraction pair[] = {quarter, quarter};
    const auto y = interlace_digits(pair);
    CHECK(y.digits == 4);
    CHECK(y.numerator == 3);  // 0.0011 = 3/16
    const DigitFraction zeros[] = {{0, 3, 2}, {0, 3, 2}, {0, 3, 2}};
    CHECK(interlace_digits(zeros).numerator == 0);
    const DigitFraction single[] = {{5, 3, 2}};
    CHECK(interlace_digits(single) == DigitFraction{5, 3, 2});
}

TEST_CASE("interlaced points example") {
    const auto pts = interlaced_points(example_rule());
    REQUIRE(pts.dim() == 1);
    CHECK(pts.numerator(0, 0) == 0);
    CHECK(pts.value(1, 0) == 3.0 / 16.0);
}

TEST_CASE("interlacing with alpha 1 is the classical rule") {
    const auto P = find_irreducible(3, 3);
    const PolyLatticeRule base{P, {PolyGF::from_encoding(3, 1), PolyGF::from_encoding(3, 17)}};
    CHECK(interlaced_points(InterlacedRule{1, base}) == classical_points(base));
}

TEST_CASE("interlaced digits follow the digit-by-digit definition") {
    const auto P = find_irreducible(3, 3);
    const int alpha = 3;
    std::vector<PolyGF> q;
    for (std::uint64_t c : {1, 5, 11, 20, 7, 2}) q.push_back(PolyGF::from_encoding(3, c));
    const InterlacedRule rule{alpha, PolyLatticeRule{P, q}};
    const auto cls = classical_points(rule.base);
    const auto pts = interlaced_points(rule);
    REQUIRE(pts.digits() == 9);
    for (std::uint64_t n = 0; n < pts.size(); ++n) {
        for (std::size_t j = 0; j < rule.s(); ++j) {
            const auto y = pts.coord(n, j);
            for (int a = 1; a <= 3; ++a)
                for (int t = 0; t < alpha; ++t)
                    CHECK(y.digit((a - 1) * alpha + t + 1) ==
                          cls.coord(n, j * alpha + static_cast<std::size_t>(t)).digit(a));
            // floating conversion round-trips the exact digits
            CHECK(static_cast<std::uint64_t>(std::llround(pts.value(n, j) * 19683.0)) == y.numerator);
        }
    }
}

TEST_CASE("interlace_integer examples") {
    const std::uint64_t ones[] = {1, 1};
    CHECK(interlace_integer(ones, 2) == 3);
    const std::uint64_t zeros[] = {0, 0, 0};
    CHECK(interlace_integer(zeros, 2) == 0);
    const std::uint64_t single[] = {41};
    CHECK(interlace_integer(single, 3) == 41);
    const std::uint64_t pair[] = {2, 1};  // 10_2 and 01_2 interleave to 0110_2
    CHECK(interlace_integer(pair, 2) == 6);
}

TEST_CASE("deinterlace inverts interlace") {
    std::mt19937_64 rng(5);
    for (unsigned b : {2U, 3U}) {
        for (int alpha = 1; alpha <= 4; ++alpha) {
            std::uniform_int_distribution<std::uint64_t> pick(0, 200);
            for (int t = 0; t < 100; ++t) {
                std::vector<std::uint64_t> l(static_cast<std::size_t>(alpha));
                for (auto& v : l) v = pick(rng);
                CHECK(deinterlace_integer(interlace_integer(l, b), alpha, b) == l);
            }
        }
    }
}

TEST_CASE("mu_alpha examples and definition") {
    CHECK(mu_alpha(0, 2, 2) == 0);
    CHECK(mu_alpha(6, 2, 2) == 5);
    CHECK(mu_alpha(6, 1, 2) == 3);
    for (unsigned b : {2U, 3U})
        for (int alpha = 1; alpha <= 4; ++alpha)
            for (std::uint64_t k = 0; k < 2000; ++k)
                CHECK(mu_alpha(k, alpha, b) == mu_oracle(k, alpha, b));
}

TEST_CASE("digital shift examples") {
    PointSet pts(2, 2, 1, 1);
    pts.numerator(0, 0) = 1;  // 1/4
    const double half[] = {0.5};
    CHECK(digital_shift(pts, half).value(0, 0) == 0.75);

    const auto rule = example_rule();
    const auto base = interlaced_points(rule);
    const double zero[] = {0.0};
    CHECK(digital_shift(base, zero) == base);
    const double sigma[] = {0.6875};
    CHECK(digital_shift(digital_shift(base, sigma), sigma) == base);

    PointSet ter(3, 1, 1, 1);
    ter.numerator(0, 0) = 2;
    const std::uint64_t two[] = {2};
    CHECK(digital_shift(ter, two).numerator(0, 0) == 1);  // digit-wise (2+2) mod 3
}

TEST_CASE("dual_membership examples") {
    const auto P = find_irreducible(2, 4);
    const std::vector<PolyGF> q = {P2(1), P2(9), P2(9)};
    const std::size_t v0[] = {0};
    const std::uint64_t kN[] = {16};
    CHECK(dual_membership(kN, v0, q, P));
    for (std::uint64_t k = 1; k < 16; ++k) {
        const std::uint64_t kk[] = {k};
        CHECK_FALSE(dual_membership(kk, v0, q, P));
    }
    const std::size_t v12[] = {1, 2};
    const std::uint64_t same[] = {5, 5};
    CHECK(dual_membership(same, v12, q, P));
    const std::uint64_t lifted[] = {5 + 16 * 3, 5};
    CHECK(dual_membership(lifted, v12, q, P));
}

TEST_CASE("digital shift leaves character sums invariant in modulus") {
    const auto P = find_irreducible(2, 3);
    const InterlacedRule rule{2, PolyLatticeRule{P, {P2(1), P2(3), P2(5), P2(6)}}};
    const auto pts = interlaced_points(rule);
    const double sigma[] = {0.3, 0.71};
    const auto shifted = digital_shift(pts, sigma);
    const CharacterSums plain(pts), moved(shifted);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::uint64_t> pick(0, 4095);
    for (int t = 0; t < 300; ++t) {
        const std::uint64_t k[] = {pick(rng), pick(rng)};
        CHECK(std::abs(plain(k)) == doctest::Approx(std::abs(moved(k))).epsilon(1e-12));
    }
}
