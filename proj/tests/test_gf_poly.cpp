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
#include <random>
#include <set>

#include "hoqmc/gf_poly.hpp"

using namespace hoqmc;

namespace {

PolyGF P2(std::uint64_t code) { return PolyGF::from_encoding(2, code); }

// Irreducibility by exhaustive search over all monic divisors of degree <= m/2.
bool irreducible_oracle(const PolyGF& p) {
    const unsigned b = p.base();
    const int m = p.degree();
    if (m < 1) return false;
    for (int d = 1; 2 * d <= m; ++d) {
        const std::uint64_t lo = ipow(b, static_cast<unsigned>(d));
        for (std::uint64_t code = lo; code < 2 * lo; ++code) {  // monic: leading 1
            const auto f = PolyGF::from_encoding(b, code);
            if (divmod(p, f).second.is_zero()) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("encoding round trip and canonical form") {
    const PolyGF p(3, {2, 0, 1, 0, 0});
    CHECK(p.degree() == 2);
    CHECK(p.encode() == 2 + 9);
    CHECK(PolyGF::from_encoding(3, 11) == p);
    CHECK(PolyGF(2).is_zero());
    CHECK(PolyGF(2).degree() == PolyGF::kZeroDegree);
    CHECK(PolyGF(5, {7}).coeff(0) == 2);
}

TEST_CASE("poly_mulmod examples") {
    const Modulus P(P2(7));  // x^2 + x + 1
    CHECK(poly_mulmod(P2(3), P2(3), P) == P2(2));  // (x+1)^2 = x
    CHECK(poly_mulmod(PolyGF(2), P2(3), P).is_zero());
    CHECK(poly_mulmod(P2(1), P2(5), P) == poly_mod(P2(5), P));
}

TEST_CASE("poly_mulmod algebra on random triples") {
    std::mt19937_64 rng(11);
    for (unsigned b : {2U, 3U, 5U}) {
        const Modulus P = find_irreducible(b, 5);
        std::uniform_int_distribution<std::uint64_t> pick(0, P.order() - 1);
        for (int t = 0; t < 200; ++t) {
            const auto a = PolyGF::from_encoding(b, pick(rng));
            const auto c = PolyGF::from_encoding(b, pick(rng));
            const auto e = PolyGF::from_encoding(b, pick(rng));
            CHECK(poly_mulmod(a, c, P) == poly_mulmod(c, a, P));
            CHECK(poly_mulmod(poly_mulmod(a, c, P), e, P) == poly_mulmod(a, poly_mulmod(c, e, P), P));
            CHECK(poly_mulmod(a, c + e, P) == poly_mod(poly_mulmod(a, c, P) + poly_mulmod(a, e, P), P));
        }
    }
}

TEST_CASE("mismatched bases are rejected") {
    const Modulus P(P2(7));
    CHECK_THROWS_AS(poly_mulmod(PolyGF::from_encoding(3, 1), P2(1), P), Error);
}

TEST_CASE("is_irreducible examples") {
    CHECK(is_irreducible(P2(7)));
    CHECK_FALSE(is_irreducible(P2(5)));  // x^2 + 1 = (x+1)^2
    CHECK(is_irreducible(P2(2)));
    CHECK_THROWS_AS(Modulus(P2(5)), Error);
}

TEST_CASE("is_irreducible agrees with trial division") {
    for (unsigned b : {2U, 3U, 5U}) {
        const std::uint64_t limit = b == 2 ? 1024 : (b == 3 ? 729 : 625);
        for (std::uint64_t code = b; code < limit; ++code) {
            const auto p = PolyGF::from_encoding(b, code);
            if (p.leading() != 1) continue;
            CHECK_MESSAGE(is_irreducible(p) == irreducible_oracle(p), "b=" << b << " code=" << code);
        }
    }
}

TEST_CASE("find_irreducible examples and exhaustive property") {
    CHECK(find_irreducible(2, 2).poly().encode() == 7);
    CHECK(find_irreducible(2, 1).poly().encode() == 2);
    CHECK(find_irreducible(3, 1).poly().encode() == 3);
    for (unsigned b : {2U, 3U, 5U}) {
        for (int m = 1; m <= 8; ++m) {
            const auto P = find_irreducible(b, m);
            CHECK(P.degree() == m);
            CHECK(is_irreducible(P.poly()));
            // smallest encoding among monic irreducibles of degree m
            const std::uint64_t lo = ipow(b, static_cast<unsigned>(m));
            if (m <= 4) {
                for (std::uint64_t code = lo; code < P.poly().encode(); ++code)
                    CHECK_FALSE(irreducible_oracle(PolyGF::from_encoding(b, code)));
            }
        }
    }
}

TEST_CASE("v_m_map examples") {
    const Modulus P(P2(7));
    const auto one = v_m_map(P2(1), P2(1), P, 2);
    CHECK(one.numerator == 1);  // 1/4
    CHECK(one.digits == 2);
    CHECK(one.value() == doctest::Approx(0.25));
    CHECK(v_m_map(P2(2), P2(1), P, 2).value() == 0.75);  // x/(x^2+x+1) = x^-1 + x^-2 + ...
    CHECK(v_m_map(PolyGF(2), P2(3), P, 2).numerator == 0);
    CHECK_THROWS_AS(v_m_map(P2(1), PolyGF(2), P, 2), Error);
}

TEST_CASE("v_m_map is a bijection for every nonzero q") {
    for (unsigned b : {2U, 3U}) {
        for (int m = 1; m <= (b == 2 ? 6 : 4); ++m) {
            const auto P = find_irreducible(b, m);
            for (std::uint64_t qc = 1; qc < P.order(); ++qc) {
                std::set<std::uint64_t> seen;
                for (std::uint64_t n = 0; n < P.order(); ++n) {
                    const auto y = v_m_map(PolyGF::from_encoding(b, n),
                                           PolyGF::from_encoding(b, qc), P, m);
                    REQUIRE(y.numerator < P.order());
                    seen.insert(y.numerator);
                }
                CHECK(seen.size() == P.order());
            }
        }
    }
}

TEST_CASE("digit accessors") {
    const DigitFraction y{6, 2, 4};  // 0.0110
    CHECK(y.digit(1) == 0);
    CHECK(y.digit(2) == 1);
    CHECK(y.digit(3) == 1);
    CHECK(y.digit(4) == 0);
    CHECK(y.digit(9) == 0);
    CHECK(y.first_nonzero_digit() == 2);
    CHECK(DigitFraction{0, 3, 4}.first_nonzero_digit() == 0);
}

TEST_CASE("group_generator examples") {
    CHECK(group_generator(Modulus(P2(7))) == P2(2));
    CHECK(group_generator(Modulus(P2(2))) == P2(1));
    CHECK(group_generator(Modulus(PolyGF::from_encoding(3, 3))) == PolyGF::from_encoding(3, 2));
}

TEST_CASE("discrete log examples") {
    const Modulus P(P2(7));
    const auto g = group_generator(P);
    const auto lg = discrete_log_permutation(P, g);
    CHECK(lg[g.encode()] == 1);
    CHECK(lg[1] == 0);
    CHECK(lg[3] == 2);  // x^2 = x + 1
}

TEST_CASE("generator powers invert the discrete log") {
    for (unsigned b : {2U, 3U, 5U}) {
        for (int m = 1; ipow(b, static_cast<unsigned>(m)) - 1 <= 255; ++m) {
            const auto P = find_irreducible(b, m);
            const auto g = group_generator(P);
            const auto lg = discrete_log_permutation(P, g);
            std::vector<std::uint64_t> logs;
            for (std::uint64_t r = 1; r < P.order(); ++r) {
                CHECK(poly_powmod(g, lg[r], P).encode() == r);
                logs.push_back(lg[r]);
            }
            std::sort(logs.begin(), logs.end());
            for (std::uint64_t i = 0; i < logs.size(); ++i) CHECK(logs[i] == i);
        }
    }
}
