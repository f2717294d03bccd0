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

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "hoqmc/common.hpp"

namespace hoqmc {

/// A number in [0,1) with a finite base-b expansion:
/// numerator / base^digits, digit i (1-based, most significant first) is
/// the i-th base-b digit of numerator when written with `digits` places.
struct DigitFraction {
    std::uint64_t numerator = 0;
    unsigned base = 2;
    int digits = 0;

    double value() const;
    /// Digit at 1-based position i (i > digits yields 0).
    unsigned digit(int i) const;
    /// 1-based position of the first nonzero digit, 0 if the value is zero.
    int first_nonzero_digit() const;

    friend bool operator==(const DigitFraction&, const DigitFraction&) = default;
};

/// Polynomial over the prime field Z_b.
///
/// Coefficients are stored little-endian (index i holds the coefficient of
/// x^i) in canonical form: no trailing zeros, so the zero polynomial is the
/// empty vector. The integer encoding reads the coefficient vector as a
/// base-b number with the constant coefficient as least significant digit.
class PolyGF {
public:
    /// Degree reported for the zero polynomial.
    static constexpr int kZeroDegree = std::numeric_limits<int>::min();

    explicit PolyGF(unsigned base = 2);
    PolyGF(unsigned base, std::vector<unsigned> coeffs);

    static PolyGF from_encoding(unsigned base, std::uint64_t code);
    static PolyGF monomial(unsigned base, int degree, unsigned coeff = 1);

    std::uint64_t encode() const;
    unsigned base() const { return base_; }
    int degree() const;
    bool is_zero() const { return coeffs_.empty(); }
    unsigned coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0U; }
    unsigned leading() const { return coeffs_.empty() ? 0U : coeffs_.back(); }
    std::span<const unsigned> coeffs() const { return coeffs_; }

    /// Keep only the coefficients of x^0..x^{m-1}.
    PolyGF truncated(int m) const;

    PolyGF& operator+=(const PolyGF& rhs);
    PolyGF& operator-=(const PolyGF& rhs);
    PolyGF& operator*=(const PolyGF& rhs);
    PolyGF scaled(unsigned c) const;

    friend PolyGF operator+(PolyGF a, const PolyGF& b) { return a += b; }
    friend PolyGF operator-(PolyGF a, const PolyGF& b) { return a -= b; }
    friend PolyGF operator*(PolyGF a, const PolyGF& b) { return a *= b; }
    friend bool operator==(const PolyGF& a, const PolyGF& b) {
        return a.base_ == b.base_ && a.coeffs_ == b.coeffs_;
    }

private:
    void normalize();

    unsigned base_;
    std::vector<unsigned> coeffs_;
};

/// Quotient and remainder of a / d; throws on d == 0 or base mismatch.
std::pair<PolyGF, PolyGF> divmod(const PolyGF& a, const PolyGF& d);
PolyGF poly_gcd(PolyGF a, PolyGF b);

/// Multiplicative inverse of c in Z_b.
unsigned inverse_mod(unsigned c, unsigned b);

bool is_irreducible(const PolyGF& p);

/// An irreducible polynomial used as modulus of a polynomial lattice rule.
class Modulus {
public:
    /// Throws Error if p is not irreducible or has degree < 1.
    explicit Modulus(PolyGF p);

    const PolyGF& poly() const { return poly_; }
    int degree() const { return poly_.degree(); }
    unsigned base() const { return poly_.base(); }
    /// b^m, the number of residues.
    std::uint64_t order() const;

    friend bool operator==(const Modulus& a, const Modulus& b) { return a.poly_ == b.poly_; }

private:
    PolyGF poly_;
};

PolyGF poly_mod(const PolyGF& a, const Modulus& P);
PolyGF poly_mulmod(const PolyGF& a, const PolyGF& c, const Modulus& P);
PolyGF poly_powmod(PolyGF a, std::uint64_t e, const Modulus& P);

/// Irreducible polynomial of degree m over Z_b with the smallest integer
/// encoding.
Modulus find_irreducible(unsigned b, int m);

/// First m digits of the Laurent expansion of n(x) q(x) / P(x), returned
/// as the fraction sum_{l=1}^m t_l b^{-l}. Requires deg(q) < m, q != 0.
DigitFraction v_m_map(const PolyGF& n, const PolyGF& q, const Modulus& P, int m);

/// Generator of the multiplicative group of Z_b[x]/P with the smallest
/// integer encoding.
PolyGF group_generator(const Modulus& P);

/// Table indexed by the integer encoding r of a nonzero residue, holding
/// log_g(r) in [0, b^m - 2]. Entry 0 is unused and set to UINT64_MAX.
std::vector<std::uint64_t> discrete_log_permutation(const Modulus& P, const PolyGF& g);

}  // namespace hoqmc
