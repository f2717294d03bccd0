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
#include <span>
#include <vector>

#include "hoqmc/gf_poly.hpp"

namespace hoqmc {

/// Classical polynomial lattice rule with b^m points in d dimensions.
struct PolyLatticeRule {
    Modulus modulus;
    std::vector<PolyGF> q;

    unsigned base() const { return modulus.base(); }
    int m() const { return modulus.degree(); }
    std::size_t dim() const { return q.size(); }
    std::uint64_t num_points() const { return modulus.order(); }

    /// Throws Error unless every q_j is nonzero, of degree < m and in base b.
    void validate() const;
};

/// Interlaced polynomial lattice rule of order alpha in s dimensions; the
/// underlying classical rule has alpha * s components.
struct InterlacedRule {
    int alpha = 1;
    PolyLatticeRule base;

    std::size_t s() const { return base.dim() / static_cast<std::size_t>(alpha); }
    void validate() const;
};

/// N points in [0,1)^s with exact digit storage. Coordinate (n, j) is
/// numerator(n, j) / base^digits.
class PointSet {
public:
    PointSet(unsigned base, int digits, std::size_t s, std::uint64_t n_points);

    unsigned base() const { return base_; }
    int digits() const { return digits_; }
    std::size_t dim() const { return s_; }
    std::uint64_t size() const { return n_; }

    std::uint64_t numerator(std::uint64_t n, std::size_t j) const { return data_[n * s_ + j]; }
    std::uint64_t& numerator(std::uint64_t n, std::size_t j) { return data_[n * s_ + j]; }
    std::span<const std::uint64_t> row(std::uint64_t n) const {
        return {data_.data() + n * s_, s_};
    }
    DigitFraction coord(std::uint64_t n, std::size_t j) const {
        return {numerator(n, j), base_, digits_};
    }
    double value(std::uint64_t n, std::size_t j) const;
    /// Row n as floating-point coordinates.
    void row_values(std::uint64_t n, std::span<double> out) const;

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    unsigned base_;
    int digits_;
    std::size_t s_;
    std::uint64_t n_;
    double scale_;
    std::vector<std::uint64_t> data_;
};

/// Points y_n = (v_m(n q_1 / P), ..., v_m(n q_d / P)), n = 0..b^m-1.
PointSet classical_points(const PolyLatticeRule& rule);

/// Digit interlacing of alpha numbers sharing base and digit count k; the
/// result has alpha * k digits.
DigitFraction interlace_digits(std::span<const DigitFraction> x);

/// Interlaced points: components alpha(j-1)+1..alpha j of the classical
/// point set are interlaced into output coordinate j.
PointSet interlaced_points(const InterlacedRule& rule);

/// Integer interlacing: digit i of l_a goes to position a - 1 + i alpha.
std::uint64_t interlace_integer(std::span<const std::uint64_t> l, unsigned b);
/// Inverse of interlace_integer.
std::vector<std::uint64_t> deinterlace_integer(std::uint64_t k, int alpha, unsigned b);

/// Sum of the min(alpha, rho) largest 1-based digit positions of k.
int mu_alpha(std::uint64_t k, int alpha, unsigned b);

/// Digit-wise addition mod b of sigma (one numerator per coordinate, at the
/// point set's precision) to every point.
PointSet digital_shift(const PointSet& pts, std::span<const std::uint64_t> sigma);
/// Shift given as floats; each component is truncated to `digits` places
/// (defaults to the point set's precision).
PointSet digital_shift(const PointSet& pts, std::span<const double> sigma, int digits = -1);

/// True iff sum_{j in v} tr_m(k_j) q_j == 0 (mod P); k[i] pairs with q[v[i]].
bool dual_membership(std::span<const std::uint64_t> k, std::span<const std::size_t> v,
                     std::span<const PolyGF> q, const Modulus& P);

}  // namespace hoqmc
