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

#include "hoqmc/pointgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "residue.hpp"

namespace hoqmc {

using detail::ResidueField;

void PolyLatticeRule::validate() const {
    const int m = modulus.degree();
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (q[j].base() != modulus.base())
            throw Error("generating polynomial " + std::to_string(j + 1) + " has the wrong base");
        if (q[j].is_zero())
            throw Error("generating polynomial " + std::to_string(j + 1) + " is zero");
        if (q[j].degree() >= m)
            throw Error("generating polynomial " + std::to_string(j + 1) + " has degree >= m");
    }
}

void InterlacedRule::validate() const {
    if (alpha < 1) throw Error("interlacing factor must be >= 1");
    if (base.dim() % static_cast<std::size_t>(alpha) != 0)
        throw Error("generating vector length is not a multiple of alpha");
    base.validate();
}

// ---- PointSet ---------------------------------------------------------------

PointSet::PointSet(unsigned base, int digits, std::size_t s, std::uint64_t n_points)
    : base_(base), digits_(digits), s_(s), n_(n_points),
      scale_(1.0 / std::pow(static_cast<double>(base), digits)),
      data_(static_cast<std::size_t>(n_points) * s, 0) {
    ipow(base, static_cast<unsigned>(digits));  // envelope check
}

double PointSet::value(std::uint64_t n, std::size_t j) const {
    return static_cast<double>(numerator(n, j)) * scale_;
}

void PointSet::row_values(std::uint64_t n, std::span<double> out) const {
    const auto r = row(n);
    for (std::size_t j = 0; j < s_; ++j) out[j] = static_cast<double>(r[j]) * scale_;
}

// ---- generation -------------------------------------------------------------

namespace {

// Digit columns of one classical coordinate: column i is v_m(x^i q / P), so
// that the coordinate of n is the digit-wise sum of eta_i * column i.
std::vector<std::uint64_t> classical_columns(const ResidueField& field, const PolyGF& q) {
    const std::uint64_t x = field.base();  // encoding of the monomial x
    std::vector<std::uint64_t> cols;
    std::uint64_t r = q.encode();
    for (int i = 0; i < field.degree(); ++i) {
        cols.push_back(field.laurent_numerator(r));
        r = field.mul(r, x);
    }
    return cols;
}

std::uint64_t interlace_numerators(std::span<const std::uint64_t> x, unsigned b, int k) {
    const auto alpha = x.size();
    std::uint64_t out = 0;
    if (b == 2) {
        // Digit a (1-based) of a k-digit numerator is bit k - a.
        for (int a = 1; a <= k; ++a)
            for (std::size_t j = 0; j < alpha; ++j) out = (out << 1) | ((x[j] >> (k - a)) & 1U);
        return out;
    }
    std::vector<DigitFraction> fr;
    for (auto v : x) fr.push_back({v, b, k});
    for (int a = 1; a <= k; ++a)
        for (std::size_t j = 0; j < alpha; ++j) out = out * b + fr[j].digit(a);
    return out;
}

// Fill `pts` from digit columns: coordinate j of n is the digit-wise sum over
// the base-b digits eta_i of n of eta_i * cols[j][i].
void fill_from_columns(PointSet& pts, const std::vector<std::vector<std::uint64_t>>& cols) {
    const unsigned b = pts.base();
    const int digits = pts.digits();
    const std::uint64_t N = pts.size();
    for (std::uint64_t n = 1; n < N; ++n) {
        // Lowest nonzero digit of n: n - b^i shares all other digits.
        std::uint64_t rest = n;
        std::uint64_t step = 1;
        std::size_t i = 0;
        while (rest % b == 0) {
            rest /= b;
            step *= b;
            ++i;
        }
        const std::uint64_t prev = n - step;
        for (std::size_t j = 0; j < pts.dim(); ++j)
            pts.numerator(n, j) =
                ResidueField::digit_add(pts.numerator(prev, j), cols[j][i], b, digits);
    }
}

}  // namespace

PointSet classical_points(const PolyLatticeRule& rule) {
    rule.validate();
    const ResidueField field(rule.modulus);
    PointSet pts(rule.base(), rule.m(), rule.dim(), rule.num_points());
    std::vector<std::vector<std::uint64_t>> cols;
    for (const auto& q : rule.q) cols.push_back(classical_columns(field, q));
    fill_from_columns(pts, cols);
    return pts;
}

DigitFraction interlace_digits(std::span<const DigitFraction> x) {
    if (x.empty()) throw Error("interlacing needs at least one coordinate");
    const unsigned b = x[0].base;
    const int k = x[0].digits;
    std::vector<std::uint64_t> nums;
    for (const auto& v : x) {
        if (v.base != b || v.digits != k)
            throw Error("interlaced coordinates must share base and digit count");
        nums.push_back(v.numerator);
    }
    const int digits = static_cast<int>(x.size()) * k;
    ipow(b, static_cast<unsigned>(digits));
    return {interlace_numerators(nums, b, k), b, digits};
}

PointSet interlaced_points(const InterlacedRule& rule) {
    rule.validate();
    const auto alpha = static_cast<std::size_t>(rule.alpha);
    const int m = rule.base.m();
    const unsigned b = rule.base.base();
    const ResidueField field(rule.base.modulus);
    const std::size_t s = rule.s();
    PointSet pts(b, rule.alpha * m, s, rule.base.num_points());

    std::vector<std::vector<std::uint64_t>> cols(s);
    for (std::size_t j = 0; j < s; ++j) {
        std::vector<std::vector<std::uint64_t>> block;
        for (std::size_t a = 0; a < alpha; ++a)
            block.push_back(classical_columns(field, rule.base.q[j * alpha + a]));
        std::vector<std::uint64_t> x(alpha);
        for (int i = 0; i < m; ++i) {
            for (std::size_t a = 0; a < alpha; ++a) x[a] = block[a][static_cast<std::size_t>(i)];
            cols[j].push_back(interlace_numerators(x, b, m));
        }
    }
    fill_from_columns(pts, cols);
    return pts;
}

std::uint64_t interlace_integer(std::span<const std::uint64_t> l, unsigned b) {
    const auto alpha = l.size();
    std::vector<std::uint64_t> rest(l.begin(), l.end());
    std::uint64_t out = 0;
    std::uint64_t scale = 1;
    bool more = std::any_of(rest.begin(), rest.end(), [](auto v) { return v != 0; });
    while (more) {
        for (std::size_t a = 0; a < alpha; ++a) {
            const std::uint64_t d = rest[a] % b;
            rest[a] /= b;
            if (d != 0) {
                if (scale > (std::numeric_limits<std::uint64_t>::max() - out) / d)
                    throw EnvelopeError("interlaced integer overflows 64 bits");
                out += d * scale;
            }
            more = std::any_of(rest.begin(), rest.end(), [](auto v) { return v != 0; });
            if (!more) break;
            if (scale > std::numeric_limits<std::uint64_t>::max() / b)
                throw EnvelopeError("interlaced integer overflows 64 bits");
            scale *= b;
        }
    }
    return out;
}

std::vector<std::uint64_t> deinterlace_integer(std::uint64_t k, int alpha, unsigned b) {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(alpha), 0);
    std::vector<std::uint64_t> scale(static_cast<std::size_t>(alpha), 1);
    for (std::size_t a = 0; k > 0; a = (a + 1) % out.size()) {
        out[a] += (k % b) * scale[a];
        scale[a] *= b;
        k /= b;
    }
    return out;
}

int mu_alpha(std::uint64_t k, int alpha, unsigned b) {
    std::vector<int> pos;
    for (int a = 1; k > 0; ++a, k /= b)
        if (k % b != 0) pos.push_back(a);
    int sum = 0;
    for (int i = 0; i < alpha && !pos.empty(); ++i) {
        sum += pos.back();
        pos.pop_back();
    }
    return sum;
}

PointSet digital_shift(const PointSet& pts, std::span<const std::uint64_t> sigma) {
    if (sigma.size() != pts.dim()) throw Error("shift dimension mismatch");
    const std::uint64_t limit = ipow(pts.base(), static_cast<unsigned>(pts.digits()));
    for (auto v : sigma)
        if (v >= limit) throw Error("shift numerator exceeds the point precision");
    PointSet out = pts;
    for (std::uint64_t n = 0; n < pts.size(); ++n)
        for (std::size_t j = 0; j < pts.dim(); ++j)
            out.numerator(n, j) = detail::ResidueField::digit_add(pts.numerator(n, j), sigma[j],
                                                                  pts.base(), pts.digits());
    return out;
}

PointSet digital_shift(const PointSet& pts, std::span<const double> sigma, int digits) {
    if (digits < 0) digits = pts.digits();
    if (digits > pts.digits()) throw Error("shift precision exceeds the point precision");
    const std::uint64_t scale = ipow(pts.base(), static_cast<unsigned>(digits));
    const std::uint64_t pad = ipow(pts.base(), static_cast<unsigned>(pts.digits() - digits));
    std::vector<std::uint64_t> num;
    for (double v : sigma) {
        if (!(v >= 0.0 && v < 1.0)) throw Error("shift components must lie in [0,1)");
        auto t = static_cast<std::uint64_t>(std::floor(v * static_cast<double>(scale)));
        num.push_back(std::min(t, scale - 1) * pad);
    }
    return digital_shift(pts, num);
}

bool dual_membership(std::span<const std::uint64_t> k, std::span<const std::size_t> v,
                     std::span<const PolyGF> q, const Modulus& P) {
    if (k.size() != v.size()) throw Error("dual_membership: k and v differ in length");
    const unsigned b = P.base();
    const std::uint64_t N = P.order();
    PolyGF acc(b);
    for (std::size_t i = 0; i < k.size(); ++i) {
        const auto tr = PolyGF::from_encoding(b, k[i] % N);
        if (v[i] >= q.size()) throw Error("dual_membership: coordinate index out of range");
        acc += tr * q[v[i]];
    }
    return poly_mod(acc, P).is_zero();
}

}  // namespace hoqmc
