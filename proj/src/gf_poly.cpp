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

#include "hoqmc/gf_poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hoqmc {

namespace {

void check_base(unsigned b) {
    if (!is_prime(b)) throw Error("base " + std::to_string(b) + " is not prime");
}

void check_same_base(const PolyGF& a, const PolyGF& b) {
    if (a.base() != b.base())
        throw Error("polynomial base mismatch: " + std::to_string(a.base()) + " vs " +
                    std::to_string(b.base()));
}

}  // namespace

// ---- DigitFraction ---------------------------------------------------------

double DigitFraction::value() const {
    return static_cast<double>(numerator) / std::pow(static_cast<double>(base), digits);
}

unsigned DigitFraction::digit(int i) const {
    if (i < 1 || i > digits) return 0;
    std::uint64_t v = numerator;
    for (int k = digits; k > i; --k) v /= base;
    return static_cast<unsigned>(v % base);
}

int DigitFraction::first_nonzero_digit() const {
    if (numerator == 0) return 0;
    // numerator < base^(digits - a + 1) <=> the first a-1 digits vanish.
    int a = digits;
    std::uint64_t v = numerator;
    while (v >= base) {
        v /= base;
        --a;
    }
    return a;
}

// ---- PolyGF -----------------------------------------------------------------

PolyGF::PolyGF(unsigned base) : base_(base) { check_base(base); }

PolyGF::PolyGF(unsigned base, std::vector<unsigned> coeffs)
    : base_(base), coeffs_(std::move(coeffs)) {
    check_base(base);
    for (auto& c : coeffs_) c %= base_;
    normalize();
}

PolyGF PolyGF::from_encoding(unsigned base, std::uint64_t code) {
    PolyGF p(base);
    while (code > 0) {
        p.coeffs_.push_back(static_cast<unsigned>(code % base));
        code /= base;
    }
    p.normalize();
    return p;
}

PolyGF PolyGF::monomial(unsigned base, int degree, unsigned coeff) {
    std::vector<unsigned> c(static_cast<std::size_t>(degree) + 1, 0U);
    c.back() = coeff;
    return PolyGF(base, std::move(c));
}

std::uint64_t PolyGF::encode() const {
    std::uint64_t code = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (code > (std::numeric_limits<std::uint64_t>::max() - *it) / base_)
            throw EnvelopeError("polynomial encoding overflows 64 bits");
        code = code * base_ + *it;
    }
    return code;
}

int PolyGF::degree() const {
    return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1;
}

PolyGF PolyGF::truncated(int m) const {
    PolyGF r(base_);
    const auto keep = std::min<std::size_t>(coeffs_.size(), static_cast<std::size_t>(std::max(m, 0)));
    r.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(keep));
    r.normalize();
    return r;
}

void PolyGF::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

PolyGF& PolyGF::operator+=(const PolyGF& rhs) {
    check_same_base(*this, rhs);
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0U);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        coeffs_[i] = (coeffs_[i] + rhs.coeffs_[i]) % base_;
    normalize();
    return *this;
}

PolyGF& PolyGF::operator-=(const PolyGF& rhs) {
    check_same_base(*this, rhs);
    if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0U);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        coeffs_[i] = (coeffs_[i] + base_ - rhs.coeffs_[i]) % base_;
    normalize();
    return *this;
}

PolyGF& PolyGF::operator*=(const PolyGF& rhs) {
    check_same_base(*this, rhs);
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<unsigned> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0U);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            out[i + j] = (out[i + j] + coeffs_[i] * rhs.coeffs_[j]) % base_;
    }
    coeffs_ = std::move(out);
    normalize();
    return *this;
}

PolyGF PolyGF::scaled(unsigned c) const {
    PolyGF r = *this;
    for (auto& x : r.coeffs_) x = (x * (c % base_)) % base_;
    r.normalize();
    return r;
}

unsigned inverse_mod(unsigned c, unsigned b) {
    c %= b;
    if (c == 0) throw Error("zero has no inverse");
    for (unsigned x = 1; x < b; ++x)
        if ((c * x) % b == 1) return x;
    throw Error("no inverse; base is not prime");
}

std::pair<PolyGF, PolyGF> divmod(const PolyGF& a, const PolyGF& d) {
    check_same_base(a, d);
    if (d.is_zero()) throw Error("polynomial division by zero");
    const unsigned b = a.base();
    if (a.degree() < d.degree()) return {PolyGF(b), a};

    std::vector<unsigned> rem(a.coeffs().begin(), a.coeffs().end());
    const auto dc = d.coeffs();
    const std::size_t dd = dc.size() - 1;
    const unsigned inv_lead = inverse_mod(dc.back(), b);
    std::vector<unsigned> quot(rem.size() - dd, 0U);
    for (std::size_t k = rem.size(); k-- > dd;) {
        const unsigned t = (rem[k] * inv_lead) % b;
        if (t == 0) continue;
        quot[k - dd] = t;
        for (std::size_t i = 0; i <= dd; ++i)
            rem[k - dd + i] = (rem[k - dd + i] + b - (t * dc[i]) % b) % b;
    }
    rem.resize(dd);
    return {PolyGF(b, std::move(quot)), PolyGF(b, std::move(rem))};
}

PolyGF poly_gcd(PolyGF a, PolyGF b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a.scaled(inverse_mod(a.leading(), a.base()));
    return a;
}

bool is_irreducible(const PolyGF& p) {
    const int m = p.degree();
    if (m < 1) return false;
    if (m == 1) return true;
    const unsigned b = p.base();
    // Ben-Or: p is irreducible iff gcd(x^{b^i} - x, p) = 1 for i <= m/2.
    const PolyGF x = PolyGF::monomial(b, 1);
    PolyGF h = x;
    for (int i = 1; i <= m / 2; ++i) {
        PolyGF acc = PolyGF::monomial(b, 0);
        PolyGF base_pow = h;
        for (unsigned e = b; e > 0; e >>= 1) {
            if (e & 1U) acc = divmod(acc * base_pow, p).second;
            base_pow = divmod(base_pow * base_pow, p).second;
        }
        h = acc;
        if (poly_gcd(h - x, p).degree() != 0) return false;
    }
    return true;
}

// ---- Modulus ----------------------------------------------------------------

Modulus::Modulus(PolyGF p) : poly_(std::move(p)) {
    if (poly_.degree() < 1) throw Error("modulus must have degree >= 1");
    if (!is_irreducible(poly_))
        throw Error("modulus with encoding " + std::to_string(poly_.encode()) +
                    " is not irreducible over Z_" + std::to_string(poly_.base()));
}

std::uint64_t Modulus::order() const {
    return ipow(base(), static_cast<unsigned>(degree()));
}

PolyGF poly_mod(const PolyGF& a, const Modulus& P) { return divmod(a, P.poly()).second; }

PolyGF poly_mulmod(const PolyGF& a, const PolyGF& c, const Modulus& P) {
    check_same_base(a, c);
    check_same_base(a, P.poly());
    return poly_mod(poly_mod(a, P) * poly_mod(c, P), P);
}

PolyGF poly_powmod(PolyGF a, std::uint64_t e, const Modulus& P) {
    PolyGF acc = poly_mod(PolyGF::monomial(P.base(), 0), P);
    a = poly_mod(a, P);
    while (e > 0) {
        if (e & 1U) acc = poly_mulmod(acc, a, P);
        a = poly_mulmod(a, a, P);
        e >>= 1;
    }
    return acc;
}

Modulus find_irreducible(unsigned b, int m) {
    check_base(b);
    if (m < 1) throw Error("modulus degree must be >= 1");
    const std::uint64_t lo = ipow(b, static_cast<unsigned>(m));
    const std::uint64_t hi = ipow(b, static_cast<unsigned>(m) + 1);
    for (std::uint64_t code = lo; code < hi; ++code) {
        auto p = PolyGF::from_encoding(b, code);
        if (is_irreducible(p)) return Modulus(std::move(p));
    }
    throw Error("no irreducible polynomial found");  // unreachable for prime b
}

DigitFraction v_m_map(const PolyGF& n, const PolyGF& q, const Modulus& P, int m) {
    if (q.is_zero()) throw Error("generating polynomial must be nonzero");
    if (m != P.degree()) throw Error("digit count must equal the modulus degree");
    if (q.degree() >= m) throw Error("generating polynomial degree must be < m");
    const unsigned b = P.base();
    // Only n*q mod P contributes negative powers of x.
    PolyGF r = poly_mulmod(n, q, P);
    std::vector<unsigned> rem(static_cast<std::size_t>(m) + 1, 0U);
    for (int i = 0; i < m; ++i) rem[static_cast<std::size_t>(i)] = r.coeff(static_cast<std::size_t>(i));
    const auto pc = P.poly().coeffs();
    const unsigned inv_lead = inverse_mod(pc.back(), b);

    DigitFraction out{0, b, m};
    for (int l = 1; l <= m; ++l) {
        // rem <- rem * x; t_l = coefficient of x^m / lead(P); rem -= t_l P.
        for (std::size_t i = static_cast<std::size_t>(m); i > 0; --i) rem[i] = rem[i - 1];
        rem[0] = 0;
        const unsigned t = (rem[static_cast<std::size_t>(m)] * inv_lead) % b;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(m); ++i)
            rem[i] = (rem[i] + b - (t * pc[i]) % b) % b;
        out.numerator = out.numerator * b + t;
    }
    return out;
}

PolyGF group_generator(const Modulus& P) {
    const unsigned b = P.base();
    const std::uint64_t group_order = P.order() - 1;
    const auto factors = prime_factors(group_order);
    const PolyGF one = PolyGF::monomial(b, 0);
    for (std::uint64_t code = 1; code < P.order(); ++code) {
        const auto g = PolyGF::from_encoding(b, code);
        bool ok = true;
        for (auto l : factors) {
            if (poly_powmod(g, group_order / l, P) == one) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw Error("no generator found");  // unreachable for irreducible P
}

std::vector<std::uint64_t> discrete_log_permutation(const Modulus& P, const PolyGF& g) {
    const std::uint64_t N = P.order();
    std::vector<std::uint64_t> log(N, std::numeric_limits<std::uint64_t>::max());
    PolyGF cur = PolyGF::monomial(P.base(), 0);
    for (std::uint64_t k = 0; k + 1 < N; ++k) {
        const auto code = cur.encode();
        if (log[code] != std::numeric_limits<std::uint64_t>::max())
            throw Error("element is not a generator of the multiplicative group");
        log[code] = k;
        cur = poly_mulmod(cur, g, P);
    }
    return log;
}

}  // namespace hoqmc
