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

#include "residue.hpp"

#include <array>

namespace hoqmc::detail {

namespace {

constexpr int kMaxDigits = 64;

void decode(std::uint64_t code, unsigned b, int n, unsigned* out) {
    for (int i = 0; i < n; ++i) {
        out[i] = static_cast<unsigned>(code % b);
        code /= b;
    }
}

std::uint64_t encode(const unsigned* d, unsigned b, int n) {
    std::uint64_t code = 0;
    for (int i = n; i-- > 0;) code = code * b + d[i];
    return code;
}

}  // namespace

ResidueField::ResidueField(const Modulus& P)
    : b_(P.base()), m_(P.degree()), order_(P.order()),
      p_coeffs_(P.poly().coeffs().begin(), P.poly().coeffs().end()),
      inv_lead_(inverse_mod(P.poly().leading(), P.base())) {
    if (m_ >= kMaxDigits) throw EnvelopeError("modulus degree too large");
    if (b_ == 2) p_mask_ = P.poly().encode();
}

std::uint64_t ResidueField::mulx(std::uint64_t r) const {
    if (b_ == 2) {
        r <<= 1;
        if ((r >> m_) & 1U) r ^= p_mask_;
        return r;
    }
    std::array<unsigned, kMaxDigits + 1> d{};
    decode(r, b_, m_, d.data() + 1);
    // d now holds r*x with coefficient of x^m at index m.
    const unsigned t = (d[static_cast<std::size_t>(m_)] * inv_lead_) % b_;
    for (int i = 0; i < m_; ++i)
        d[static_cast<std::size_t>(i)] =
            (d[static_cast<std::size_t>(i)] + b_ - (t * p_coeffs_[static_cast<std::size_t>(i)]) % b_) % b_;
    return encode(d.data(), b_, m_);
}

std::uint64_t ResidueField::mul(std::uint64_t a, std::uint64_t c) const {
    // Horner over the coefficients of c, most significant first.
    std::array<unsigned, kMaxDigits> cd{};
    decode(c, b_, m_, cd.data());
    std::uint64_t acc = 0;
    for (int i = m_; i-- > 0;) {
        acc = mulx(acc);
        const unsigned ci = cd[static_cast<std::size_t>(i)];
        if (ci == 0) continue;
        if (b_ == 2) {
            acc ^= a;
        } else {
            for (unsigned k = 0; k < ci; ++k) acc = digit_add(acc, a, b_, m_);
        }
    }
    return acc;
}

std::uint64_t ResidueField::laurent_numerator(std::uint64_t r) const {
    std::uint64_t out = 0;
    if (b_ == 2) {
        std::uint64_t rem = r;
        for (int l = 0; l < m_; ++l) {
            rem <<= 1;
            const std::uint64_t t = (rem >> m_) & 1U;
            if (t) rem ^= p_mask_;
            out = (out << 1) | t;
        }
        return out;
    }
    std::array<unsigned, kMaxDigits + 1> rem{};
    decode(r, b_, m_, rem.data());
    const auto m = static_cast<std::size_t>(m_);
    for (int l = 0; l < m_; ++l) {
        for (std::size_t i = m; i > 0; --i) rem[i] = rem[i - 1];
        rem[0] = 0;
        const unsigned t = (rem[m] * inv_lead_) % b_;
        for (std::size_t i = 0; i <= m; ++i) rem[i] = (rem[i] + b_ - (t * p_coeffs_[i]) % b_) % b_;
        out = out * b_ + t;
    }
    return out;
}

std::uint64_t ResidueField::digit_add(std::uint64_t x, std::uint64_t y, unsigned b, int digits) {
    if (b == 2) return x ^ y;
    std::uint64_t out = 0;
    std::uint64_t scale = 1;
    for (int i = 0; i < digits; ++i) {
        out += ((x % b + y % b) % b) * scale;
        x /= b;
        y /= b;
        scale *= b;
    }
    return out;
}

}  // namespace hoqmc::detail
