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

// Residue arithmetic in Z_b[x]/P on integer encodings. This is the hot-path
// counterpart of the PolyGF routines; GF(2) gets a bitmask fast path.

#include <cstdint>
#include <vector>

#include "hoqmc/gf_poly.hpp"

namespace hoqmc::detail {

class ResidueField {
public:
    explicit ResidueField(const Modulus& P);

    unsigned base() const { return b_; }
    int degree() const { return m_; }
    std::uint64_t order() const { return order_; }

    std::uint64_t mul(std::uint64_t a, std::uint64_t c) const;

    /// Numerator over b^m of v_m(r / P) for a reduced residue r.
    std::uint64_t laurent_numerator(std::uint64_t r) const;

    /// Digit-wise addition mod b of two numbers with `digits` base-b places.
    static std::uint64_t digit_add(std::uint64_t x, std::uint64_t y, unsigned b, int digits);

private:
    std::uint64_t mulx(std::uint64_t r) const;

    unsigned b_;
    int m_;
    std::uint64_t order_;
    std::uint64_t p_mask_ = 0;        // GF(2) only: encoding of P
    std::vector<unsigned> p_coeffs_;  // little-endian, length m+1
    unsigned inv_lead_;
};

}  // namespace hoqmc::detail
