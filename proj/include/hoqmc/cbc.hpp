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
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hoqmc/gf_poly.hpp"
#include "hoqmc/pointgen.hpp"
#include "hoqmc/weights.hpp"

namespace hoqmc {

/// omega for a coordinate whose first nonzero base-b digit sits at 1-based
/// position a; a = 0 encodes y = 0.
long double omega_from_position(int a, int alpha, unsigned b);
long double omega_kernel(const DigitFraction& y, int alpha);

/// The matrix Omega(n, q) = omega(v_m(n q / P)) over nonzero residues,
/// stored as its first column in discrete-log order together with the
/// transform needed for the circulant product.
class OmegaColumn {
public:
    OmegaColumn(const Modulus& P, int alpha);
    ~OmegaColumn();
    OmegaColumn(OmegaColumn&&) noexcept;
    OmegaColumn& operator=(OmegaColumn&&) noexcept;

    const Modulus& modulus() const { return modulus_; }
    int alpha() const { return alpha_; }
    unsigned base() const { return modulus_.base(); }
    int m() const { return modulus_.degree(); }
    /// b^m - 1, the order of the multiplicative group.
    std::uint64_t length() const { return order_ - 1; }

    const PolyGF& generator() const { return generator_; }
    /// log_g of a nonzero residue encoding.
    std::uint64_t log(std::uint64_t r) const { return log_[r]; }
    /// Encoding of g^k.
    std::uint64_t exp(std::uint64_t k) const { return exp_[k]; }
    /// omega(v_m(g^k / P)) for k = 0..length()-1.
    std::span<const long double> column() const { return column_; }
    long double omega_zero() const { return omega_zero_; }

    /// Omega(n, q) for nonzero residue encodings n, q.
    long double entry(std::uint64_t n, std::uint64_t q) const;
    /// omega(v_m(n q / P)) for n = 0..b^m-1 (n = 0 gives omega(0)).
    void omega_row(std::uint64_t q, std::span<long double> out) const;

    /// out[q] = sum_{n=1}^{b^m-1} Omega(n, q) x[n] for q = 1..b^m-1. Both
    /// spans have length b^m and are indexed by residue encoding; slot 0 of x
    /// is ignored and out[0] is set to 0.
    void apply(std::span<const long double> x, std::span<long double> out) const;
    void apply(std::span<const double> x, std::span<double> out) const;

private:
    struct Transforms;

    Modulus modulus_;
    int alpha_;
    std::uint64_t order_;
    PolyGF generator_;
    std::vector<std::uint64_t> log_;
    std::vector<std::uint64_t> exp_;
    std::vector<long double> column_;
    long double omega_zero_;
    std::unique_ptr<Transforms> fft_;
};

/// Omega v through the FFT; v and the result have length b^m - 1 and are
/// indexed by residue encoding minus one.
std::vector<double> rader_matvec(const OmegaColumn& col, std::span<const double> v);
/// The same product by direct O(N^2) summation.
std::vector<double> direct_matvec(const OmegaColumn& col, std::span<const double> v);

/// Output of a CBC construction.
struct CbcResult {
    Modulus modulus;
    int alpha = 1;               // interlacing factor of the rule
    std::vector<PolyGF> q;       // generating vector, length alpha * s
    std::vector<double> e_trace; // criterion after each component
    WeightSpec spec;
    double wall_time = 0.0;      // seconds
    /// Largest relative gap between the running criterion and the state
    /// vector identity checked at block boundaries (fast engines only).
    double invariant_residual = 0.0;

    unsigned base() const { return modulus.base(); }
    int m() const { return modulus.degree(); }
    std::size_t s() const { return q.size() / static_cast<std::size_t>(alpha); }
    double criterion() const { return e_trace.empty() ? 0.0 : e_trace.back(); }
    InterlacedRule rule() const;
};

/// Relative tolerance under which two criterion values count as tied; ties
/// go to the smallest polynomial encoding.
inline constexpr double kTieTolerance = 1e-11;

/// Fast CBC for SPOD weights.
CbcResult cbc_spod(const Modulus& P, std::size_t s, const WeightSpec& spec);
CbcResult cbc_spod(unsigned b, int m, std::size_t s, const WeightSpec& spec);
/// Fast CBC for product weights.
CbcResult cbc_product(const Modulus& P, std::size_t s, const WeightSpec& spec);
CbcResult cbc_product(unsigned b, int m, std::size_t s, const WeightSpec& spec);
/// Dispatch on spec.family.
CbcResult cbc_construct(const Modulus& P, std::size_t s, const WeightSpec& spec);

/// Non-interlaced rule in s dimensions built with the product engine, one
/// coordinate per block and the order-spec.alpha kernel with the spec's
/// product factors.
CbcResult cbc_product_classical(const Modulus& P, std::size_t s, const WeightSpec& spec);

/// Criterion trace of a given generating vector, computed with the fast
/// engine of the spec's family. q must have length alpha * s.
std::vector<double> criterion_trace(const Modulus& P, std::span<const PolyGF> q,
                                    const WeightSpec& spec);

/// gamma tilde_v for every nonempty v in {1..d}, indexed by bitmask (bit j-1
/// set iff j in v).
class TildeGammaTable {
public:
    TildeGammaTable(std::size_t d, std::vector<double> by_mask);
    /// Build from a spec for d = alpha * s coordinates by brute-force order
    /// enumeration.
    static TildeGammaTable from_spec(const WeightSpec& spec, std::size_t d);

    std::size_t dim() const { return d_; }
    double operator[](std::uint64_t mask) const { return by_mask_[mask]; }
    /// The table restricted to the first d' coordinates.
    TildeGammaTable prefix(std::size_t d) const;

private:
    std::size_t d_;
    std::vector<double> by_mask_;
};

/// E_d(q) by direct enumeration over points and subsets. Oracle scale only:
/// b^m <= 2^10 and d <= 12, otherwise EnvelopeError.
long double criterion_naive(const Modulus& P, std::span<const PolyGF> q,
                            const TildeGammaTable& gamma, int kernel_alpha);

/// CBC by brute-force minimisation of criterion_naive.
CbcResult cbc_naive(const Modulus& P, std::size_t s, const WeightSpec& spec);
/// Variant with an explicit gamma tilde table over d coordinates.
CbcResult cbc_naive(const Modulus& P, const TildeGammaTable& gamma, int kernel_alpha,
                    int interlace_alpha);

}  // namespace hoqmc
