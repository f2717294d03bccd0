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

#include "hoqmc/cbc.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <mutex>
#include <string>

#include "residue.hpp"

namespace hoqmc {

// ---- omega kernel -----------------------------------------------------------

long double omega_from_position(int a, int alpha, unsigned b) {
    if (alpha < 2) throw Error("the omega kernel needs alpha >= 2");
    const long double bd = b;
    const long double ba = std::pow(bd, alpha);
    const long double base = (bd - 1.0L) / (ba - bd);
    if (a == 0) return base;
    return base - std::pow(bd, -static_cast<long double>(a) * (alpha - 1)) * (ba - 1.0L) / (ba - bd);
}

long double omega_kernel(const DigitFraction& y, int alpha) {
    return omega_from_position(y.first_nonzero_digit(), alpha, y.base);
}

// ---- FFT convolution --------------------------------------------------------

namespace {

std::mutex& planner_mutex() {
    static std::mutex mu;
    return mu;
}

template <class R>
struct Fftw;

template <>
struct Fftw<double> {
    using plan = fftw_plan;
    using cplx = fftw_complex;
    static plan r2c(int n, double* in, cplx* out, unsigned f) { return fftw_plan_dft_r2c_1d(n, in, out, f); }
    static plan c2r(int n, cplx* in, double* out, unsigned f) { return fftw_plan_dft_c2r_1d(n, in, out, f); }
    static void exec_r2c(plan p, double* in, cplx* out) { fftw_execute_dft_r2c(p, in, out); }
    static void exec_c2r(plan p, cplx* in, double* out) { fftw_execute_dft_c2r(p, in, out); }
    static void destroy(plan p) { fftw_destroy_plan(p); }
};

template <>
struct Fftw<long double> {
    using plan = fftwl_plan;
    using cplx = fftwl_complex;
    static plan r2c(int n, long double* in, cplx* out, unsigned f) { return fftwl_plan_dft_r2c_1d(n, in, out, f); }
    static plan c2r(int n, cplx* in, long double* out, unsigned f) { return fftwl_plan_dft_c2r_1d(n, in, out, f); }
    static void exec_r2c(plan p, long double* in, cplx* out) { fftwl_execute_dft_r2c(p, in, out); }
    static void exec_c2r(plan p, cplx* in, long double* out) { fftwl_execute_dft_c2r(p, in, out); }
    static void destroy(plan p) { fftwl_destroy_plan(p); }
};

// Circular convolution with a fixed kernel of length n.
template <class R>
class Convolver {
public:
    using F = Fftw<R>;

    explicit Convolver(std::span<const long double> kernel) : n_(static_cast<int>(kernel.size())) {
        if (kernel.size() > static_cast<std::size_t>(std::numeric_limits<int>::max()))
            throw EnvelopeError("FFT length exceeds the supported range");
        std::vector<R> in(kernel.begin(), kernel.end());
        std::vector<std::complex<R>> out(spectrum_size());
        {
            std::lock_guard lock(planner_mutex());
            const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
            fwd_ = F::r2c(n_, in.data(), as_fftw(out.data()), flags);
            bwd_ = F::c2r(n_, as_fftw(out.data()), in.data(), flags);
        }
        if (fwd_ == nullptr || bwd_ == nullptr) throw Error("FFTW planning failed");
        F::exec_r2c(fwd_, in.data(), as_fftw(out.data()));
        kernel_hat_ = std::move(out);
    }

    ~Convolver() {
        std::lock_guard lock(planner_mutex());
        if (fwd_ != nullptr) F::destroy(fwd_);
        if (bwd_ != nullptr) F::destroy(bwd_);
    }

    Convolver(const Convolver&) = delete;
    Convolver& operator=(const Convolver&) = delete;

    /// out = kernel (*) z; z is clobbered.
    void convolve(std::vector<R>& z, std::vector<R>& out) const {
        std::vector<std::complex<R>> spec(spectrum_size());
        F::exec_r2c(fwd_, z.data(), as_fftw(spec.data()));
        for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= kernel_hat_[k];
        out.resize(static_cast<std::size_t>(n_));
        F::exec_c2r(bwd_, as_fftw(spec.data()), out.data());
        const R scale = R(1) / static_cast<R>(n_);
        for (auto& v : out) v *= scale;
    }

private:
    static typename F::cplx* as_fftw(std::complex<R>* p) {
        return reinterpret_cast<typename F::cplx*>(p);
    }
    std::size_t spectrum_size() const { return static_cast<std::size_t>(n_) / 2 + 1; }

    int n_;
    typename F::plan fwd_ = nullptr;
    typename F::plan bwd_ = nullptr;
    std::vector<std::complex<R>> kernel_hat_;
};

}  // namespace

struct OmegaColumn::Transforms {
    explicit Transforms(std::span<const long double> column) : dbl(column), ext(column) {}
    Convolver<double> dbl;
    Convolver<long double> ext;
};

// ---- OmegaColumn ------------------------------------------------------------

OmegaColumn::OmegaColumn(const Modulus& P, int alpha)
    : modulus_(P), alpha_(alpha), order_(P.order()), generator_(group_generator(P)),
      omega_zero_(omega_from_position(0, alpha, P.base())) {
    const detail::ResidueField field(P);
    const std::uint64_t M = order_ - 1;
    const int m = P.degree();
    const unsigned b = P.base();
    log_.assign(order_, std::numeric_limits<std::uint64_t>::max());
    exp_.resize(M);
    column_.resize(M);
    const std::uint64_t g = generator_.encode();
    std::uint64_t cur = 1;
    for (std::uint64_t k = 0; k < M; ++k) {
        exp_[k] = cur;
        log_[cur] = k;
        const DigitFraction y{field.laurent_numerator(cur), b, m};
        column_[k] = omega_from_position(y.first_nonzero_digit(), alpha, b);
        cur = field.mul(cur, g);
    }
    fft_ = std::make_unique<Transforms>(column_);
}

OmegaColumn::~OmegaColumn() = default;
OmegaColumn::OmegaColumn(OmegaColumn&&) noexcept = default;
OmegaColumn& OmegaColumn::operator=(OmegaColumn&&) noexcept = default;

long double OmegaColumn::entry(std::uint64_t n, std::uint64_t q) const {
    if (n == 0 || q == 0 || n >= order_ || q >= order_) throw Error("Omega indices must be nonzero residues");
    return column_[(log_[n] + log_[q]) % length()];
}

void OmegaColumn::omega_row(std::uint64_t q, std::span<long double> out) const {
    if (q == 0 || q >= order_) throw Error("candidate must be a nonzero residue");
    if (out.size() != order_) throw Error("omega_row: output length must be b^m");
    const std::uint64_t M = length();
    const std::uint64_t lq = log_[q];
    out[0] = omega_zero_;
    for (std::uint64_t n = 1; n < order_; ++n) {
        std::uint64_t k = log_[n] + lq;
        if (k >= M) k -= M;
        out[n] = column_[k];
    }
}

namespace {

template <class R>
void apply_impl(const OmegaColumn& col, const Convolver<R>& conv, std::span<const R> x,
                std::span<R> out) {
    const std::uint64_t N = col.length() + 1;
    if (x.size() != N || out.size() != N) throw Error("Omega product: vectors must have length b^m");
    const std::uint64_t M = col.length();
    // z~(a) = x(g^{-a}) turns the correlation over the group into a convolution.
    std::vector<R> z(M);
    for (std::uint64_t a = 0; a < M; ++a) z[a] = x[col.exp(a == 0 ? 0 : M - a)];
    std::vector<R> res;
    conv.convolve(z, res);
    out[0] = R(0);
    for (std::uint64_t j = 0; j < M; ++j) out[col.exp(j)] = res[j];
}

}  // namespace

void OmegaColumn::apply(std::span<const long double> x, std::span<long double> out) const {
    apply_impl<long double>(*this, fft_->ext, x, out);
}

void OmegaColumn::apply(std::span<const double> x, std::span<double> out) const {
    apply_impl<double>(*this, fft_->dbl, x, out);
}

std::vector<double> rader_matvec(const OmegaColumn& col, std::span<const double> v) {
    const std::uint64_t M = col.length();
    if (v.size() != M) throw Error("rader_matvec: vector length must be b^m - 1");
    std::vector<double> x(M + 1, 0.0), out(M + 1);
    std::copy(v.begin(), v.end(), x.begin() + 1);
    col.apply(std::span<const double>(x), std::span<double>(out));
    return {out.begin() + 1, out.end()};
}

std::vector<double> direct_matvec(const OmegaColumn& col, std::span<const double> v) {
    const std::uint64_t M = col.length();
    if (v.size() != M) throw Error("direct_matvec: vector length must be b^m - 1");
    std::vector<double> out(M);
    for (std::uint64_t q = 1; q <= M; ++q) {
        long double acc = 0.0L;
        for (std::uint64_t n = 1; n <= M; ++n) acc += col.entry(n, q) * v[n - 1];
        out[q - 1] = static_cast<double>(acc);
    }
    return out;
}

// ---- CbcResult --------------------------------------------------------------

InterlacedRule CbcResult::rule() const { return InterlacedRule{alpha, PolyLatticeRule{modulus, q}}; }

// ---- fast engines -----------------------------------------------------------

namespace {

using Real = long double;

struct EngineSpec {
    int block = 1;                       // coordinates per block
    std::size_t blocks = 0;
    bool spod = false;
    std::vector<std::vector<double>> factors;  // per block
    std::span<const std::uint64_t> forced;     // optional fixed generating vector
};

struct EngineOut {
    std::vector<std::uint64_t> q;
    std::vector<double> trace;
    double invariant_residual = 0.0;
};

std::uint64_t pick_candidate(std::span<const Real> e) {
    Real best = e[1];
    for (std::size_t q = 2; q < e.size(); ++q) best = std::min(best, e[q]);
    const Real limit = best + static_cast<Real>(kTieTolerance) * std::fabs(best);
    for (std::size_t q = 1; q < e.size(); ++q)
        if (e[q] <= limit) return q;
    return 1;  // unreachable
}

double relative_gap(Real a, Real b) {
    const Real scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0 ? 0.0 : static_cast<double>(std::fabs(a - b) / scale);
}

class Engine {
public:
    Engine(const OmegaColumn& col, const EngineSpec& es)
        : col_(col), es_(es), N_(col.length() + 1), e_(N_), conv_(N_), row_(N_) {}

    EngineOut run() {
        return es_.spod ? run_spod() : run_product();
    }

private:
    // One CBC component: x holds the weighted state for every point, `scale`
    // multiplies the criterion increment. Updates V in place.
    void step(std::vector<Real>& x, Real scale, std::vector<Real>& V) {
        col_.apply(std::span<const Real>(x), std::span<Real>(conv_));
        const Real inv_n = Real(1) / static_cast<Real>(N_);
        const Real zero_term = col_.omega_zero() * x[0];
        for (std::uint64_t q = 1; q < N_; ++q) e_[q] = e_prev_ + scale * (zero_term + conv_[q]) * inv_n;
        const std::size_t d = out_.q.size();
        std::uint64_t q;
        if (!es_.forced.empty()) {
            q = es_.forced[d];
            if (q == 0 || q >= N_) throw Error("generating vector entry out of range");
        } else {
            q = d == 0 ? 1 : pick_candidate(e_);
        }
        e_prev_ = e_[q];
        out_.q.push_back(q);
        out_.trace.push_back(static_cast<double>(e_prev_));
        col_.omega_row(q, row_);
        for (std::uint64_t n = 0; n < N_; ++n) V[n] *= Real(1) + row_[n];
    }

    EngineOut run_spod() {
        const int alpha = es_.block;
        const std::size_t L = static_cast<std::size_t>(alpha) * es_.blocks;
        std::vector<std::vector<Real>> U(L + 1), X(L + 1);
        U[0].assign(N_, Real(1));
        for (std::size_t l = 1; l <= L; ++l) U[l].assign(N_, Real(0));
        std::vector<Real> V(N_), W(N_), x(N_);

        for (std::size_t s = 1; s <= es_.blocks; ++s) {
            const auto& gamma = es_.factors[s - 1];
            const std::size_t top = static_cast<std::size_t>(alpha) * s;
            std::fill(W.begin(), W.end(), Real(0));
            for (std::size_t l = 1; l <= top; ++l) {
                X[l].assign(N_, Real(0));
                const int nu_max = static_cast<int>(std::min<std::size_t>(alpha, l));
                Real ratio = 1;  // l! / (l - nu)!, built as a running product
                for (int nu = 1; nu <= nu_max; ++nu) {
                    ratio *= static_cast<Real>(l - static_cast<std::size_t>(nu) + 1);
                    const Real f = static_cast<Real>(gamma[static_cast<std::size_t>(nu - 1)]) * ratio;
                    const auto& src = U[l - static_cast<std::size_t>(nu)];
                    for (std::uint64_t n = 0; n < N_; ++n) X[l][n] += f * src[n];
                }
                for (std::uint64_t n = 0; n < N_; ++n) W[n] += X[l][n];
            }
            std::fill(V.begin(), V.end(), Real(1));
            for (int t = 1; t <= alpha; ++t) {
                for (std::uint64_t n = 0; n < N_; ++n) x[n] = V[n] * W[n];
                step(x, Real(1), V);
            }
            Real total = 0;
            for (std::size_t l = 1; l <= top; ++l)
                for (std::uint64_t n = 0; n < N_; ++n) {
                    U[l][n] += (V[n] - Real(1)) * X[l][n];
                    total += U[l][n];
                }
            out_.invariant_residual = std::max(
                out_.invariant_residual, relative_gap(total / static_cast<Real>(N_), e_prev_));
        }
        return std::move(out_);
    }

    EngineOut run_product() {
        std::vector<Real> V(N_), Y(N_, Real(1)), x(N_);
        for (std::size_t s = 1; s <= es_.blocks; ++s) {
            const Real gamma = static_cast<Real>(es_.factors[s - 1].at(0));
            std::fill(V.begin(), V.end(), Real(1));
            for (int t = 1; t <= es_.block; ++t) {
                for (std::uint64_t n = 0; n < N_; ++n) x[n] = V[n] * Y[n];
                step(x, gamma, V);
            }
            Real total = 0;
            for (std::uint64_t n = 0; n < N_; ++n) {
                Y[n] *= Real(1) + gamma * (V[n] - Real(1));
                total += Y[n];
            }
            out_.invariant_residual = std::max(
                out_.invariant_residual,
                relative_gap(total / static_cast<Real>(N_) - Real(1), e_prev_));
        }
        return std::move(out_);
    }

    const OmegaColumn& col_;
    const EngineSpec& es_;
    std::uint64_t N_;
    std::vector<Real> e_, conv_, row_;
    Real e_prev_ = 0;
    EngineOut out_;
};

void check_envelope(const WeightSpec& spec, std::size_t s) {
    spec.validate();
    if (s == 0) throw Error("dimension s must be >= 1");
    if (static_cast<std::size_t>(spec.alpha) * s > 120)
        throw EnvelopeError("alpha * s exceeds 120, the double-precision factorial envelope");
}

CbcResult finish(const Modulus& P, int alpha, EngineOut out, const WeightSpec& spec,
                 std::chrono::steady_clock::time_point start) {
    CbcResult r{P, alpha, {}, std::move(out.trace), spec};
    for (auto code : out.q) r.q.push_back(PolyGF::from_encoding(P.base(), code));
    r.invariant_residual = out.invariant_residual;
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

EngineSpec engine_spec(const WeightSpec& spec, std::size_t s) {
    EngineSpec es;
    es.block = spec.alpha;
    es.blocks = s;
    es.spod = spec.family == WeightFamily::Spod;
    es.factors = tilde_gamma_factors(spec, s);
    return es;
}

}  // namespace

CbcResult cbc_spod(const Modulus& P, std::size_t s, const WeightSpec& spec) {
    if (spec.family != WeightFamily::Spod) throw Error("cbc_spod needs SPOD weights");
    return cbc_construct(P, s, spec);
}

CbcResult cbc_spod(unsigned b, int m, std::size_t s, const WeightSpec& spec) {
    return cbc_spod(find_irreducible(b, m), s, spec);
}

CbcResult cbc_product(const Modulus& P, std::size_t s, const WeightSpec& spec) {
    if (spec.family != WeightFamily::Product) throw Error("cbc_product needs product weights");
    return cbc_construct(P, s, spec);
}

CbcResult cbc_product(unsigned b, int m, std::size_t s, const WeightSpec& spec) {
    return cbc_product(find_irreducible(b, m), s, spec);
}

CbcResult cbc_construct(const Modulus& P, std::size_t s, const WeightSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    check_envelope(spec, s);
    if (spec.b != P.base()) throw Error("weight spec base differs from the modulus base");
    const OmegaColumn col(P, spec.alpha);
    const EngineSpec es = engine_spec(spec, s);
    return finish(P, spec.alpha, Engine(col, es).run(), spec, start);
}

CbcResult cbc_product_classical(const Modulus& P, std::size_t s, const WeightSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    check_envelope(spec, s);
    if (spec.b != P.base()) throw Error("weight spec base differs from the modulus base");
    const OmegaColumn col(P, spec.alpha);
    EngineSpec es;
    es.block = 1;
    es.blocks = s;
    es.spod = false;
    for (std::size_t j = 1; j <= s; ++j) es.factors.push_back({spec.product_factor(j)});
    WeightSpec echo = spec;
    echo.family = WeightFamily::Product;
    return finish(P, 1, Engine(col, es).run(), echo, start);
}

std::vector<double> criterion_trace(const Modulus& P, std::span<const PolyGF> q,
                                    const WeightSpec& spec) {
    const auto alpha = static_cast<std::size_t>(spec.alpha);
    if (q.empty() || q.size() % alpha != 0)
        throw Error("generating vector length must be a positive multiple of alpha");
    const std::size_t s = q.size() / alpha;
    check_envelope(spec, s);
    PolyLatticeRule{P, {q.begin(), q.end()}}.validate();
    std::vector<std::uint64_t> codes;
    for (const auto& p : q) codes.push_back(p.encode());
    const OmegaColumn col(P, spec.alpha);
    EngineSpec es = engine_spec(spec, s);
    es.forced = codes;
    return Engine(col, es).run().trace;
}

// ---- naive oracle -----------------------------------------------------------

TildeGammaTable::TildeGammaTable(std::size_t d, std::vector<double> by_mask)
    : d_(d), by_mask_(std::move(by_mask)) {
    if (d > 20) throw EnvelopeError("gamma table dimension too large");
    if (by_mask_.size() != (std::size_t{1} << d)) throw Error("gamma table must have 2^d entries");
}

TildeGammaTable TildeGammaTable::from_spec(const WeightSpec& spec, std::size_t d) {
    if (d > 16) throw EnvelopeError("gamma table dimension too large");
    const std::uint64_t size = std::uint64_t{1} << d;
    std::vector<double> table(size, 0.0);
    const double mult = spec.block_multiplier();
    std::vector<double> by_u;  // cache over block subsets
    const std::size_t blocks = (d + static_cast<std::size_t>(spec.alpha) - 1) / static_cast<std::size_t>(spec.alpha);
    by_u.assign(std::size_t{1} << blocks, -1.0);
    for (std::uint64_t mask = 1; mask < size; ++mask) {
        std::vector<std::size_t> v;
        for (std::size_t j = 0; j < d; ++j)
            if ((mask >> j) & 1U) v.push_back(j + 1);
        const auto u = u_of_v(v, spec.alpha);
        std::uint64_t umask = 0;
        for (auto k : u) umask |= std::uint64_t{1} << (k - 1);
        if (by_u[umask] < 0.0) {
            const double w = spec.family == WeightFamily::Spod ? spod_weight_bruteforce(u, spec)
                                                               : product_set_weight(u, spec);
            by_u[umask] = std::pow(mult, static_cast<double>(u.size())) * w;
        }
        table[mask] = by_u[umask];
    }
    return TildeGammaTable(d, std::move(table));
}

TildeGammaTable TildeGammaTable::prefix(std::size_t d) const {
    if (d > d_) throw Error("prefix longer than the table");
    return TildeGammaTable(d, {by_mask_.begin(), by_mask_.begin() + (std::ptrdiff_t{1} << d)});
}

namespace {

void check_oracle_scale(const Modulus& P, std::size_t d) {
    if (P.order() > 1024) throw EnvelopeError("naive oracle limited to b^m <= 2^10");
    if (d > 12) throw EnvelopeError("naive oracle limited to d <= 12");
}

// E_d from omega values omega[j][n] (j < d, n < N), by direct enumeration
// of all nonempty v.
long double naive_sum(const std::vector<std::vector<long double>>& omega, const TildeGammaTable& gamma) {
    const std::size_t d = omega.size();
    const std::size_t N = omega.front().size();
    const std::uint64_t size = std::uint64_t{1} << d;
    std::vector<long double> prod(size);
    long double total = 0.0L;
    for (std::size_t n = 0; n < N; ++n) {
        prod[0] = 1.0L;
        for (std::uint64_t mask = 1; mask < size; ++mask) {
            const int low = std::countr_zero(mask);
            prod[mask] = prod[mask & (mask - 1)] * omega[static_cast<std::size_t>(low)][n];
            total += static_cast<long double>(gamma[mask]) * prod[mask];
        }
    }
    return total / static_cast<long double>(N);
}

// omega(v_m(n q / P)) for n = 0..N-1, straight from the Laurent expansion.
std::vector<long double> omega_values(const Modulus& P, const PolyGF& q, int alpha) {
    const std::uint64_t N = P.order();
    std::vector<long double> out(N);
    for (std::uint64_t n = 0; n < N; ++n) {
        const auto y = v_m_map(PolyGF::from_encoding(P.base(), n), q, P, P.degree());
        out[n] = omega_kernel(y, alpha);
    }
    return out;
}

}  // namespace

long double criterion_naive(const Modulus& P, std::span<const PolyGF> q,
                            const TildeGammaTable& gamma, int kernel_alpha) {
    check_oracle_scale(P, q.size());
    if (q.empty()) return 0.0L;
    if (gamma.dim() < q.size()) throw Error("gamma table smaller than the generating vector");
    std::vector<std::vector<long double>> omega;
    for (const auto& p : q) omega.push_back(omega_values(P, p, kernel_alpha));
    return naive_sum(omega, gamma.prefix(q.size()));
}

CbcResult cbc_naive(const Modulus& P, const TildeGammaTable& gamma, int kernel_alpha,
                    int interlace_alpha) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t d = gamma.dim();
    check_oracle_scale(P, d);
    const std::uint64_t N = P.order();
    const unsigned b = P.base();
    std::vector<std::vector<long double>> by_candidate(N);
    for (std::uint64_t c = 1; c < N; ++c)
        by_candidate[c] = omega_values(P, PolyGF::from_encoding(b, c), kernel_alpha);

    std::vector<std::vector<long double>> chosen;
    std::vector<double> trace;
    std::vector<PolyGF> q;
    for (std::size_t k = 1; k <= d; ++k) {
        const auto g = gamma.prefix(k);
        std::vector<long double> e(N, 0.0L);
        for (std::uint64_t c = 1; c < N; ++c) {
            chosen.push_back(by_candidate[c]);
            e[c] = naive_sum(chosen, g);
            chosen.pop_back();
        }
        const std::uint64_t best = pick_candidate(e);
        chosen.push_back(by_candidate[best]);
        q.push_back(PolyGF::from_encoding(b, best));
        trace.push_back(static_cast<double>(e[best]));
    }
    CbcResult r{P, interlace_alpha, std::move(q), std::move(trace), WeightSpec{}};
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

CbcResult cbc_naive(const Modulus& P, std::size_t s, const WeightSpec& spec) {
    spec.validate();
    const std::size_t d = static_cast<std::size_t>(spec.alpha) * s;
    check_oracle_scale(P, d);
    auto r = cbc_naive(P, TildeGammaTable::from_spec(spec, d), spec.alpha, spec.alpha);
    r.spec = spec;
    return r;
}

}  // namespace hoqmc
