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

#include "hoqmc/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "hoqmc/cbc.hpp"
#include "residue.hpp"

namespace hoqmc {

namespace {

void check_lambda(double lambda, int alpha) {
    if (alpha < 2) throw Error("bounds need alpha >= 2");
    if (!(lambda <= 1.0) || !(lambda * alpha > 1.0))
        throw Error("lambda must lie in (1/alpha, 1]");
}

// (b-1) / (b^{alpha lambda} - b), finite for lambda > 1/alpha.
long double series_factor(double lambda, int alpha, unsigned b) {
    const long double bd = b;
    // b^{alpha lambda} - b = b (b^{alpha lambda - 1} - 1), kept accurate near the pole.
    const long double gap = bd * std::expm1((alpha * static_cast<long double>(lambda) - 1.0L) * std::log(bd));
    if (!(gap > 0.0L)) throw EnvelopeError("lambda too close to 1/alpha");
    return (bd - 1.0L) / gap;
}

long double factorial_pow(int l, double lambda) {
    return std::exp(static_cast<long double>(lambda) * std::lgamma(static_cast<long double>(l) + 1.0L));
}

double finite_or_throw(long double v, const char* what) {
    if (!std::isfinite(static_cast<double>(v))) throw EnvelopeError(std::string(what) + " overflows double range");
    return static_cast<double>(v);
}

}  // namespace

double rho_alpha_b(double lambda, int alpha, unsigned b) {
    check_lambda(lambda, alpha);
    const long double S = series_factor(lambda, alpha, b);
    const long double mult = c_alpha_b(alpha, b) * std::pow(static_cast<long double>(b), alpha * (alpha - 1) / 2.0L);
    const long double rho = std::pow(mult, static_cast<long double>(lambda)) * std::expm1(alpha * std::log1p(S));
    return finite_or_throw(rho, "rho_{alpha,b}");
}

double cbc_bound(double lambda, const WeightSpec& spec, int m, std::size_t s) {
    spec.validate();
    check_lambda(lambda, spec.alpha);
    if (m < 1) throw Error("m must be >= 1");
    const unsigned b = spec.b;
    const long double rho = rho_alpha_b(lambda, spec.alpha, b);
    const long double front = std::log(2.0L) - std::log(std::pow(static_cast<long double>(b), m) - 1.0L);
    const long double lam = lambda;
    if (spec.family == WeightFamily::Product) {
        long double sum = 0.0L;
        for (std::size_t j = 1; j <= s; ++j) sum += std::pow(static_cast<long double>(product_weight(j, spec)), lam);
        return finite_or_throw(std::exp((front + rho * sum) / lam), "product bound");
    }
    // coef[l] = sum over order vectors with |nu| = l of prod_j rho (2^delta beta_j^nu)^lambda.
    const int alpha = spec.alpha;
    std::vector<long double> coef{1.0L};
    for (std::size_t j = 1; j <= s; ++j) {
        const long double bj = spec.beta(j);
        std::vector<long double> next(coef.size() + static_cast<std::size_t>(alpha), 0.0L);
        for (std::size_t l = 0; l < coef.size(); ++l) {
            next[l] += coef[l];
            if (coef[l] == 0.0L || bj == 0.0L) continue;
            for (int nu = 1; nu <= alpha; ++nu) {
                const long double term = (nu == alpha ? 2.0L : 1.0L) * std::pow(bj, nu);
                next[l + static_cast<std::size_t>(nu)] += coef[l] * rho * std::pow(term, lam);
            }
        }
        coef = std::move(next);
    }
    long double sum = 0.0L;
    for (std::size_t l = 1; l < coef.size(); ++l)
        if (coef[l] != 0.0L) sum += factorial_pow(static_cast<int>(l), lambda) * coef[l];
    if (sum == 0.0L) return 0.0;
    return finite_or_throw(std::exp((front + std::log(sum)) / lam), "SPOD bound");
}

double cbc_bound_subsets(double lambda, const WeightSpec& spec, int m, std::size_t s) {
    spec.validate();
    check_lambda(lambda, spec.alpha);
    if (s > 20) throw EnvelopeError("subset bound limited to s <= 20");
    const long double lam = lambda;
    const long double S = series_factor(lambda, spec.alpha, spec.b);
    const long double per_block = std::expm1(spec.alpha * std::log1p(S));
    const long double mult = spec.block_multiplier();
    long double sum = 0.0L;
    if (spec.family == WeightFamily::Product) {
        long double prod = 1.0L;
        for (std::size_t j = 1; j <= s; ++j)
            prod *= 1.0L + std::pow(mult * product_weight(j, spec), lam) * per_block;
        sum = prod - 1.0L;
    } else {
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
            std::vector<std::size_t> u;
            for (std::size_t j = 0; j < s; ++j)
                if ((mask >> j) & 1U) u.push_back(j + 1);
            const long double k = static_cast<long double>(u.size());
            sum += std::pow(std::pow(mult, k) * spod_weight(u, spec), lam) * std::pow(per_block, k);
        }
    }
    const long double N1 = std::pow(static_cast<long double>(spec.b), m) - 1.0L;
    return finite_or_throw(std::pow(2.0L / N1 * sum, 1.0L / lam), "subset bound");
}

std::vector<double> lambda_grid(int alpha, double p, int grid_size) {
    if (grid_size < 3) throw Error("lambda grid needs at least 3 points");
    const double lo = 1.0 / alpha + 1e-3;
    const double hi = 1.0;
    if (!(p >= lo && p <= hi)) throw Error("p must lie in [1/alpha + 1e-3, 1]");
    auto uniform = [&](int count) {
        std::vector<double> g(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
        g.back() = hi;
        return g;
    };
    auto contains = [&](const std::vector<double>& g) {
        return std::any_of(g.begin(), g.end(), [&](double x) { return std::fabs(x - p) < 1e-12; });
    };
    std::vector<double> g = uniform(grid_size - 1);
    if (!contains(g)) {
        g.push_back(p);
    } else {
        g = uniform(grid_size);
        if (!contains(g)) {
            auto it = std::min_element(g.begin() + 1, g.end() - 1, [&](double a, double c) {
                return std::fabs(a - p) < std::fabs(c - p);
            });
            *it = p;
        }
    }
    std::sort(g.begin(), g.end());
    return g;
}

BoundReport optimize_lambda(const WeightSpec& spec, int m, std::size_t s, int grid_size) {
    spec.validate();
    BoundReport r;
    r.b = spec.b;
    r.m = m;
    r.s = s;
    r.alpha = spec.alpha;
    r.p = spec.beta.p;
    r.family = spec.family;
    r.lambdas = lambda_grid(spec.alpha, spec.beta.p, grid_size);
    r.best_bound = std::numeric_limits<double>::infinity();
    for (double lam : r.lambdas) {
        // Near the pole the bound can exceed double range; record it as +inf.
        double v = std::numeric_limits<double>::infinity();
        try {
            v = cbc_bound(lam, spec, m, s);
        } catch (const EnvelopeError&) {
        }
        r.bounds.push_back(v);
        if (v < r.best_bound) {
            r.best_bound = v;
            r.best_lambda = lam;
        }
        if (lam == r.p) r.bound_at_p = v;
    }
    if (r.p == 1.0) r.smallness = check_smallness(spec.beta, spec.b);
    return r;
}

// ---- dual-net sums ----------------------------------------------------------

int mu_one(std::uint64_t l, unsigned b) {
    int digits = 0;
    for (; l > 0; l /= b) ++digits;
    return digits;
}

double dual_series(int alpha, unsigned b) {
    const double bd = b;
    return (bd - 1.0) / (std::pow(bd, alpha) - bd);
}

double dual_tail(int K, int alpha, unsigned b) {
    if (alpha < 2) throw Error("dual series needs alpha >= 2");
    const double bd = b;
    const double r = std::pow(bd, 1 - alpha);
    return (bd - 1.0) / bd * std::pow(r, K + 1) / (1.0 - r);
}

namespace {

// Encodings of t(x) q(x) mod P for every t of degree < m.
std::vector<std::uint64_t> products_with(const PolyGF& q, const Modulus& P) {
    const std::uint64_t N = P.order();
    std::vector<std::uint64_t> out(N);
    for (std::uint64_t t = 0; t < N; ++t)
        out[t] = poly_mulmod(PolyGF::from_encoding(P.base(), t), q, P).encode();
    return out;
}

// Additive inverse of an encoded residue (digit-wise negation mod b).
std::uint64_t negate(std::uint64_t r, unsigned b, int m) {
    if (b == 2) return r;
    std::uint64_t out = 0, scale = 1;
    for (int i = 0; i < m; ++i, r /= b, scale *= b) out += ((b - r % b) % b) * scale;
    return out;
}

constexpr double kEnumerationBudget = 2e8;

}  // namespace

TruncatedSum dual_sum_truncated(std::span<const PolyGF> qv, const Modulus& P, int K, int alpha) {
    if (qv.empty()) throw Error("dual sum needs at least one coordinate");
    if (K < 0) throw Error("digit cutoff K must be >= 0");
    const unsigned b = P.base();
    const int m = P.degree();
    const std::uint64_t N = P.order();
    const std::size_t k = qv.size();
    const double limit = std::pow(static_cast<double>(b), K);
    if (limit > 1e8 || std::pow(static_cast<double>(N), static_cast<double>(k - 1)) > kEnumerationBudget)
        throw EnvelopeError("truncated dual sum too large");
    const auto L = static_cast<std::uint64_t>(limit);

    // grouped[j][r] = sum of b^{-alpha mu_1(l)} over 1 <= l < b^K with tr_m(l) q_j == r.
    std::vector<std::vector<double>> grouped(k, std::vector<double>(N, 0.0));
    for (std::size_t j = 0; j < k; ++j) {
        const auto prod = products_with(qv[j], P);
        for (std::uint64_t l = 1; l < L; ++l)
            grouped[j][prod[l % N]] += std::pow(static_cast<double>(b), -alpha * mu_one(l, b));
    }
    // Sum over residue tuples adding to zero: the last residue is determined.
    long double partial = 0.0L;
    std::function<void(std::size_t, std::uint64_t, long double)> rec =
        [&](std::size_t j, std::uint64_t acc, long double w) {
            if (j + 1 == k) {
                partial += w * grouped[j][negate(acc, b, m)];
                return;
            }
            for (std::uint64_t r = 0; r < N; ++r) {
                if (grouped[j][r] == 0.0) continue;
                rec(j + 1, detail::ResidueField::digit_add(acc, r, b, m), w * grouped[j][r]);
            }
        };
    rec(0, 0, 1.0L);

    const double S = dual_series(alpha, b);
    const double T = dual_tail(K, alpha, b);
    TruncatedSum out;
    out.partial = static_cast<double>(partial);
    out.tail = std::pow(S, static_cast<double>(k)) - std::pow(S - T, static_cast<double>(k));
    return out;
}

TruncatedSum dualnet_wce_truncated(const InterlacedRule& rule, const WeightSpec& spec, int K) {
    rule.validate();
    spec.validate();
    if (spec.alpha != rule.alpha) throw Error("weight spec and rule disagree on alpha");
    const Modulus& P = rule.base.modulus;
    const unsigned b = P.base();
    const int m = P.degree();
    const std::uint64_t N = P.order();
    const std::size_t d = rule.base.dim();
    const int alpha = rule.alpha;
    if (N > 32 || d > 6 || K > m + 4 || K < 0)
        throw EnvelopeError("truncated worst-case error limited to b^m <= 32, alpha s <= 6, K <= m + 4");
    const auto L = ipow(b, static_cast<unsigned>(K));
    double count = 0.0;
    for (std::size_t k = 1; k <= d; ++k)
        count += std::tgamma(d + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(d - k + 1.0)) *
                 std::pow(static_cast<double>(L - 1), static_cast<double>(k));
    if (count > kEnumerationBudget) throw EnvelopeError("truncated worst-case error enumeration too large");

    std::vector<std::vector<std::uint64_t>> prod;
    for (const auto& q : rule.base.q) prod.push_back(products_with(q, P));

    const double C = c_alpha_b(alpha, b);
    const double S = dual_series(alpha, b);
    const double T = dual_tail(K, alpha, b);
    const double shift = std::pow(static_cast<double>(b), alpha * (alpha - 1) / 2.0);
    TruncatedSum out;
    std::vector<std::uint64_t> ell(d, 0);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << d); ++mask) {
        std::vector<std::size_t> v;
        for (std::size_t j = 0; j < d; ++j)
            if ((mask >> j) & 1U) v.push_back(j + 1);
        const auto u = u_of_v(v, alpha);
        const double w = std::pow(C, static_cast<double>(u.size())) * weight(u, spec);
        const double kv = static_cast<double>(v.size());
        out.tail += w * std::pow(shift, static_cast<double>(u.size())) *
                    (std::pow(S, kv) - std::pow(S - T, kv));
        if (L <= 1) continue;

        long double sum = 0.0L;
        std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t acc) {
            if (i == v.size()) {
                if (acc != 0) return;
                int mu = 0;
                for (std::size_t blk = 0; blk < rule.s(); ++blk) {
                    std::span<const std::uint64_t> part(ell.data() + blk * static_cast<std::size_t>(alpha),
                                                        static_cast<std::size_t>(alpha));
                    mu += mu_alpha(interlace_integer(part, b), alpha, b);
                }
                sum += std::pow(static_cast<long double>(b), -mu);
                return;
            }
            const std::size_t j = v[i] - 1;
            for (std::uint64_t l = 1; l < L; ++l) {
                ell[j] = l;
                rec(i + 1, detail::ResidueField::digit_add(acc, prod[j][l % N], b, m));
            }
            ell[j] = 0;
        };
        rec(0, 0);
        out.partial += w * static_cast<double>(sum);
    }
    return out;
}

// ---- Walsh functions --------------------------------------------------------

std::complex<double> walsh_eval(std::uint64_t k, const DigitFraction& y) {
    const unsigned b = y.base;
    std::uint64_t e = 0;
    for (int i = 0; k > 0; ++i, k /= b) e += (k % b) * y.digit(i + 1);
    e %= b;
    if (b == 2) return {e == 0 ? 1.0 : -1.0, 0.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / b);
}

CharacterSums::CharacterSums(const PointSet& pts)
    : b_(pts.base()), digits_(pts.digits()), s_(pts.dim()), n_(pts.size()) {
    if (b_ == 2) {
        if (digits_ > 64) throw EnvelopeError("too many digits for the base-2 character table");
        reversed_.resize(n_ * s_);
        for (std::uint64_t n = 0; n < n_; ++n)
            for (std::size_t j = 0; j < s_; ++j) {
                const std::uint64_t y = pts.numerator(n, j);
                std::uint64_t r = 0;
                for (int i = 0; i < digits_; ++i) r |= ((y >> (digits_ - 1 - i)) & 1U) << i;
                reversed_[n * s_ + j] = r;
            }
        return;
    }
    digits_tab_.resize(n_ * s_ * static_cast<std::size_t>(digits_));
    for (std::uint64_t n = 0; n < n_; ++n)
        for (std::size_t j = 0; j < s_; ++j) {
            const auto y = pts.coord(n, j);
            for (int i = 0; i < digits_; ++i)
                digits_tab_[(n * s_ + j) * static_cast<std::size_t>(digits_) + static_cast<std::size_t>(i)] =
                    static_cast<std::uint8_t>(y.digit(i + 1));
        }
}

std::complex<double> CharacterSums::operator()(std::span<const std::uint64_t> k) const {
    if (k.size() != s_) throw Error("character sum: k has the wrong dimension");
    if (b_ == 2) {
        std::int64_t acc = 0;
        for (std::uint64_t n = 0; n < n_; ++n) {
            unsigned parity = 0;
            for (std::size_t j = 0; j < s_; ++j) parity ^= std::popcount(k[j] & reversed_[n * s_ + j]) & 1U;
            acc += parity ? -1 : 1;
        }
        return {static_cast<double>(acc) / static_cast<double>(n_), 0.0};
    }
    std::vector<unsigned> kd(s_ * static_cast<std::size_t>(digits_), 0);
    for (std::size_t j = 0; j < s_; ++j) {
        std::uint64_t v = k[j];
        for (int i = 0; i < digits_ && v > 0; ++i, v /= b_)
            kd[j * static_cast<std::size_t>(digits_) + static_cast<std::size_t>(i)] = static_cast<unsigned>(v % b_);
    }
    std::vector<std::uint64_t> hist(b_, 0);
    for (std::uint64_t n = 0; n < n_; ++n) {
        unsigned e = 0;
        for (std::size_t j = 0; j < s_; ++j)
            for (int i = 0; i < digits_; ++i) {
                const std::size_t idx = j * static_cast<std::size_t>(digits_) + static_cast<std::size_t>(i);
                e += kd[idx] * digits_tab_[(n * s_ + j) * static_cast<std::size_t>(digits_) + static_cast<std::size_t>(i)];
            }
        ++hist[e % b_];
    }
    std::complex<double> sum = 0.0;
    for (unsigned r = 0; r < b_; ++r)
        if (hist[r] != 0)
            sum += static_cast<double>(hist[r]) * std::polar(1.0, 2.0 * std::numbers::pi * r / b_);
    return sum / static_cast<double>(n_);
}

}  // namespace hoqmc
