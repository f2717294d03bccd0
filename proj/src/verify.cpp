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

#include "hoqmc/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <sstream>

#include "hoqmc/bounds.hpp"
#include "residue.hpp"

namespace hoqmc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string describe(const GridCase& c) {
    std::ostringstream os;
    os << "b=" << c.b << " m=" << c.m << " alpha=" << c.alpha << " s=" << c.s << " "
       << to_string(c.family);
    return os.str();
}

std::string describe(const CbcResult& r) {
    std::ostringstream os;
    os << "b=" << r.base() << " m=" << r.m() << " alpha=" << r.alpha << " q=(";
    for (std::size_t i = 0; i < r.q.size(); ++i) os << (i ? "," : "") << r.q[i].encode();
    os << ")";
    return os.str();
}

// Distinct generating vectors only.
std::vector<const CbcResult*> unique_rules(const std::vector<CbcResult>& rules) {
    std::map<std::vector<std::uint64_t>, const CbcResult*> seen;
    for (const auto& r : rules) {
        std::vector<std::uint64_t> key{r.base(), r.modulus.poly().encode(),
                                       static_cast<std::uint64_t>(r.alpha)};
        for (const auto& q : r.q) key.push_back(q.encode());
        seen.emplace(key, &r);
    }
    std::vector<const CbcResult*> out;
    for (const auto& [k, r] : seen) out.push_back(r);
    return out;
}

}  // namespace

void SuiteResult::record(bool pass, const std::string& what) {
    ++total;
    if (pass) {
        ++passed;
    } else if (failures.size() < 10) {
        failures.push_back(what);
    }
}

BetaSequence grid_beta(int alpha) {
    if (alpha <= 2) return BetaSequence::power(0.5, 2.0, 0.6);
    std::vector<double> values;
    for (int j = 1; j <= 12; ++j) values.push_back(0.5 / (j * j));
    return BetaSequence::list(values, 1.0 / alpha + 1.0 / 15.0);
}

WeightSpec grid_spec(const GridCase& c) { return {c.family, c.b, c.alpha, grid_beta(c.alpha)}; }

std::vector<GridCase> make_grid(const std::vector<unsigned>& bases, int m_min, int m_max,
                                const std::vector<int>& alphas, std::size_t s_max) {
    std::vector<GridCase> out;
    for (unsigned b : bases)
        for (int m = m_min; m <= m_max; ++m)
            for (int alpha : alphas)
                for (std::size_t s = 1; s <= s_max; ++s)
                    for (auto f : {WeightFamily::Spod, WeightFamily::Product})
                        out.push_back({b, m, alpha, s, f});
    return out;
}

// ---- fast vs naive CBC ----------------------------------------------------------

SuiteResult suite_cbc_equivalence(const std::vector<GridCase>& grid, double rel_tol) {
    const auto t0 = Clock::now();
    SuiteResult res;
    res.name = "cbc-fast-vs-naive";
    for (const auto& c : grid) {
        const Modulus P = find_irreducible(c.b, c.m);
        const WeightSpec spec = grid_spec(c);
        const CbcResult fast = cbc_construct(P, c.s, spec);
        const CbcResult slow = cbc_naive(P, c.s, spec);
        bool ok = fast.q == slow.q && fast.e_trace.size() == slow.e_trace.size();
        double worst = 0.0;
        for (std::size_t i = 0; ok && i < fast.e_trace.size(); ++i) {
            const double rel = std::abs(fast.e_trace[i] - slow.e_trace[i]) / std::abs(slow.e_trace[i]);
            worst = std::max(worst, rel);
        }
        ok = ok && worst <= rel_tol;
        std::ostringstream what;
        what << describe(c) << ": vectors " << (fast.q == slow.q ? "equal" : "differ")
             << ", max rel diff " << worst;
        res.record(ok, what.str());
    }
    res.seconds = seconds_since(t0);
    return res;
}

// ---- Rader ----------------------------------------------------------------------

SuiteResult suite_rader(unsigned b, int m_min, int m_max, int vectors, std::uint64_t seed,
                        double rel_tol) {
    const auto t0 = Clock::now();
    SuiteResult res;
    res.name = "rader-vs-direct";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int m = m_min; m <= m_max; ++m) {
        const OmegaColumn col(find_irreducible(b, m), 2);
        std::vector<double> v(col.length());
        for (int t = 0; t < vectors; ++t) {
            for (auto& x : v) x = dist(rng);
            const auto fast = rader_matvec(col, v);
            const auto slow = direct_matvec(col, v);
            double diff = 0.0, scale = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                diff = std::max(diff, std::abs(fast[i] - slow[i]));
                scale = std::max(scale, std::abs(slow[i]));
            }
            const double rel = scale > 0.0 ? diff / scale : diff;
            std::ostringstream what;
            what << "b=" << b << " m=" << m << " vector " << t << ": rel " << rel;
            res.record(rel <= rel_tol, what.str());
        }
    }
    res.seconds = seconds_since(t0);
    return res;
}

// ---- character sums ---------------------------------------------------------------

namespace {

// Exponents <l, y_j^(n)> mod b for every class l < b^m and point n, for one
// coordinate of a classical point set with m digits.
std::vector<std::vector<std::uint8_t>> exponent_table(const PointSet& pts, std::size_t j) {
    const unsigned b = pts.base();
    const int m = pts.digits();
    const std::uint64_t N = pts.size();
    const std::uint64_t L = ipow(b, static_cast<unsigned>(m));
    std::vector<std::vector<std::uint8_t>> tab(L, std::vector<std::uint8_t>(N));
    for (std::uint64_t n = 0; n < N; ++n) {
        const DigitFraction y = pts.coord(n, j);
        for (std::uint64_t l = 0; l < L; ++l) {
            unsigned e = 0;
            std::uint64_t rest = l;
            for (int i = 0; i < m; ++i, rest /= b) e += static_cast<unsigned>(rest % b) * y.digit(i + 1);
            tab[l][n] = static_cast<std::uint8_t>(e % b);
        }
    }
    return tab;
}

struct ClassCheck {
    SuiteResult* res;
    std::string label;
    unsigned b;
    std::uint64_t N;
    std::size_t d;
    std::vector<std::vector<std::uint64_t>> prod;  // tr(l) q_j mod P
    std::vector<std::uint64_t> add;                // residue addition table N x N
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::string first_failure;

    void leaf(std::complex<double> S, std::uint64_t residue) {
        const bool member = residue == 0;
        const double dev = member ? std::norm(S - 1.0) : std::norm(S);
        ++checked;
        if (dev > 1e-24) [[unlikely]]
            fail(S, member);
    }
    void leaf(double S, std::uint64_t residue) {
        const bool member = residue == 0;
        const double dev = member ? std::abs(S - 1.0) : std::abs(S);
        ++checked;
        if (dev > 1e-12) [[unlikely]]
            fail(S, member);
    }
    void fail(std::complex<double> S, bool member) {
        if (failed++ > 0) return;
        std::ostringstream os;
        os << label << ": sum " << S.real() << "+" << S.imag() << "i, member " << member;
        first_failure = os.str();
    }
};

// b = 2: exponent vectors are bit masks over the N <= 64 points.
void dfs_b2(ClassCheck& cc, const std::vector<std::vector<std::uint64_t>>& masks, std::size_t j,
            std::uint64_t e, std::uint64_t r) {
    const auto& mj = masks[j];
    const auto& pj = cc.prod[j];
    if (j + 1 == cc.d) {
        const double N = static_cast<double>(cc.N);
        for (std::size_t l = 0; l < mj.size(); ++l) {
            const std::uint64_t ee = e ^ mj[l];
            const double S = (N - 2.0 * std::popcount(ee)) / N;
            cc.leaf(S, r ^ pj[l]);
        }
        return;
    }
    for (std::size_t l = 0; l < mj.size(); ++l) dfs_b2(cc, masks, j + 1, e ^ mj[l], r ^ pj[l]);
}

// b = 3: one-hot bit planes (value 1, value 2) over the N <= 64 points.
struct Trits {
    std::uint64_t one = 0, two = 0;
};

inline Trits add3(Trits a, Trits c, std::uint64_t all) {
    const std::uint64_t a0 = all & ~(a.one | a.two);
    const std::uint64_t c0 = all & ~(c.one | c.two);
    return {(a0 & c.one) | (a.one & c0) | (a.two & c.two),
            (a0 & c.two) | (a.two & c0) | (a.one & c.one)};
}

void dfs_b3(ClassCheck& cc, const std::vector<std::vector<Trits>>& planes, std::size_t j, Trits e,
            std::uint64_t r, std::uint64_t all) {
    const auto& tj = planes[j];
    const auto& pj = cc.prod[j];
    const std::uint64_t N = cc.N;
    if (j + 1 == cc.d) {
        const double h = std::sqrt(3.0) / 2.0;
        for (std::size_t l = 0; l < tj.size(); ++l) {
            const Trits t = add3(e, tj[l], all);
            const int c1 = std::popcount(t.one), c2 = std::popcount(t.two);
            const int c0 = static_cast<int>(N) - c1 - c2;
            const std::complex<double> S((c0 - 0.5 * (c1 + c2)) / N, h * (c1 - c2) / N);
            cc.leaf(S, cc.add[r * N + pj[l]]);
        }
        return;
    }
    for (std::size_t l = 0; l < tj.size(); ++l)
        dfs_b3(cc, planes, j + 1, add3(e, tj[l], all), cc.add[r * N + pj[l]], all);
}

// Any prime b: explicit exponent vectors and histograms.
void dfs_generic(ClassCheck& cc, const std::vector<std::vector<std::vector<std::uint8_t>>>& tabs,
                 std::size_t j, const std::vector<std::uint8_t>& e, std::uint64_t r) {
    const auto& tj = tabs[j];
    const unsigned b = cc.b;
    const std::uint64_t N = cc.N;
    std::vector<std::uint8_t> next(e.size());
    for (std::size_t l = 0; l < tj.size(); ++l) {
        for (std::size_t n = 0; n < e.size(); ++n) next[n] = static_cast<std::uint8_t>((e[n] + tj[l][n]) % b);
        const std::uint64_t rr = cc.add[r * N + cc.prod[j][l]];
        if (j + 1 < cc.d) {
            dfs_generic(cc, tabs, j + 1, next, rr);
            continue;
        }
        std::complex<double> S = 0.0;
        for (auto v : next) S += std::polar(1.0, 2.0 * M_PI * v / b);
        cc.leaf(S / static_cast<double>(N), rr);
    }
}

}  // namespace

SuiteResult suite_character_sums(const std::vector<CbcResult>& rules, int samples,
                                 std::uint64_t seed) {
    const auto t0 = Clock::now();
    SuiteResult res;
    res.name = "character-sums";
    std::mt19937_64 rng(seed);
    for (const CbcResult* rp : unique_rules(rules)) {
        const CbcResult& rule = *rp;
        const unsigned b = rule.base();
        const int m = rule.m();
        const std::uint64_t N = rule.modulus.order();
        if (N > 64) throw EnvelopeError("character-sum suite needs b^m <= 64");
        const PolyLatticeRule classical = rule.rule().base;
        const PointSet pts = classical_points(classical);
        const std::size_t d = classical.dim();
        const detail::ResidueField field(rule.modulus);

        ClassCheck cc{&res, describe(rule), b, N, d, {}, {}, 0, 0, {}};
        bool tables_ok = true;
        for (std::size_t j = 0; j < d; ++j) {
            std::vector<std::uint64_t> p(N);
            for (std::uint64_t l = 0; l < N; ++l) {
                p[l] = field.mul(l, classical.q[j].encode());
                // Independent path through polynomial arithmetic.
                const auto ref = poly_mulmod(PolyGF::from_encoding(b, l), classical.q[j], rule.modulus);
                tables_ok = tables_ok && ref.encode() == p[l];
            }
            cc.prod.push_back(std::move(p));
        }
        res.record(tables_ok, describe(rule) + ": residue product table");
        cc.add.resize(N * N);
        for (std::uint64_t x = 0; x < N; ++x)
            for (std::uint64_t y = 0; y < N; ++y)
                cc.add[x * N + y] = detail::ResidueField::digit_add(x, y, b, m);

        std::vector<std::vector<std::vector<std::uint8_t>>> tabs;
        for (std::size_t j = 0; j < d; ++j) tabs.push_back(exponent_table(pts, j));

        if (b == 2) {
            std::vector<std::vector<std::uint64_t>> masks(d, std::vector<std::uint64_t>(N, 0));
            for (std::size_t j = 0; j < d; ++j)
                for (std::uint64_t l = 0; l < N; ++l)
                    for (std::uint64_t n = 0; n < N; ++n)
                        masks[j][l] |= static_cast<std::uint64_t>(tabs[j][l][n]) << n;
            dfs_b2(cc, masks, 0, 0, 0);
        } else if (b == 3) {
            const std::uint64_t all = N == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << N) - 1;
            std::vector<std::vector<Trits>> planes(d, std::vector<Trits>(N));
            for (std::size_t j = 0; j < d; ++j)
                for (std::uint64_t l = 0; l < N; ++l)
                    for (std::uint64_t n = 0; n < N; ++n) {
                        if (tabs[j][l][n] == 1) planes[j][l].one |= std::uint64_t{1} << n;
                        if (tabs[j][l][n] == 2) planes[j][l].two |= std::uint64_t{1} << n;
                    }
            dfs_b3(cc, planes, 0, Trits{}, 0, all);
        } else {
            if (std::pow(static_cast<double>(N), static_cast<double>(d)) > 1 << 24)
                throw EnvelopeError("character-sum suite: exhaustive enumeration too large");
            dfs_generic(cc, tabs, 0, std::vector<std::uint8_t>(N, 0), 0);
        }
        {
            std::ostringstream what;
            what << cc.label << ": " << cc.failed << " of " << cc.checked
                 << " classes mismatched; first: " << cc.first_failure;
            res.record(cc.failed == 0 && cc.checked > 0, what.str());
        }

        // Full-range vectors (components below b^{2m}) through the generic
        // character sum and dual_membership, half of them dual members.
        const CharacterSums sums(pts);
        const std::uint64_t high = N;  // multiplier range for the upper digits
        std::uniform_int_distribution<std::uint64_t> low(0, N - 1), up(0, high - 1);
        std::vector<std::size_t> all_v(d);
        for (std::size_t j = 0; j < d; ++j) all_v[j] = j;
        std::vector<std::uint64_t> k(d);
        for (int t = 0; t < samples; ++t) {
            for (auto& x : k) x = low(rng) + N * up(rng);
            if (t % 2 == 1) {
                std::uint64_t acc = 0;
                for (std::size_t j = 0; j + 1 < d; ++j) acc = cc.add[acc * N + cc.prod[j][k[j] % N]];
                // Solve prod[d-1][l] + acc == 0.
                for (std::uint64_t l = 0; l < N; ++l)
                    if (cc.add[acc * N + cc.prod[d - 1][l]] == 0) {
                        k[d - 1] = l + N * up(rng);
                        break;
                    }
            }
            const bool member = dual_membership(k, all_v, classical.q, rule.modulus);
            const auto S = sums(k);
            const bool ok = member ? std::abs(S - 1.0) <= 1e-12 : std::abs(S) <= 1e-12;
            std::ostringstream what;
            what << describe(rule) << ": sampled vector " << t << " sum " << std::abs(S)
                 << " member " << member;
            res.record(ok, what.str());
        }
    }
    res.seconds = seconds_since(t0);
    return res;
}

SuiteResult suite_character_sums_points(const InterlacedRule& rule, const PointSet& pts,
                                        int samples, std::uint64_t seed) {
    const auto t0 = Clock::now();
    SuiteResult res;
    res.name = "character-sums";
    rule.validate();
    const unsigned b = rule.base.base();
    const std::uint64_t N = rule.base.num_points();
    const auto alpha = static_cast<std::size_t>(rule.alpha);
    const std::size_t d = rule.base.dim();
    const std::size_t s = rule.s();
    if (pts.dim() != s || pts.base() != b || pts.size() != N)
        throw Error("point set does not match the generating vector's shape");

    const CharacterSums sums(pts);
    std::vector<std::size_t> all_v(d);
    for (std::size_t j = 0; j < d; ++j) all_v[j] = j;
    std::vector<std::uint64_t> l(d), k(s);

    auto check = [&](const std::string& label) {
        for (std::size_t j = 0; j < s; ++j)
            k[j] = interlace_integer(std::span<const std::uint64_t>(l).subspan(j * alpha, alpha), b);
        const bool member = dual_membership(l, all_v, rule.base.q, rule.base.modulus);
        const auto S = sums(k);
        const bool ok = member ? std::abs(S - 1.0) <= 1e-12 : std::abs(S) <= 1e-12;
        std::ostringstream what;
        what << label << ": |sum| " << std::abs(S) << ", dual member " << member;
        res.record(ok, what.str());
    };

    const double classes = std::pow(static_cast<double>(N), static_cast<double>(d));
    if (classes <= 65536.0) {
        const auto total = static_cast<std::uint64_t>(classes);
        for (std::uint64_t c = 0; c < total; ++c) {
            std::uint64_t rest = c;
            for (std::size_t j = 0; j < d; ++j, rest /= N) l[j] = rest % N;
            check("class " + std::to_string(c));
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::uint64_t> dist(0, N - 1);
        const detail::ResidueField field(rule.base.modulus);
        for (int t = 0; t < samples; ++t) {
            for (auto& x : l) x = dist(rng);
            if (t % 2 == 1) {
                std::uint64_t acc = 0;
                for (std::size_t j = 0; j + 1 < d; ++j)
                    acc = detail::ResidueField::digit_add(acc, field.mul(l[j], rule.base.q[j].encode()),
                                                          b, rule.base.m());
                for (std::uint64_t x = 0; x < N; ++x)
                    if (detail::ResidueField::digit_add(acc, field.mul(x, rule.base.q[d - 1].encode()), b,
                                                        rule.base.m()) == 0) {
                        l[d - 1] = x;
                        break;
                    }
            }
            check("sample " + std::to_string(t));
        }
    }
    res.seconds = seconds_since(t0);
    return res;
}

// ---- kernel identity ----------------------------------------------------------------

SuiteResult suite_kernel_identity(const std::vector<CbcResult>& rules) {
    const auto t0 = Clock::now();
    SuiteResult res;
    res.name = "kernel-identity";
    for (const CbcResult* rp : unique_rules(rules)) {
        const CbcResult& rule = *rp;
        const int m = rule.m();
        const int alpha = rule.alpha;
        const PolyLatticeRule classical = rule.rule().base;
        const PointSet pts = classical_points(classical);
        const std::size_t d = classical.dim();
        const std::uint64_t N = pts.size();
        const int K = m + 4;

        std::vector<std::vector<long double>> om(d, std::vector<long double>(N));
        for (std::size_t j = 0; j < d; ++j)
            for (std::uint64_t n = 0; n < N; ++n) om[j][n] = omega_kernel(pts.coord(n, j), alpha);

        auto check = [&](const std::vector<std::size_t>& v) {
            long double ker = 0.0L;
            for (std::uint64_t n = 0; n < N; ++n) {
                long double p = 1.0L;
                for (auto j : v) p *= om[j][n];
                ker += p;
            }
            ker /= static_cast<long double>(N);
            std::vector<PolyGF> qv;
            for (auto j : v) qv.push_back(classical.q[j]);
            const auto t = dual_sum_truncated(qv, rule.modulus, K, alpha);
            const double k = static_cast<double>(ker);
            const bool ok = k >= t.partial * (1.0 - 1e-12) && k <= (t.partial + t.tail) * (1.0 + 1e-12);
            std::ostringstream what;
            what << describe(rule) << " v={";
            for (std::size_t i = 0; i < v.size(); ++i) what << (i ? "," : "") << v[i] + 1;
            what << "}: kernel " << k << " not in [" << t.partial << ", " << t.partial + t.tail << "]";
            res.record(ok, what.str());
        };
        for (std::size_t i = 0; i < d; ++i) {
            check({i});
            for (std::size_t j = i + 1; j < d; ++j) check({i, j});
        }

        // Truncated worst-case error never exceeds the CBC criterion.
        for (int Kw = m + 1; Kw >= m; --Kw) {
            try {
                const auto w = dualnet_wce_truncated(rule.rule(), rule.spec, Kw);
                std::ostringstream what;
                what << describe(rule) << ": truncated wce " << w.partial << " above criterion "
                     << rule.criterion();
                res.record(w.partial <= rule.criterion() * (1.0 + 1e-12), what.str());
                break;
            } catch (const EnvelopeError&) {
            }
        }
    }
    res.seconds = seconds_since(t0);
    return res;
}

// ---- interlacing inequality -----------------------------------------------------------

SuiteResult suite_mu_inequality(unsigned b, const std::vector<int>& alphas, int digits) {
    const auto t0 = Clock::now();
    SuiteResult res;
    res.name = "mu-inequality";
    const std::uint64_t L = ipow(b, static_cast<unsigned>(digits));
    for (int alpha : alphas) {
        const auto a = static_cast<std::size_t>(alpha);
        const double total = std::pow(static_cast<double>(L), alpha);
        if (total > 1e8) throw EnvelopeError("mu-inequality suite too large");
        std::vector<std::uint64_t> z(a);
        std::uint64_t failed = 0, checked = 0;
        std::string first;
        for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(total); ++c) {
            std::uint64_t rest = c;
            int sum1 = 0;
            for (std::size_t j = 0; j < a; ++j, rest /= L) {
                z[j] = rest % L;
                sum1 += mu_one(z[j], b);
            }
            const int lhs = mu_alpha(interlace_integer(z, b), alpha, b);
            const int rhs = alpha * sum1 - alpha * (alpha - 1) / 2;
            ++checked;
            if (lhs < rhs && failed++ == 0) first = "z index " + std::to_string(c);
        }
        res.record(failed == 0, "alpha=" + std::to_string(alpha) + ": " + std::to_string(failed) +
                                    " of " + std::to_string(checked) + " fail, first " + first);
    }
    // alpha = 1: interlacing is the identity and mu_1 is the digit count.
    std::uint64_t bad = 0;
    for (std::uint64_t z = 0; z < L; ++z) {
        const std::uint64_t one[1] = {z};
        if (interlace_integer(one, b) != z || mu_alpha(z, 1, b) != mu_one(z, b)) ++bad;
    }
    res.record(bad == 0, "alpha=1 identity: " + std::to_string(bad) + " mismatches");
    res.seconds = seconds_since(t0);
    return res;
}

}  // namespace hoqmc
