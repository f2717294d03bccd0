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

#include "hoqmc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hoqmc {

namespace {

double factorial(int n) {
    if (n > 170) throw EnvelopeError("factorial exceeds double range");
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// 2^{delta(nu,alpha)} beta^nu, the order-nu term of one coordinate.
double order_term(double beta, int nu, int alpha) {
    return (nu == alpha ? 2.0 : 1.0) * std::pow(beta, nu);
}

}  // namespace

// ---- BetaSequence -----------------------------------------------------------

BetaSequence BetaSequence::power(double c, double theta, double p) {
    BetaSequence b;
    b.kind = Kind::Power;
    b.c = c;
    b.theta = theta;
    b.p = p;
    b.validate();
    return b;
}

BetaSequence BetaSequence::list(std::vector<double> values, double p) {
    BetaSequence b;
    b.kind = Kind::List;
    b.values = std::move(values);
    b.p = p;
    b.validate();
    return b;
}

double BetaSequence::operator()(std::size_t j) const {
    if (j == 0) throw Error("beta index is 1-based");
    if (kind == Kind::Power) return c * std::pow(static_cast<double>(j), -theta);
    return j <= values.size() ? values[j - 1] : 0.0;
}

std::vector<double> BetaSequence::first(std::size_t s) const {
    std::vector<double> out(s);
    for (std::size_t j = 1; j <= s; ++j) out[j - 1] = (*this)(j);
    return out;
}

double BetaSequence::total() const {
    if (kind == Kind::List) {
        double sum = 0.0;
        for (double v : values) sum += v;
        return sum;
    }
    if (c == 0.0) return 0.0;
    if (theta <= 1.0) return std::numeric_limits<double>::infinity();
    return c * std::riemann_zeta(theta);
}

void BetaSequence::validate() const {
    if (!(p > 0.0 && p <= 1.0)) throw Error("summability exponent p must lie in (0,1]");
    if (kind == Kind::Power) {
        if (!(c >= 0.0) || !std::isfinite(c)) throw Error("beta scale c must be finite and >= 0");
        if (!(theta > 0.0)) throw Error("beta decay theta must be > 0");
        if (!(theta * p > 1.0)) throw Error("power decay needs theta * p > 1 for p-summability");
        return;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw Error("beta values must be finite and >= 0");
        if (i > 0 && values[i] > values[i - 1]) throw Error("beta values must be non-increasing");
    }
}

const char* to_string(WeightFamily f) { return f == WeightFamily::Spod ? "spod" : "product"; }

WeightFamily parse_weight_family(const std::string& s) {
    if (s == "spod") return WeightFamily::Spod;
    if (s == "product") return WeightFamily::Product;
    throw Error("unknown weight family '" + s + "' (expected spod or product)");
}

// ---- WeightSpec -------------------------------------------------------------

double WeightSpec::block_multiplier() const {
    return c_alpha_b(alpha, b) * std::pow(static_cast<double>(b), alpha * (alpha - 1) / 2.0);
}

double WeightSpec::spod_factor(std::size_t j, int nu) const {
    return block_multiplier() * order_term(beta(j), nu, alpha);
}

double WeightSpec::product_factor(std::size_t j) const {
    return block_multiplier() * product_weight(j, *this);
}

void WeightSpec::validate() const {
    if (!is_prime(b)) throw Error("base b must be prime");
    if (alpha < 2) throw Error("weights need alpha >= 2");
    beta.validate();
}

// ---- constants --------------------------------------------------------------

int choose_alpha(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw Error("summability exponent p must lie in (0,1]");
    return static_cast<int>(std::floor(1.0 / p)) + 1;
}

double c_alpha_b(int alpha, unsigned b) {
    if (alpha < 2) throw Error("C_{alpha,b} needs alpha >= 2");
    if (!is_prime(b)) throw Error("base b must be prime");
    const double bd = b;
    const double two_sin = 2.0 * std::sin(std::numbers::pi / bd);
    double first = 2.0 / std::pow(two_sin, alpha);
    for (int z = 1; z <= alpha - 1; ++z) first = std::max(first, std::pow(two_sin, -z));
    const double middle = std::pow(1.0 + 1.0 / bd + 1.0 / (bd * (bd + 1.0)), alpha - 2);
    const double last = 3.0 + 2.0 / bd + (2.0 * bd + 1.0) / (bd - 1.0);
    return first * middle * last;
}

// ---- weights ----------------------------------------------------------------

double spod_weight(std::span<const std::size_t> u, const WeightSpec& spec) {
    const int alpha = spec.alpha;
    // coef[l] = sum over order vectors with |nu| = l of prod_j 2^delta beta_j^nu_j.
    std::vector<double> coef{1.0};
    for (std::size_t j : u) {
        const double bj = spec.beta(j);
        std::vector<double> next(coef.size() + static_cast<std::size_t>(alpha), 0.0);
        for (std::size_t l = 0; l < coef.size(); ++l) {
            if (coef[l] == 0.0) continue;
            for (int nu = 1; nu <= alpha; ++nu)
                next[l + static_cast<std::size_t>(nu)] += coef[l] * order_term(bj, nu, alpha);
        }
        coef = std::move(next);
    }
    double sum = 0.0;
    for (std::size_t l = 0; l < coef.size(); ++l)
        if (coef[l] != 0.0) sum += factorial(static_cast<int>(l)) * coef[l];
    return sum;
}

double spod_weight_bruteforce(std::span<const std::size_t> u, const WeightSpec& spec) {
    const int alpha = spec.alpha;
    const std::size_t k = u.size();
    std::vector<int> nu(k, 1);
    double sum = 0.0;
    while (true) {
        int total = 0;
        double prod = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
            total += nu[i];
            prod *= order_term(spec.beta(u[i]), nu[i], alpha);
        }
        sum += factorial(total) * prod;
        std::size_t i = 0;
        while (i < k && nu[i] == alpha) nu[i++] = 1;
        if (i == k) break;
        ++nu[i];
    }
    return sum;
}

double product_weight(std::size_t j, const WeightSpec& spec) {
    const double bj = spec.beta(j);
    double sum = 0.0;
    for (int nu = 1; nu <= spec.alpha; ++nu) sum += factorial(nu) * order_term(bj, nu, spec.alpha);
    return sum;
}

double product_set_weight(std::span<const std::size_t> u, const WeightSpec& spec) {
    double prod = 1.0;
    for (std::size_t j : u) prod *= product_weight(j, spec);
    return prod;
}

double weight(std::span<const std::size_t> u, const WeightSpec& spec) {
    return spec.family == WeightFamily::Spod ? spod_weight(u, spec) : product_set_weight(u, spec);
}

std::vector<std::size_t> u_of_v(std::span<const std::size_t> v, int alpha) {
    if (alpha < 1) throw Error("alpha must be >= 1");
    std::vector<std::size_t> u;
    const auto a = static_cast<std::size_t>(alpha);
    for (std::size_t j : v) {
        if (j == 0) throw Error("coordinate indices are 1-based");
        u.push_back((j + a - 1) / a);
    }
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

double tilde_gamma(std::span<const std::size_t> v, const WeightSpec& spec) {
    const auto u = u_of_v(v, spec.alpha);
    if (u.empty()) return 1.0;
    return std::pow(spec.block_multiplier(), static_cast<double>(u.size())) * weight(u, spec);
}

std::vector<std::vector<double>> tilde_gamma_factors(const WeightSpec& spec, std::size_t s) {
    std::vector<std::vector<double>> out(s);
    for (std::size_t j = 1; j <= s; ++j) {
        if (spec.family == WeightFamily::Product) {
            out[j - 1] = {spec.product_factor(j)};
        } else {
            for (int nu = 1; nu <= spec.alpha; ++nu) out[j - 1].push_back(spec.spod_factor(j, nu));
        }
    }
    return out;
}

double smallness_threshold(unsigned b) {
    if (!is_prime(b)) throw Error("base b must be prime");
    const double bd = b;
    const double two_sin = 2.0 * std::sin(std::numbers::pi / bd);
    const double k = std::max(2.0 / (two_sin * two_sin), 1.0 / two_sin);
    return 1.0 / (4.0 * k * (3.0 + 2.0 / bd + (2.0 * bd + 1.0) / (bd - 1.0)) * (2.0 + 1.0 / bd));
}

SmallnessCheck check_smallness(const BetaSequence& beta, unsigned b) {
    SmallnessCheck r;
    r.sum = beta.total();
    r.threshold = smallness_threshold(b);
    r.ok = r.sum < r.threshold;
    return r;
}

}  // namespace hoqmc
