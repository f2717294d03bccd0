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

#include "hoqmc/integrands.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

#include "hoqmc/cbc.hpp"

namespace hoqmc {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double denominator(const ParametricModel& model, std::span<const double> y) {
    double d = model.a0;
    for (std::size_t j = 0; j < model.a.size(); ++j) d += model.a[j] * (y[j] - 0.5);
    return d;
}

void check_dim(std::size_t want, std::size_t got, const char* what) {
    if (want != got)
        throw Error(std::string(what) + ": expected " + std::to_string(want) +
                    " coordinates, got " + std::to_string(got));
}

}  // namespace

// ---- model ------------------------------------------------------------------

ParametricModel ParametricModel::from_beta(std::span<const double> beta, double a0, double f,
                                           double G) {
    const double total = std::accumulate(beta.begin(), beta.end(), 0.0);
    ParametricModel m;
    m.a0 = a0;
    m.f = f;
    m.G = G;
    for (double b : beta) m.a.push_back(a0 * b / (1.0 + total / 2.0));
    return m;
}

double ParametricModel::kappa() const {
    double s = 0.0;
    for (double v : a) s += std::abs(v);
    return s / a0;
}

double ParametricModel::min_denominator() const { return a0 * (1.0 - kappa() / 2.0); }

double ParametricModel::c() const { return G * f / min_denominator(); }

std::vector<double> ParametricModel::beta() const {
    const double d = min_denominator();
    std::vector<double> out;
    for (double v : a) out.push_back(std::abs(v) / d);
    return out;
}

void ParametricModel::validate() const {
    if (!(a0 > 0.0)) throw Error("model: a0 must be positive");
    if (!(kappa() < 2.0)) throw Error("model: sum |a_j| must be below 2 a0");
}

double model_solution(const ParametricModel& model, std::span<const double> y) {
    check_dim(model.dim(), y.size(), "model_solution");
    const double d = denominator(model, y);
    if (!(d > 0.0)) throw Error("model_solution: non-positive denominator");
    return model.G * model.f / d;
}

double model_derivative(const ParametricModel& model, std::span<const double> y,
                        std::span<const int> nu) {
    check_dim(model.dim(), nu.size(), "model_derivative");
    const double d = denominator(model, y);
    if (!(d > 0.0)) throw Error("model_derivative: non-positive denominator");
    int order = 0;
    double prod = 1.0;
    for (std::size_t j = 0; j < nu.size(); ++j) {
        if (nu[j] < 0) throw Error("model_derivative: negative order");
        order += nu[j];
        prod *= std::pow(model.a[j], nu[j]);
    }
    const double sign = order % 2 == 0 ? 1.0 : -1.0;
    return sign * factorial(order) * model.G * model.f * prod / std::pow(d, order + 1);
}

namespace {

struct Stencil {
    std::vector<int> offset;
    std::vector<double> weight;
};

// Second-order central stencils for derivatives of order 1, 2 and 3, in
// units of h (divide by h^order).
const Stencil& central_stencil(int order) {
    static const Stencil s1{{-1, 1}, {-0.5, 0.5}};
    static const Stencil s2{{-1, 0, 1}, {1.0, -2.0, 1.0}};
    static const Stencil s3{{-2, -1, 1, 2}, {-0.5, 1.0, -1.0, 0.5}};
    switch (order) {
        case 1: return s1;
        case 2: return s2;
        case 3: return s3;
        default: throw Error("finite differences support orders 1..3 per coordinate");
    }
}

double fd_tensor(const ParametricModel& model, std::span<const double> y, std::span<const int> nu,
                 std::span<const double> h) {
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < nu.size(); ++j)
        if (nu[j] > 0) active.push_back(j);
    std::vector<double> z(y.begin(), y.end());
    const double num = model.G * model.f;

    // Walk the tensor product of the active stencils.
    std::vector<std::size_t> idx(active.size(), 0);
    double sum = 0.0;
    while (true) {
        double w = 1.0;
        for (std::size_t k = 0; k < active.size(); ++k) {
            const std::size_t j = active[k];
            const auto& st = central_stencil(nu[j]);
            z[j] = y[j] + st.offset[idx[k]] * h[j];
            w *= st.weight[idx[k]];
        }
        sum += w * num / denominator(model, z);
        std::size_t k = 0;
        for (; k < active.size(); ++k) {
            if (++idx[k] < central_stencil(nu[active[k]]).offset.size()) break;
            idx[k] = 0;
        }
        if (k == active.size()) break;
    }
    for (std::size_t j : active) sum /= std::pow(h[j], nu[j]);
    return sum;
}

}  // namespace

double model_derivative_fd(const ParametricModel& model, std::span<const double> y,
                           std::span<const int> nu) {
    check_dim(model.dim(), nu.size(), "model_derivative_fd");
    const int order = std::accumulate(nu.begin(), nu.end(), 0);
    if (order > 3) throw Error("model_derivative_fd: |nu| must be at most 3");
    if (order == 0) return model_solution(model, y);
    const double d = denominator(model, y);
    std::vector<double> h(nu.size()), h2(nu.size());
    for (std::size_t j = 0; j < nu.size(); ++j) {
        h[j] = model.a[j] != 0.0 ? 0.02 * d / std::abs(model.a[j]) : 0.1;
        h2[j] = h[j] / 2.0;
    }
    const double coarse = fd_tensor(model, y, nu, h);
    const double fine = fd_tensor(model, y, nu, h2);
    return (4.0 * fine - coarse) / 3.0;
}

DerivativeCheck derivative_check(const ParametricModel& model, std::span<const double> y,
                                 std::span<const int> nu) {
    DerivativeCheck r;
    r.closed = model_derivative(model, y, nu);
    r.fd = model_derivative_fd(model, y, nu);
    const double diff = std::abs(r.fd - r.closed);
    r.fd_ok = diff == 0.0 || diff <= 1e-5 * std::abs(r.closed);

    const auto beta = model.beta();
    int order = 0;
    double prod = 1.0;
    for (std::size_t j = 0; j < nu.size(); ++j) {
        order += nu[j];
        prod *= std::pow(beta[j], nu[j]);
    }
    r.bound = model.c() * factorial(order) * prod;
    r.bound_ok = std::abs(r.closed) <= r.bound * (1.0 + 1e-12);
    return r;
}

bool derivative_bound_check(const ParametricModel& model, std::span<const double> y,
                            std::span<const int> nu) {
    return derivative_check(model, y, nu).ok();
}

// ---- product test integrand ---------------------------------------------------

ProductTestIntegrand ProductTestIntegrand::from_beta(std::span<const double> beta) {
    ProductTestIntegrand F;
    for (double b : beta) F.c.push_back(std::min(1.0, b));
    return F;
}

double product_test_value(const ProductTestIntegrand& F, std::span<const double> y) {
    check_dim(F.dim(), y.size(), "product_test_value");
    double v = 1.0;
    for (std::size_t j = 0; j < y.size(); ++j) v *= 1.0 + F.c[j] * (y[j] * y[j] - 1.0 / 3.0);
    return v;
}

double product_test_norm_factor(int alpha) {
    if (alpha < 1) throw Error("smoothness order must be >= 1");
    // g(1) - g(0) = 1, g'(1) - g'(0) = 2, higher differences vanish;
    // sup |g^(alpha)| is 2 for alpha <= 2 and 0 beyond.
    double h = alpha <= 2 ? 2.0 : 0.0;
    h += 1.0;
    if (alpha >= 2) h += 2.0;
    return h;
}

// ---- generic integrands -------------------------------------------------------

std::size_t integrand_dim(const Integrand& F) {
    return std::visit([](const auto& f) { return f.dim(); }, F);
}

double evaluate(const Integrand& F, std::span<const double> y) {
    if (const auto* m = std::get_if<ParametricModel>(&F)) return model_solution(*m, y);
    if (const auto* p = std::get_if<ProductTestIntegrand>(&F)) return product_test_value(*p, y);
    const auto& c = std::get<ConstantIntegrand>(F);
    check_dim(c.s, y.size(), "constant integrand");
    return c.value;
}

std::string integrand_name(const Integrand& F) {
    if (std::holds_alternative<ParametricModel>(F)) return "model";
    if (std::holds_alternative<ProductTestIntegrand>(F)) return "product";
    return "constant";
}

namespace {

// max over nonempty u of num(u) / spec weight(u), enumerating all subsets.
template <class Num>
double max_subset_ratio(std::size_t s, const WeightSpec& spec, Num num) {
    if (s > 20) throw EnvelopeError("norm constant: subset enumeration limited to s <= 20");
    double best = 0.0;
    std::vector<std::size_t> u;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
        u.clear();
        for (std::size_t j = 0; j < s; ++j)
            if ((mask >> j) & 1U) u.push_back(j + 1);
        best = std::max(best, num(u) / weight(u, spec));
    }
    return best;
}

}  // namespace

double norm_constant(const Integrand& F, const WeightSpec& spec) {
    const std::size_t s = integrand_dim(F);
    if (const auto* c = std::get_if<ConstantIntegrand>(&F)) return std::abs(c->value);

    if (const auto* p = std::get_if<ProductTestIntegrand>(&F)) {
        const double h = product_test_norm_factor(spec.alpha);
        // SPOD weights dominate product weights with the same beta, so the
        // product closed form is an upper bound when enumeration is too large.
        if (spec.family == WeightFamily::Product || s > 20) {
            double norm = 1.0;
            for (std::size_t j = 1; j <= s; ++j)
                norm *= std::max(1.0, h * p->c[j - 1] / product_weight(j, spec));
            return norm;
        }
        const double r = max_subset_ratio(s, spec, [&](const std::vector<std::size_t>& u) {
            double v = 1.0;
            for (std::size_t j : u) v *= h * p->c[j - 1];
            return v;
        });
        return std::max(1.0, r);
    }

    const auto& model = std::get<ParametricModel>(F);
    model.validate();
    // |d^nu u| <= c |nu|! beta^nu bounds every term of the u-part by c times
    // the SPOD weight of the model's own beta.
    WeightSpec own = spec;
    own.family = WeightFamily::Spod;
    own.beta = BetaSequence::list(model.beta(), spec.beta.p);
    if (s > 20) {
        bool dominated = spec.family == WeightFamily::Spod;
        for (std::size_t j = 1; j <= s && dominated; ++j)
            dominated = own.beta(j) <= spec.beta(j) * (1.0 + 1e-12);
        if (!dominated)
            throw EnvelopeError("norm constant: s > 20 needs SPOD weights dominating the model");
        return model.c();
    }
    const double r = max_subset_ratio(
        s, spec, [&](const std::vector<std::size_t>& u) { return spod_weight(u, own); });
    return model.c() * std::max(1.0, r);
}

// ---- quadrature ---------------------------------------------------------------

namespace {

constexpr std::uint64_t kLeaf = 1024;

double pairwise(std::span<const long double> v) {
    if (v.empty()) return 0.0;
    std::vector<long double> level(v.begin(), v.end());
    while (level.size() > 1) {
        std::vector<long double> next((level.size() + 1) / 2);
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] = level[2 * i] + (2 * i + 1 < level.size() ? level[2 * i + 1] : 0.0L);
        level = std::move(next);
    }
    return static_cast<double>(level[0]);
}

}  // namespace

double qmc_integrate(const ScalarFunction& F, const PointSet& pts, int threads) {
    const std::uint64_t N = pts.size();
    if (N == 0) throw Error("qmc_integrate: empty point set");
    const std::uint64_t leaves = (N + kLeaf - 1) / kLeaf;
    std::vector<long double> partial(leaves, 0.0L);

    auto work = [&](std::uint64_t first, std::uint64_t last) {
        std::vector<double> y(pts.dim());
        for (std::uint64_t leaf = first; leaf < last; ++leaf) {
            long double acc = 0.0L;
            const std::uint64_t end = std::min(N, (leaf + 1) * kLeaf);
            for (std::uint64_t n = leaf * kLeaf; n < end; ++n) {
                pts.row_values(n, y);
                acc += F(y);
            }
            partial[leaf] = acc;
        }
    };

    if (threads <= 0) threads = default_threads();
    const auto workers =
        static_cast<std::uint64_t>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), leaves));
    if (workers <= 1) {
        work(0, leaves);
    } else {
        std::vector<std::thread> pool;
        for (std::uint64_t w = 0; w < workers; ++w)
            pool.emplace_back(work, leaves * w / workers, leaves * (w + 1) / workers);
        for (auto& t : pool) t.join();
    }
    return pairwise(partial) / static_cast<double>(N);
}

double qmc_integrate(const Integrand& F, const PointSet& pts, int threads) {
    check_dim(integrand_dim(F), pts.dim(), "qmc_integrate");
    return qmc_integrate([&F](std::span<const double> y) { return evaluate(F, y); }, pts, threads);
}

// ---- reference integrals ------------------------------------------------------

namespace {

struct Rule1D {
    std::vector<double> x;  // nodes on [0,1]
    std::vector<double> w;
};

template <unsigned N>
Rule1D gauss_unit() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& xs = G::abscissa();
    const auto& ws = G::weights();
    Rule1D r;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0.0) {
            r.x.push_back(0.5);
            r.w.push_back(ws[i] / 2.0);
            continue;
        }
        r.x.push_back((1.0 - xs[i]) / 2.0);
        r.w.push_back(ws[i] / 2.0);
        r.x.push_back((1.0 + xs[i]) / 2.0);
        r.w.push_back(ws[i] / 2.0);
    }
    return r;
}

// Tensor rule over the affine form: recursion carries the partial denominator.
long double tensor_sum(const ParametricModel& model, const Rule1D& rule, std::size_t j,
                       long double denom) {
    if (j == model.dim()) return 1.0L / denom;
    long double acc = 0.0L;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        acc += rule.w[i] * tensor_sum(model, rule, j + 1, denom + model.a[j] * (rule.x[i] - 0.5));
    return acc;
}

// phi(x) = exp(-x) sinh(x) / x for x >= 0.
long double phi(long double x) {
    if (x == 0.0L) return 1.0L;
    return -std::expm1(-2.0L * x) / (2.0L * x);
}

long double laplace_panels(const ParametricModel& model, const Rule1D& rule, double T,
                           int panels) {
    const long double lambda0 = model.min_denominator();
    const long double width = T / panels;
    long double acc = 0.0L;
    for (int p = 0; p < panels; ++p) {
        long double part = 0.0L;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            const long double t = (p + rule.x[i]) * width;
            long double v = std::exp(-lambda0 * t);
            for (double aj : model.a) v *= phi(t * std::abs(aj) / 2.0L);
            part += rule.w[i] * v;
        }
        acc += part * width;
    }
    return acc;
}

}  // namespace

ReferenceValue reference_integral_tensor(const ParametricModel& model) {
    model.validate();
    if (model.dim() > 4) throw EnvelopeError("tensor Gauss-Legendre path is limited to s <= 4");
    static const Rule1D g64 = gauss_unit<64>();
    static const Rule1D g128 = gauss_unit<128>();
    const double scale = model.G * model.f;
    const double coarse = static_cast<double>(scale * tensor_sum(model, g64, 0, model.a0));
    const double fine = static_cast<double>(scale * tensor_sum(model, g128, 0, model.a0));
    return {coarse, std::abs(fine - coarse), "tensor-gauss-64"};
}

ReferenceValue reference_integral_laplace(const ParametricModel& model) {
    model.validate();
    static const Rule1D g64 = gauss_unit<64>();
    // The integrand is bounded by exp(-lambda0 t); cut where that tail is
    // negligible.
    const double lambda0 = model.min_denominator();
    const double T = (45.0 + std::max(0.0, std::log(1.0 / lambda0))) / lambda0;
    const double tail = std::exp(-lambda0 * T) / lambda0;
    const double scale = model.G * model.f;
    const double coarse = static_cast<double>(scale * laplace_panels(model, g64, T, 16));
    const double fine = static_cast<double>(scale * laplace_panels(model, g64, T, 32));
    return {fine, std::abs(fine - coarse) + std::abs(scale) * tail, "laplace-gauss"};
}

ReferenceValue reference_integral(const Integrand& F) {
    if (std::holds_alternative<ProductTestIntegrand>(F)) return {1.0, 0.0, "exact"};
    if (const auto* c = std::get_if<ConstantIntegrand>(&F)) return {c->value, 0.0, "exact"};
    const auto& model = std::get<ParametricModel>(F);
    if (model.dim() <= 4) return reference_integral_tensor(model);
    if (model.dim() > 12) throw EnvelopeError("reference integral is limited to s <= 12");
    return reference_integral_laplace(model);
}

// ---- convergence experiments ----------------------------------------------------

const char* to_string(ConvergenceConfig::Kind k) {
    switch (k) {
        case ConvergenceConfig::Kind::Model: return "model";
        case ConvergenceConfig::Kind::Product: return "product";
        case ConvergenceConfig::Kind::Constant: return "constant";
    }
    return "?";
}

ConvergenceConfig::Kind parse_integrand_kind(const std::string& s) {
    if (s == "model") return ConvergenceConfig::Kind::Model;
    if (s == "product") return ConvergenceConfig::Kind::Product;
    if (s == "constant") return ConvergenceConfig::Kind::Constant;
    throw Error("unknown integrand '" + s + "' (expected model, product or constant)");
}

Integrand make_integrand(const ConvergenceConfig& cfg) {
    const auto beta = cfg.beta.first(cfg.s);
    switch (cfg.integrand) {
        case ConvergenceConfig::Kind::Model: return ParametricModel::from_beta(beta);
        case ConvergenceConfig::Kind::Product: return ProductTestIntegrand::from_beta(beta);
        case ConvergenceConfig::Kind::Constant: return ConstantIntegrand{1.0, cfg.s};
    }
    throw Error("unknown integrand kind");
}

std::optional<double> fit_slope(std::vector<ConvergenceRow>& rows, unsigned b,
                                const ReferenceValue& ref) {
    const double floor =
        std::max(10.0 * ref.uncertainty, 64.0 * DBL_EPSILON * std::max(std::abs(ref.value), 1e-300));
    std::vector<double> xs, ys;
    for (auto& r : rows) {
        r.used_in_fit = r.error > floor;
        if (!r.used_in_fit) continue;
        xs.push_back(r.m);
        ys.push_back(std::log(r.error) / std::log(static_cast<double>(b)));
    }
    if (xs.size() < 4) return std::nullopt;
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

namespace {

std::string rule_id(const CbcResult& r, const char* family) {
    return std::string(family) + "-b" + std::to_string(r.base()) + "-m" + std::to_string(r.m()) +
           "-a" + std::to_string(r.alpha) + "-P" + std::to_string(r.modulus.poly().encode());
}

}  // namespace

ConvergenceReport convergence_experiment(const ConvergenceConfig& cfg) {
    if (cfg.m_min < 1 || cfg.m_max < cfg.m_min) throw Error("invalid m range");
    if (cfg.s == 0) throw Error("s must be positive");
    cfg.beta.validate();

    ConvergenceReport rep;
    rep.config = cfg;
    rep.alpha = cfg.alpha > 0 ? cfg.alpha : choose_alpha(cfg.beta.p);
    const WeightSpec spec{cfg.family, cfg.b, rep.alpha, cfg.beta};
    spec.validate();

    const Integrand F = make_integrand(cfg);
    rep.integrand = integrand_name(F);
    rep.reference = reference_integral(F);
    rep.norm = norm_constant(F, spec);

    // Baseline: classical rule searched with the order-2 kernel and product
    // weights of the same beta.
    const WeightSpec base_spec{WeightFamily::Product, cfg.b, 2, cfg.beta};

    for (int m = cfg.m_min; m <= cfg.m_max; ++m) {
        const Modulus P = find_irreducible(cfg.b, m);
        const CbcResult res = cbc_construct(P, cfg.s, spec);
        const PointSet pts = interlaced_points(res.rule());
        ConvergenceRow row;
        row.m = m;
        row.N = pts.size();
        row.rule_id = rule_id(res, to_string(cfg.family));
        row.estimate = qmc_integrate(F, pts, cfg.threads);
        row.error = std::abs(row.estimate - rep.reference.value);
        row.criterion = res.criterion();
        row.bound = rep.norm * row.criterion;
        rep.rows.push_back(row);

        if (cfg.baseline) {
            const CbcResult cl = cbc_product_classical(P, cfg.s, base_spec);
            const PointSet bpts = interlaced_points(cl.rule());
            ConvergenceRow brow;
            brow.m = m;
            brow.N = bpts.size();
            brow.rule_id = rule_id(cl, "classical");
            brow.estimate = qmc_integrate(F, bpts, cfg.threads);
            brow.error = std::abs(brow.estimate - rep.reference.value);
            brow.criterion = cl.criterion();
            brow.bound = 0.0;  // no certified bound at order 1
            rep.baseline_rows.push_back(brow);
        }
    }
    rep.slope = fit_slope(rep.rows, cfg.b, rep.reference);
    if (cfg.baseline) rep.baseline_slope = fit_slope(rep.baseline_rows, cfg.b, rep.reference);
    return rep;
}

}  // namespace hoqmc
