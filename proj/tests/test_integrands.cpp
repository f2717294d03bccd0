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

#include <doctest.h>

#include <cmath>
#include <random>

#include "hoqmc/cbc.hpp"
#include "hoqmc/integrands.hpp"

using namespace hoqmc;

namespace {

ParametricModel simple_model() {
    ParametricModel m;
    m.a0 = 1.0;
    m.a = {0.5};
    return m;
}

PointSet rule_points(unsigned b, int m, std::size_t s, int alpha) {
    WeightSpec spec;
    spec.b = b;
    spec.alpha = alpha;
    spec.beta = BetaSequence::power(0.3, 3.0, 1.0 / alpha + 0.05);
    return interlaced_points(cbc_spod(b, m, s, spec).rule());
}

}  // namespace

TEST_CASE("model solution examples") {
    const auto m = simple_model();
    const double one[] = {1.0};
    const double mid[] = {0.5};
    CHECK(model_solution(m, one) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(model_solution(m, mid) == 1.0);
    ParametricModel flat;
    flat.a0 = 2.0;
    flat.a = {0.0, 0.0};
    flat.f = 3.0;
    flat.G = 0.5;
    const double y[] = {0.1, 0.9};
    CHECK(model_solution(flat, y) == 0.75);
    ParametricModel bad;
    bad.a = {1.5, 1.0};
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("from_beta reproduces beta") {
    const std::vector<double> beta = {0.4, 0.2, 0.1, 0.05};
    const auto m = ParametricModel::from_beta(beta, 2.0, 1.5, 0.5);
    const auto back = m.beta();
    for (std::size_t j = 0; j < beta.size(); ++j) CHECK(back[j] == doctest::Approx(beta[j]).epsilon(1e-14));
    CHECK(m.c() == doctest::Approx(1.5 * 0.5 * (1 + 0.75 / 2) / 2.0).epsilon(1e-14));
}

TEST_CASE("first derivative example") {
    const auto m = simple_model();
    const double mid[] = {0.5};
    const int nu[] = {1};
    CHECK(model_derivative(m, mid, nu) == doctest::Approx(-0.5).epsilon(1e-15));  // -G f a_1 / a0^2
    const int zero[] = {0};
    const double one[] = {1.0};
    CHECK(model_derivative(m, one, zero) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(derivative_bound_check(m, one, zero));
}

TEST_CASE("derivatives against finite differences and the bound") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int t = 0; t < 60; ++t) {
        const std::size_t s = 1 + rng() % 4;
        ParametricModel m;
        m.a0 = 0.5 + U(rng);
        m.f = 0.5 + U(rng);
        m.G = 0.5 + U(rng);
        for (std::size_t j = 0; j < s; ++j) m.a.push_back((U(rng) - 0.5) * 1.6 * m.a0 / static_cast<double>(s));
        std::vector<double> y(s);
        for (auto& v : y) v = U(rng);
        std::vector<int> nu(s, 0);
        const int order = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < order; ++k) ++nu[rng() % s];
        const auto chk = derivative_check(m, y, nu);
        CHECK(chk.fd_ok);
        CHECK(chk.bound_ok);
        CHECK(std::abs(chk.closed) <= chk.bound);
    }
}

TEST_CASE("product test integrand") {
    ProductTestIntegrand F{{1.0, 0.5}};
    const double y[] = {1.0, 0.0};
    CHECK(product_test_value(F, y) == doctest::Approx((1 + 2.0 / 3) * (1 - 0.5 / 3)).epsilon(1e-15));
    const double beta[] = {2.0, 0.25};
    CHECK(ProductTestIntegrand::from_beta(beta).c == std::vector<double>{1.0, 0.25});
    CHECK(product_test_norm_factor(1) == 3.0);
    CHECK(product_test_norm_factor(2) == 5.0);
    CHECK(product_test_norm_factor(3) == 3.0);
    const auto ref = reference_integral(Integrand{F});
    CHECK(ref.value == 1.0);
    CHECK(ref.uncertainty == 0.0);
}

TEST_CASE("qmc quadrature identities") {
    for (unsigned b : {2U, 3U}) {
        for (int m = 2; m <= 6; ++m) {
            const auto pts = rule_points(b, m, 3, 1 + (m % 2) + 1);
            CHECK(qmc_integrate(Integrand{ConstantIntegrand{1.0, 3}}, pts) == doctest::Approx(1.0).epsilon(1e-14));
            // interlaced coordinates carry alpha m digits, so use the digit count
            const double Nd = std::pow(static_cast<double>(b), pts.digits());
            const double N = static_cast<double>(pts.size());
            for (std::size_t j = 0; j < 3; ++j) {
                const double got = qmc_integrate(
                    [j](std::span<const double> y) { return 3.0 * y[j] - 1.0; }, pts);
                // mean of the exact numerators / b^digits
                double mean = 0.0;
                for (std::uint64_t n = 0; n < pts.size(); ++n) mean += pts.numerator(n, j);
                mean /= N * Nd;
                CHECK(got == doctest::Approx(3.0 * mean - 1.0).epsilon(1e-14));
            }
        }
    }
    // classical coordinate: mean is (b^m - 1) / (2 b^m)
    const auto P = find_irreducible(2, 8);
    const auto pts = classical_points(PolyLatticeRule{P, {PolyGF::from_encoding(2, 77)}});
    CHECK(qmc_integrate([](std::span<const double> y) { return 2.0 * y[0] + 1.0; }, pts) ==
          doctest::Approx(2.0 * 255.0 / 512.0 + 1.0).epsilon(1e-15));
    CHECK_THROWS_AS(qmc_integrate(Integrand{ConstantIntegrand{1.0, 2}}, pts), Error);
}

TEST_CASE("qmc result does not depend on the thread count") {
    const auto pts = rule_points(2, 13, 4, 2);
    const auto F = Integrand{ParametricModel::from_beta(std::vector<double>{0.5, 0.3, 0.2, 0.1})};
    const double one = qmc_integrate(F, pts, 1);
    for (int t : {2, 3, 7}) CHECK(qmc_integrate(F, pts, t) == one);
}

TEST_CASE("reference integrals") {
    const auto ref = reference_integral(Integrand{simple_model()});
    CHECK(std::abs(ref.value - 2.0 * std::log(5.0 / 3.0)) < 1e-12);
    const auto two = reference_integral_tensor(ParametricModel::from_beta(std::vector<double>{0.6, 0.3}));
    CHECK(two.uncertainty < 1e-12);
    // s = 2 closed form: int int 1/(c + a1 y1 + a2 y2) by hand antiderivatives
    ParametricModel m2;
    m2.a = {0.4, 0.3};
    const double c = 1.0 - 0.2 - 0.15;
    auto F = [](double x) { return x * std::log(x) - x; };
    const double exact = (F(c + 0.7) - F(c + 0.4) - F(c + 0.3) + F(c)) / (0.4 * 0.3);
    CHECK(reference_integral(Integrand{m2}).value == doctest::Approx(exact).epsilon(1e-13));
    // tensor and one-dimensional Laplace forms agree where both apply
    const auto m4 = ParametricModel::from_beta(std::vector<double>{0.5, 0.4, 0.2, 0.1});
    CHECK(std::abs(reference_integral_tensor(m4).value - reference_integral_laplace(m4).value) < 1e-13);
    const auto m10 = ParametricModel::from_beta(BetaSequence::power(0.1, 2.0, 0.6).first(10));
    const auto r10 = reference_integral(Integrand{m10});
    CHECK(r10.uncertainty < 1e-13);
}

TEST_CASE("constant integrand convergence") {
    ConvergenceConfig cfg;
    cfg.integrand = ConvergenceConfig::Kind::Constant;
    cfg.m_min = 4;
    cfg.m_max = 9;
    cfg.s = 4;
    const auto rep = convergence_experiment(cfg);
    CHECK(rep.rows.size() == 6);
    for (const auto& r : rep.rows) CHECK(r.error <= 1e-15);
    CHECK_FALSE(rep.slope.has_value());
}

TEST_CASE("product integrand errors stay below the certified bound") {
    for (auto fam : {WeightFamily::Spod, WeightFamily::Product}) {
        ConvergenceConfig cfg;
        cfg.integrand = ConvergenceConfig::Kind::Product;
        cfg.family = fam;
        cfg.m_min = 4;
        cfg.m_max = 11;
        cfg.s = 6;
        const auto rep = convergence_experiment(cfg);
        for (const auto& r : rep.rows) {
            CHECK(r.error >= 0.0);
            CHECK(r.error <= r.bound);
            CHECK(r.bound == doctest::Approx(rep.norm * r.criterion));
        }
        REQUIRE(rep.slope.has_value());
        CHECK(*rep.slope < -1.0);
    }
}

TEST_CASE("slope fit needs four rows above the floor") {
    std::vector<ConvergenceRow> rows;
    for (int m = 1; m <= 5; ++m) {
        ConvergenceRow r;
        r.m = m;
        r.error = std::pow(2.0, -2.0 * m);
        rows.push_back(r);
    }
    const ReferenceValue ref{1.0, 0.0, "exact"};
    CHECK(fit_slope(rows, 2, ref).value() == doctest::Approx(-2.0));
    const ReferenceValue noisy{1.0, 0.01, "test"};
    CHECK_FALSE(fit_slope(rows, 2, noisy).has_value());
    CHECK_FALSE(rows[4].used_in_fit);
}
