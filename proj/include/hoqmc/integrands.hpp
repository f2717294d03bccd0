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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hoqmc/pointgen.hpp"
#include "hoqmc/weights.hpp"

namespace hoqmc {

/// u(y) = G f / (a0 + sum_j a_j (y_j - 1/2)).
struct ParametricModel {
    double a0 = 1.0;
    std::vector<double> a;
    double f = 1.0;
    double G = 1.0;

    /// Model whose derivative constants reproduce beta_1..beta_s exactly:
    /// a_j = a0 beta_j / (1 + sum beta / 2).
    static ParametricModel from_beta(std::span<const double> beta, double a0 = 1.0,
                                     double f = 1.0, double G = 1.0);

    std::size_t dim() const { return a.size(); }
    /// kappa = sum |a_j| / a0.
    double kappa() const;
    /// a0 (1 - kappa/2), the smallest value of the denominator.
    double min_denominator() const;
    /// c = G f / (a0 (1 - kappa/2)).
    double c() const;
    /// beta_j = |a_j| / (a0 (1 - kappa/2)).
    std::vector<double> beta() const;

    /// Throws Error unless a0 > 0 and kappa < 2.
    void validate() const;
};

double model_solution(const ParametricModel& model, std::span<const double> y);

/// Closed-form mixed derivative d^nu u at y.
double model_derivative(const ParametricModel& model, std::span<const double> y,
                        std::span<const int> nu);

/// Richardson-extrapolated central differences for d^nu u, |nu| <= 3.
double model_derivative_fd(const ParametricModel& model, std::span<const double> y,
                           std::span<const int> nu);

struct DerivativeCheck {
    double closed = 0.0;
    double fd = 0.0;
    double bound = 0.0;  // c |nu|! beta^nu
    bool fd_ok = false;
    bool bound_ok = false;
    bool ok() const { return fd_ok && bound_ok; }
};

DerivativeCheck derivative_check(const ParametricModel& model, std::span<const double> y,
                                 std::span<const int> nu);
bool derivative_bound_check(const ParametricModel& model, std::span<const double> y,
                            std::span<const int> nu);

/// prod_j (1 + c_j (y_j^2 - 1/3)); the exact integral is 1.
struct ProductTestIntegrand {
    std::vector<double> c;

    /// c_j = min(1, beta_j).
    static ProductTestIntegrand from_beta(std::span<const double> beta);
    std::size_t dim() const { return c.size(); }
};

double product_test_value(const ProductTestIntegrand& F, std::span<const double> y);

/// Per-coordinate factor of the norm of the product integrand at smoothness
/// alpha: sup |g^(alpha)| + sum_{tau=1}^{alpha} |g^(tau-1)(1) - g^(tau-1)(0)|
/// for g(y) = y^2 - 1/3 (multiply by c_j).
double product_test_norm_factor(int alpha);

struct ConstantIntegrand {
    double value = 1.0;
    std::size_t s = 1;
    std::size_t dim() const { return s; }
};

using Integrand = std::variant<ParametricModel, ProductTestIntegrand, ConstantIntegrand>;

std::size_t integrand_dim(const Integrand& F);
double evaluate(const Integrand& F, std::span<const double> y);
std::string integrand_name(const Integrand& F);

/// Upper bound on the norm of F in the weighted space of `spec` (sup over
/// u of gamma_u^{-1} times the u-part of the norm).
double norm_constant(const Integrand& F, const WeightSpec& spec);

using ScalarFunction = std::function<double(std::span<const double>)>;

/// (1/N) sum_n F(y_n). Points are summed in fixed blocks combined by a fixed
/// pairwise tree, so the result does not depend on `threads`.
double qmc_integrate(const ScalarFunction& F, const PointSet& pts, int threads = 1);
double qmc_integrate(const Integrand& F, const PointSet& pts, int threads = 1);

struct ReferenceValue {
    double value = 0.0;
    double uncertainty = 0.0;
    std::string method;
};

/// Reference value of the integral over [0,1]^s. Product and constant
/// integrands are exact. The model uses tensor Gauss-Legendre (64 nodes,
/// compared against 128) for s <= 4 and the one-dimensional representation
/// 1/D = int_0^inf exp(-t D) dt for 4 < s <= 12.
ReferenceValue reference_integral(const Integrand& F);

/// The tensor Gauss-Legendre path alone (s <= 4).
ReferenceValue reference_integral_tensor(const ParametricModel& model);
/// The Laplace-transform path alone (any s).
ReferenceValue reference_integral_laplace(const ParametricModel& model);

struct ConvergenceConfig {
    enum class Kind { Model, Product, Constant };

    Kind integrand = Kind::Model;
    unsigned b = 2;
    int m_min = 6;
    int m_max = 14;
    std::size_t s = 10;
    int alpha = 0;  // 0: choose_alpha(beta.p)
    WeightFamily family = WeightFamily::Spod;
    BetaSequence beta = BetaSequence::power(0.1, 2.0, 0.6);
    bool baseline = false;
    int threads = 1;
};

const char* to_string(ConvergenceConfig::Kind k);
ConvergenceConfig::Kind parse_integrand_kind(const std::string& s);

Integrand make_integrand(const ConvergenceConfig& cfg);

struct ConvergenceRow {
    int m = 0;
    std::uint64_t N = 0;
    std::string rule_id;
    double estimate = 0.0;
    double error = 0.0;
    double criterion = 0.0;  // E(q*) of the rule
    double bound = 0.0;      // norm constant times criterion
    bool used_in_fit = false;
};

struct ConvergenceReport {
    ConvergenceConfig config;
    int alpha = 0;
    std::string integrand;
    ReferenceValue reference;
    double norm = 0.0;
    std::vector<ConvergenceRow> rows;
    std::optional<double> slope;
    std::vector<ConvergenceRow> baseline_rows;
    std::optional<double> baseline_slope;
};

/// Least-squares slope of log_b(error) against m over rows with error above
/// 10 times the reference uncertainty and above the rounding floor; needs at
/// least 4 such rows. Marks the rows used.
std::optional<double> fit_slope(std::vector<ConvergenceRow>& rows, unsigned b,
                                const ReferenceValue& ref);

ConvergenceReport convergence_experiment(const ConvergenceConfig& cfg);

}  // namespace hoqmc
