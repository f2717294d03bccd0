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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hoqmc/bounds.hpp"
#include "hoqmc/cbc.hpp"
#include "hoqmc/integrands.hpp"
#include "hoqmc/io.hpp"
#include "hoqmc/verify.hpp"

using namespace hoqmc;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d: %s  (%.1fs) %s\n", id, o.pass ? "PASS" : "FAIL", sec, o.detail.c_str());
    std::fflush(stdout);
}

std::string suite_detail(const SuiteResult& r) {
    std::ostringstream os;
    os << r.name << " " << r.passed << "/" << r.total;
    if (!r.failures.empty()) os << " first failure: " << r.failures.front();
    return os.str();
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<GridCase> criterion_grid() { return make_grid({2, 3}, 2, 5, {2, 3}, 3); }

std::vector<CbcResult> grid_rules() {
    std::vector<CbcResult> out;
    for (const auto& c : criterion_grid())
        out.push_back(cbc_construct(find_irreducible(c.b, c.m), c.s, grid_spec(c)));
    return out;
}

std::vector<CbcResult> small_rules(const std::vector<CbcResult>& rules) {
    std::vector<CbcResult> out;
    for (const auto& r : rules)
        if (r.modulus.order() <= 32 && r.q.size() <= 6) out.push_back(r);
    return out;
}

// Least-squares slope of ys against xs.
double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / n;
        my += ys[i] / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (out_text) *out_text = out.str();
    return code;
}

}  // namespace

int main() {
    const auto rules = grid_rules();

    report(1, [] {
        const auto t0 = Clock::now();
        const auto r = suite_cbc_equivalence(criterion_grid(), 1e-10);
        const double sec = seconds_since(t0);
        return Outcome{r.ok() && sec < 120.0, suite_detail(r)};
    });

    report(2, [] {
        const auto t0 = Clock::now();
        const auto r = suite_rader(2, 3, 10, 20, 20260101, 1e-9);
        const double sec = seconds_since(t0);
        return Outcome{r.ok() && sec < 30.0, suite_detail(r)};
    });

    report(3, [&] {
        std::uint64_t checked = 0, bad = 0, beyond = 0;
        for (const auto& r : rules) {
            const auto rep = optimize_lambda(r.spec, r.m(), r.s());
            const double E = r.criterion();
            for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
                ++checked;
                if (std::isinf(rep.bounds[i])) ++beyond;
                const bool at_p = rep.lambdas[i] == rep.p;
                if (!(E <= rep.bounds[i]) || (at_p && !(E < rep.bounds[i]))) ++bad;
            }
            if (rep.lambdas.size() != 50) ++bad;
        }
        GridCase c{2, 2, 2, 3, WeightFamily::Spod};
        const auto spec = grid_spec(c);
        std::vector<double> ms, ys;
        for (int m = 2; m <= 8; ++m) {
            ms.push_back(m);
            ys.push_back(std::log2(cbc_bound(spec.beta.p, spec, m, 3)));
        }
        const double factor = std::pow(2.0, -ls_slope(ms, ys));
        const double target = std::pow(2.0, 1.0 / spec.beta.p);
        const double rel = std::abs(factor / target - 1.0);
        std::ostringstream os;
        os << checked - bad << "/" << checked << " bound checks (" << beyond << " beyond double range); decay factor " << factor << " vs b^{1/p} "
           << target << " (rel " << rel << ")";
        return Outcome{bad == 0 && rel <= 0.25, os.str()};
    });

    const auto small = small_rules(rules);

    report(4, [&] {
        const auto r = suite_character_sums(small, 200, 4242);
        return Outcome{r.ok(), suite_detail(r) + " over " + std::to_string(small.size()) + " rules"};
    });

    report(5, [&] {
        const auto r = suite_kernel_identity(small);
        return Outcome{r.ok(), suite_detail(r)};
    });

    report(6, [] {
        const auto r = suite_mu_inequality(2, {2, 3}, 4);
        return Outcome{r.ok(), suite_detail(r)};
    });

    report(7, [] {
        std::mt19937_64 rng(7007);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        int ok = 0;
        const int total = 200;
        std::string first;
        for (int t = 0; t < total; ++t) {
            const std::size_t s = 1 + rng() % 6;
            ParametricModel m;
            m.a0 = 0.5 + U(rng);
            m.f = 0.5 + 2 * U(rng);
            m.G = 0.5 + 2 * U(rng);
            const double kappa = 1.9 * U(rng);
            std::vector<double> w(s);
            double wsum = 0.0;
            for (auto& x : w) wsum += (x = U(rng) + 1e-3);
            for (std::size_t j = 0; j < s; ++j)
                m.a.push_back((rng() % 2 ? 1.0 : -1.0) * kappa * m.a0 * w[j] / wsum);
            std::vector<double> y(s);
            for (auto& v : y) v = U(rng);
            std::vector<int> nu(s, 0);
            const int order = static_cast<int>(rng() % 4);  // |nu| in 0..3
            for (int k = 0; k < order; ++k) ++nu[rng() % s];
            const auto chk = derivative_check(m, y, nu);
            if (chk.ok()) {
                ++ok;
            } else if (first.empty()) {
                std::ostringstream os;
                os << "sample " << t << " closed " << chk.closed << " fd " << chk.fd << " bound " << chk.bound;
                first = os.str();
            }
        }
        return Outcome{ok == total, std::to_string(ok) + "/" + std::to_string(total) + " " + first};
    });

    report(8, [] {
        const auto t0 = Clock::now();
        ConvergenceConfig cfg;  // model, beta_j = 0.1 j^-2, p = 0.6, s = 10, m = 6..14
        cfg.baseline = true;
        const auto model = convergence_experiment(cfg);
        cfg.integrand = ConvergenceConfig::Kind::Product;
        cfg.baseline = false;
        const auto prod = convergence_experiment(cfg);
        const double sec = seconds_since(t0);
        const bool have = model.slope && model.baseline_slope && prod.slope;
        const bool pass = have && model.alpha == 2 && *model.slope <= -1.2 && *model.slope < *model.baseline_slope &&
                          *prod.slope <= -1.5 && sec < 600.0;
        std::ostringstream os;
        auto show = [](const std::optional<double>& v) { return v ? std::to_string(*v) : std::string("none"); };
        os << "model slope " << show(model.slope) << ", baseline " << show(model.baseline_slope)
           << ", product slope " << show(prod.slope);
        return Outcome{pass, os.str()};
    });

    report(9, [] {
        ParametricModel m;
        m.a0 = 1.0;
        m.a = {0.5};
        const auto ref = reference_integral_tensor(m);
        const double exact = 2.0 * std::log(5.0 / 3.0);
        const double err = std::abs(ref.value - exact);
        char buf[96];
        std::snprintf(buf, sizeof buf, "tensor %.17g vs %.17g (err %.2e)", ref.value, exact, err);
        return Outcome{err <= 1e-12, buf};
    });

    report(10, [] {
        const double c = c_alpha_b(2, 2);
        const double rho = rho_alpha_b(1.0, 2, 2);
        char buf[96];
        std::snprintf(buf, sizeof buf, "C_{2,2} = %.17g, rho_{2,2}(1) = %.17g", c, rho);
        return Outcome{c == 4.5 && rho == 11.25, buf};
    });

    report(11, [] {
        namespace fs = std::filesystem;
        const auto dir = fs::temp_directory_path() / "hoqmc_acceptance";
        fs::create_directories(dir);
        const std::vector<std::string> base = {"construct", "--b", "2", "--m", "10", "--s", "10", "--p", "0.6",
                                               "--out"};
        auto a = base, b = base;
        a.push_back((dir / "a.json").string());
        b.push_back((dir / "b.json").string());
        const bool built = run_cli(a) == 0 && run_cli(b) == 0;
        const bool same = built && io::read_file(a.back()) == io::read_file(b.back());
        fs::remove_all(dir);

        const auto t0 = Clock::now();
        std::string text;
        const int code = run_cli({"verify", "--preset", "desk"}, &text);
        const double sec = seconds_since(t0);
        std::ostringstream os;
        os << "construct byte-identical: " << (same ? "yes" : "no") << "; desk verify exit " << code << " in "
           << sec << "s";
        return Outcome{same && code == 0 && sec < 300.0, os.str()};
    });

    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED");
    return failures == 0 ? 0 : 1;
}
