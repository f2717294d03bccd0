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

#include "cli.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "hoqmc/bounds.hpp"
#include "hoqmc/cbc.hpp"
#include "hoqmc/integrands.hpp"
#include "hoqmc/verify.hpp"

namespace hoqmc::cli {

// ---- config -------------------------------------------------------------------

BetaSequence RunConfig::beta() const {
    if (!beta_list.empty()) return BetaSequence::list(beta_list, p);
    return BetaSequence::power(beta_c, beta_theta, p);
}

int RunConfig::resolved_alpha() const { return alpha > 0 ? alpha : choose_alpha(p); }

WeightSpec RunConfig::spec() const { return {family, b, resolved_alpha(), beta()}; }

void RunConfig::validate() const {
    if (b < 2 || !is_prime(b)) throw Error("--b must be a prime");
    if (!(p > 0.0 && p <= 1.0)) throw Error("--p must lie in (0, 1]");
    if (alpha < 0) throw Error("--alpha must be positive");
    if (format != "csv" && format != "json") throw Error("--format must be csv or json");
    if (command == "construct" || command == "bound") {
        if (in.empty()) {
            if (m < 1) throw Error("--m must be positive");
            if (s < 1) throw Error("--s must be positive");
            spec().validate();
        }
    }
    if (command == "converge") {
        if (m_min < 1 || m_max < m_min) throw Error("invalid --m-min/--m-max range");
        if (s < 1) throw Error("--s must be positive");
        parse_integrand_kind(integrand);
        spec().validate();
    }
    if (command == "points" && in.empty()) throw Error("points needs a vector file");
    if (command == "verify" && preset != "smoke" && preset != "desk")
        throw Error("--preset must be smoke or desk");
}

io::Json to_json(const RunConfig& c) {
    io::Json j;
    j["command"] = c.command;
    j["b"] = c.b;
    j["m"] = c.m;
    j["m_min"] = c.m_min;
    j["m_max"] = c.m_max;
    j["s"] = c.s;
    j["p"] = c.p;
    j["alpha"] = c.alpha;
    j["weights"] = to_string(c.family);
    j["beta_c"] = c.beta_c;
    j["beta_theta"] = c.beta_theta;
    j["beta_list"] = c.beta_list;
    j["integrand"] = c.integrand;
    j["baseline"] = c.baseline;
    j["preset"] = c.preset;
    j["in"] = c.in;
    j["points"] = c.points;
    j["out"] = c.out;
    j["format"] = c.format;
    j["count"] = c.count;
    j["exact"] = c.exact;
    j["timing"] = c.timing;
    j["threads"] = c.threads;
    return j;
}

RunConfig run_config_from_json(const io::Json& j) {
    RunConfig c;
    auto get = [&j](const char* key, auto& field) {
        if (j.contains(key)) j.at(key).get_to(field);
    };
    try {
        get("command", c.command);
        get("b", c.b);
        get("m", c.m);
        get("m_min", c.m_min);
        get("m_max", c.m_max);
        get("s", c.s);
        get("p", c.p);
        get("alpha", c.alpha);
        if (j.contains("weights")) c.family = parse_weight_family(j.at("weights").get<std::string>());
        get("beta_c", c.beta_c);
        get("beta_theta", c.beta_theta);
        get("beta_list", c.beta_list);
        get("integrand", c.integrand);
        get("baseline", c.baseline);
        get("preset", c.preset);
        get("in", c.in);
        get("points", c.points);
        get("out", c.out);
        get("format", c.format);
        get("count", c.count);
        get("exact", c.exact);
        get("timing", c.timing);
        get("threads", c.threads);
    } catch (const io::Json::exception& e) {
        throw Error(std::string("malformed config: ") + e.what());
    }
    return c;
}

namespace {

// ---- output helpers ---------------------------------------------------------------

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out.empty())
        out << text;
    else
        io::write_file(cfg.out, text);
}

int threads_of(const RunConfig& cfg) { return cfg.threads > 0 ? cfg.threads : default_threads(); }

// ---- construct ------------------------------------------------------------------

int cmd_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const WeightSpec spec = cfg.spec();
    if (cfg.p == 1.0) {
        const auto sc = check_smallness(spec.beta, spec.b);
        if (!sc.ok)
            err << "warning: smallness condition for p = 1 fails (sum of beta = " << sc.sum
                << ", required below " << sc.threshold << "); constructing anyway\n";
    }
    const CbcResult res = cbc_construct(find_irreducible(cfg.b, cfg.m), cfg.s, spec);
    emit(cfg, io::vector_file_text(res, cfg.timing), out);
    return kOk;
}

// ---- points -----------------------------------------------------------------------

int cmd_points(const RunConfig& cfg, std::ostream& out) {
    const auto vf = io::parse_vector_file(io::read_file(cfg.in));
    const PointSet pts = interlaced_points(vf.rule);
    std::ostringstream os;
    io::write_points_csv(os, pts, cfg.exact, cfg.count);
    emit(cfg, os.str(), out);
    return kOk;
}

// ---- bound ------------------------------------------------------------------------

int cmd_bound(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    WeightSpec spec = cfg.spec();
    int m = cfg.m;
    std::size_t s = cfg.s;
    std::optional<double> criterion;
    if (!cfg.in.empty()) {
        const auto vf = io::parse_vector_file(io::read_file(cfg.in));
        if (vf.weights) spec = *vf.weights;
        spec.b = vf.rule.base.base();
        spec.alpha = vf.rule.alpha;
        spec.validate();
        m = vf.rule.base.m();
        s = vf.rule.s();
        if (vf.construction && !vf.construction->e_trace.empty())
            criterion = vf.construction->e_trace.back();
        else if (vf.rule.alpha >= 2)
            criterion = criterion_trace(vf.rule.base.modulus, vf.rule.base.q, spec).back();
    }
    const BoundReport rep = optimize_lambda(spec, m, s);
    if (rep.smallness && !rep.smallness->ok)
        err << "warning: smallness condition for p = 1 fails (sum of beta = " << rep.smallness->sum
            << ", required below " << rep.smallness->threshold << ")\n";

    std::ostringstream os;
    if (cfg.format == "json") {
        io::Json j = io::to_json(rep);
        if (criterion) j["criterion"] = *criterion;
        os << j.dump(2) << '\n';
    } else {
        os << "lambda,bound\n";
        for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
            os << io::format_double(rep.lambdas[i]) << ',' << io::format_double(rep.bounds[i]) << '\n';
        os << "# certified minimum " << io::format_double(rep.best_bound) << " at lambda "
           << io::format_double(rep.best_lambda) << '\n';
        if (criterion) os << "# criterion E(q) " << io::format_double(*criterion) << '\n';
    }
    emit(cfg, os.str(), out);
    return kOk;
}

// ---- verify -----------------------------------------------------------------------

// Read points written by cmd_points in either mode.
PointSet read_points_csv(const std::string& text, const InterlacedRule& rule) {
    const unsigned b = rule.base.base();
    const int digits = rule.alpha * rule.base.m();
    const std::uint64_t N = rule.base.num_points();
    const std::size_t s = rule.s();
    const std::uint64_t den = ipow(b, static_cast<unsigned>(digits));
    PointSet pts(b, digits, s, N);
    std::istringstream in(text);
    std::string line;
    std::uint64_t n = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (n >= N) throw Error("points file has more rows than the rule has points");
        std::istringstream row(line);
        std::string cell;
        std::size_t j = 0;
        while (std::getline(row, cell, ',')) {
            if (j >= s) throw Error("points file row " + std::to_string(n) + " has too many columns");
            const auto slash = cell.find('/');
            std::uint64_t num = 0;
            if (slash != std::string::npos) {
                num = std::stoull(cell.substr(0, slash));
                if (std::stoull(cell.substr(slash + 1)) != den)
                    throw Error("points file denominator does not match the rule");
            } else {
                if (den > (std::uint64_t{1} << 53))
                    throw Error("float points cannot represent this precision; use --exact");
                num = static_cast<std::uint64_t>(std::llround(std::stod(cell) * static_cast<double>(den)));
            }
            if (num >= den) throw Error("point coordinate outside [0,1)");
            pts.numerator(n, j++) = num;
        }
        if (j != s) throw Error("points file row " + std::to_string(n) + " has too few columns");
        ++n;
    }
    if (n != N) throw Error("points file has " + std::to_string(n) + " rows, expected " + std::to_string(N));
    return pts;
}

void report(const SuiteResult& r, std::ostream& out) {
    out << "suite " << r.name << ": " << r.passed << "/" << r.total << " passed in " << std::fixed
        << std::setprecision(2) << r.seconds << "s " << (r.ok() ? "PASS" : "FAIL") << '\n';
    out.unsetf(std::ios::floatfield);
    for (const auto& f : r.failures) out << "  failure: " << f << '\n';
}

std::vector<SuiteResult> verify_file(const RunConfig& cfg) {
    const auto vf = io::parse_vector_file(io::read_file(cfg.in));
    const auto& rule = vf.rule;
    std::vector<SuiteResult> results;

    const PointSet pts = cfg.points.empty() ? interlaced_points(rule)
                                            : read_points_csv(io::read_file(cfg.points), rule);
    results.push_back(suite_character_sums_points(rule, pts, 4096, 1));

    if (rule.alpha >= 2) {
        WeightSpec spec = vf.weights ? *vf.weights : RunConfig{}.spec();
        spec.b = rule.base.base();
        spec.alpha = rule.alpha;
        CbcResult res{rule.base.modulus, rule.alpha, rule.base.q, {}, spec, 0.0, 0.0};
        res.e_trace = criterion_trace(rule.base.modulus, rule.base.q, spec);

        SuiteResult crit;
        crit.name = "stored-criterion";
        if (vf.construction) {
            const auto& stored = vf.construction->e_trace;
            bool ok = stored.size() == res.e_trace.size();
            for (std::size_t i = 0; ok && i < stored.size(); ++i)
                ok = std::abs(stored[i] - res.e_trace[i]) <= 1e-10 * std::abs(res.e_trace[i]);
            crit.record(ok, "stored E_trace differs from the recomputed criterion");
            results.push_back(crit);
        }
        if (rule.base.num_points() <= 32 && rule.base.dim() <= 6)
            results.push_back(suite_kernel_identity({res}));
    }
    return results;
}

std::vector<SuiteResult> verify_preset(const RunConfig& cfg) {
    const bool desk = cfg.preset == "desk";
    const auto grid = desk ? make_grid({2, 3}, 2, 5, {2, 3}, 3) : make_grid({2}, 2, 3, {2, 3}, 2);
    std::vector<SuiteResult> results;
    results.push_back(suite_cbc_equivalence(grid));
    results.push_back(desk ? suite_rader(2, 3, 10, 20, 1) : suite_rader(2, 3, 6, 5, 1));

    std::vector<CbcResult> rules;
    for (const auto& c : grid) {
        if (ipow(c.b, static_cast<unsigned>(c.m)) > 32 || c.alpha * static_cast<int>(c.s) > 6) continue;
        rules.push_back(cbc_construct(find_irreducible(c.b, c.m), c.s, grid_spec(c)));
    }
    results.push_back(suite_character_sums(rules, desk ? 200 : 50, 7));
    results.push_back(suite_kernel_identity(rules));
    results.push_back(suite_mu_inequality(2, {2, 3}, desk ? 4 : 3));
    return results;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const auto results = cfg.in.empty() ? verify_preset(cfg) : verify_file(cfg);
    bool ok = true;
    for (const auto& r : results) {
        report(r, out);
        ok = ok && r.ok();
    }
    out << (ok ? "verify: all suites passed\n" : "verify: FAILED\n");
    return ok ? kOk : kVerifyFailed;
}

// ---- converge ---------------------------------------------------------------------

int cmd_converge(const RunConfig& cfg, std::ostream& out) {
    ConvergenceConfig cc;
    cc.integrand = parse_integrand_kind(cfg.integrand);
    cc.b = cfg.b;
    cc.m_min = cfg.m_min;
    cc.m_max = cfg.m_max;
    cc.s = cfg.s;
    cc.alpha = cfg.resolved_alpha();
    cc.family = cfg.family;
    cc.beta = cfg.beta();
    cc.baseline = cfg.baseline;
    cc.threads = threads_of(cfg);
    const ConvergenceReport rep = convergence_experiment(cc);
    const std::string csv = io::convergence_csv(rep);
    const std::string json = io::to_json(rep).dump(2) + "\n";
    if (!cfg.out.empty()) {
        io::write_file(cfg.out + ".csv", csv);
        io::write_file(cfg.out + ".json", json);
    } else {
        out << (cfg.format == "json" ? json : csv);
    }
    return kOk;
}

// ---- option wiring ----------------------------------------------------------------

struct Binding {
    CLI::App* owner;
    CLI::Option* opt;
    std::function<void(RunConfig&, const RunConfig&)> copy;
};

template <class T>
void bind_option(CLI::App* sub, std::vector<Binding>& binds, const std::string& name, T RunConfig::*field,
          RunConfig& cfg, const std::string& help) {
    auto* opt = sub->add_option(name, cfg.*field, help);
    binds.push_back({sub, opt, [field](RunConfig& dst, const RunConfig& src) { dst.*field = src.*field; }});
}

void bind_flag(CLI::App* sub, std::vector<Binding>& binds, const std::string& name,
               bool RunConfig::*field, RunConfig& cfg, const std::string& help) {
    auto* opt = sub->add_flag(name, cfg.*field, help);
    binds.push_back({sub, opt, [field](RunConfig& dst, const RunConfig& src) { dst.*field = src.*field; }});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interlaced polynomial lattice rules: construction, bounds and checks", "hoqmc"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string family = "spod";
    std::string config_path;
    std::vector<Binding> binds;

    auto add_rule_flags = [&](CLI::App* sub) {
        bind_option(sub, binds, "--b", &RunConfig::b, cfg, "prime base");
        bind_option(sub, binds, "--m", &RunConfig::m, cfg, "log_b of the number of points");
        bind_option(sub, binds, "--s", &RunConfig::s, cfg, "dimension");
        bind_option(sub, binds, "--p", &RunConfig::p, cfg, "summability exponent in (0,1]");
        bind_option(sub, binds, "--alpha", &RunConfig::alpha, cfg, "interlacing factor (default floor(1/p)+1)");
        auto* w = sub->add_option("--weights", family, "weight family")
                      ->check(CLI::IsMember({"spod", "product"}));
        binds.push_back({sub, w, [](RunConfig& dst, const RunConfig& src) { dst.family = src.family; }});
        bind_option(sub, binds, "--beta-c", &RunConfig::beta_c, cfg, "beta_j = c j^-theta");
        bind_option(sub, binds, "--beta-theta", &RunConfig::beta_theta, cfg, "decay exponent theta");
        bind_option(sub, binds, "--beta-list", &RunConfig::beta_list, cfg, "explicit beta_1,beta_2,...");
        binds.back().opt->delimiter(',');
    };
    auto add_io_flags = [&](CLI::App* sub) {
        bind_option(sub, binds, "--out", &RunConfig::out, cfg, "output path (default stdout)");
        bind_option(sub, binds, "--threads", &RunConfig::threads, cfg, "worker threads (default HOQMC_THREADS or 1)");
        bind_option(sub, binds, "--format", &RunConfig::format, cfg, "csv or json");
        sub->add_option("--config", config_path, "JSON run config; flags override it");
    };

    auto* construct = app.add_subcommand("construct", "build a generating vector by fast CBC");
    add_rule_flags(construct);
    add_io_flags(construct);
    bind_flag(construct, binds, "--timing", &RunConfig::timing, cfg, "record wall time in the file");

    auto* points = app.add_subcommand("points", "emit the points of a vector file as CSV");
    bind_option(points, binds, "--in", &RunConfig::in, cfg, "generating-vector file");
    binds.back().opt->check(CLI::ExistingFile);
    bind_option(points, binds, "--count", &RunConfig::count, cfg, "number of rows (default all)");
    bind_flag(points, binds, "--exact", &RunConfig::exact, cfg, "write numerator/denominator pairs");
    add_io_flags(points);

    auto* bound = app.add_subcommand("bound", "certified CBC bound over the lambda grid");
    add_rule_flags(bound);
    add_io_flags(bound);
    bind_option(bound, binds, "--in", &RunConfig::in, cfg, "generating-vector file (overrides rule flags)");

    auto* verify = app.add_subcommand("verify", "run the cross-module oracle suites");
    bind_option(verify, binds, "--preset", &RunConfig::preset, cfg, "smoke or desk");
    bind_option(verify, binds, "--in", &RunConfig::in, cfg, "verify one generating-vector file instead");
    bind_option(verify, binds, "--points", &RunConfig::points, cfg, "points CSV to check against --in");
    add_io_flags(verify);

    auto* converge = app.add_subcommand("converge", "convergence experiment");
    add_rule_flags(converge);
    add_io_flags(converge);
    bind_option(converge, binds, "--m-min", &RunConfig::m_min, cfg, "smallest m");
    bind_option(converge, binds, "--m-max", &RunConfig::m_max, cfg, "largest m");
    bind_option(converge, binds, "--integrand", &RunConfig::integrand, cfg, "model, product or constant");
    bind_flag(converge, binds, "--baseline", &RunConfig::baseline, cfg, "add the classical rule baseline");

    std::vector<std::string> argv_store{"hoqmc"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    try {
        cfg.family = parse_weight_family(family);
        cfg.command = chosen->get_name();
        if (!config_path.empty()) {
            RunConfig base = run_config_from_json(io::Json::parse(io::read_file(config_path)));
            base.command = cfg.command;
            for (const auto& bnd : binds)
                if (bnd.opt->count() > 0 && bnd.owner == chosen) bnd.copy(base, cfg);
            cfg = base;
        }
        cfg.validate();

        if (cfg.command == "construct") return cmd_construct(cfg, out, err);
        if (cfg.command == "points") return cmd_points(cfg, out);
        if (cfg.command == "bound") return cmd_bound(cfg, out, err);
        if (cfg.command == "verify") return cmd_verify(cfg, out);
        if (cfg.command == "converge") return cmd_converge(cfg, out);
        err << "error: unknown command\n";
        return kUsage;
    } catch (const EnvelopeError& e) {
        err << "error: numeric envelope exceeded: " << e.what() << '\n';
        return kEnvelope;
    } catch (const io::Json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace hoqmc::cli
