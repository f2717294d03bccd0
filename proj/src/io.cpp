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

#include "hoqmc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hoqmc::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---- weights ------------------------------------------------------------------

Json to_json(const BetaSequence& beta) {
    Json j;
    if (beta.kind == BetaSequence::Kind::Power) {
        j["kind"] = "power";
        j["c"] = beta.c;
        j["theta"] = beta.theta;
    } else {
        j["kind"] = "list";
        j["values"] = beta.values;
    }
    return j;
}

BetaSequence beta_from_json(const Json& j, double p) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "power")
        return BetaSequence::power(j.at("c").get<double>(), j.at("theta").get<double>(), p);
    if (kind == "list") return BetaSequence::list(j.at("values").get<std::vector<double>>(), p);
    throw Error("beta kind must be 'power' or 'list', got '" + kind + "'");
}

Json to_json(const WeightSpec& spec) {
    Json j;
    j["family"] = to_string(spec.family);
    j["b"] = spec.b;
    j["alpha"] = spec.alpha;
    j["beta"] = to_json(spec.beta);
    j["p"] = spec.beta.p;
    return j;
}

WeightSpec weight_spec_from_json(const Json& j) {
    WeightSpec spec;
    spec.family = parse_weight_family(j.at("family").get<std::string>());
    spec.b = j.at("b").get<unsigned>();
    spec.alpha = j.at("alpha").get<int>();
    spec.beta = beta_from_json(j.at("beta"), j.at("p").get<double>());
    spec.validate();
    return spec;
}

// ---- generating vectors -------------------------------------------------------

Json vector_file_json(const CbcResult& result, bool with_timing) {
    Json j;
    j["b"] = result.base();
    j["m"] = result.m();
    j["s"] = result.s();
    j["alpha"] = result.alpha;
    j["P"] = result.modulus.poly().encode();
    Json q = Json::array();
    for (const auto& p : result.q) q.push_back(p.encode());
    j["q"] = q;
    j["weights"] = to_json(result.spec);
    Json c;
    c["family"] = to_string(result.spec.family);
    c["E_trace"] = result.e_trace;
    if (with_timing) c["wall_time"] = result.wall_time;
    j["construction"] = c;
    return j;
}

std::string vector_file_text(const CbcResult& result, bool with_timing) {
    return vector_file_json(result, with_timing).dump(2) + "\n";
}

VectorFile parse_vector_file(const std::string& text) {
    try {
        const Json j = Json::parse(text);
        const auto b = j.at("b").get<unsigned>();
        const auto m = j.at("m").get<int>();
        const auto s = j.at("s").get<std::size_t>();
        const auto alpha = j.at("alpha").get<int>();
        if (b < 2 || !is_prime(b)) throw Error("b must be prime");
        if (m < 1) throw Error("m must be positive");
        if (s < 1) throw Error("s must be positive");
        if (alpha < 1) throw Error("alpha must be positive");

        const auto P = PolyGF::from_encoding(b, j.at("P").get<std::uint64_t>());
        if (P.degree() != m) throw Error("P does not have degree m");
        const auto codes = j.at("q").get<std::vector<std::uint64_t>>();
        if (codes.size() != s * static_cast<std::size_t>(alpha))
            throw Error("q must hold alpha * s encodings");
        const std::uint64_t N = ipow(b, static_cast<unsigned>(m));
        std::vector<PolyGF> q;
        for (auto code : codes) {
            if (code >= N) throw Error("q entry has degree >= m");
            q.push_back(PolyGF::from_encoding(b, code));
        }
        VectorFile out{InterlacedRule{alpha, PolyLatticeRule{Modulus(P), std::move(q)}}, {}, {}};
        out.rule.validate();

        if (j.contains("weights")) out.weights = weight_spec_from_json(j.at("weights"));
        if (j.contains("construction")) {
            const auto& c = j.at("construction");
            ConstructionInfo info;
            info.family = parse_weight_family(c.at("family").get<std::string>());
            info.e_trace = c.at("E_trace").get<std::vector<double>>();
            if (c.contains("wall_time")) info.wall_time = c.at("wall_time").get<double>();
            out.construction = info;
        }
        return out;
    } catch (const Json::exception& e) {
        throw Error(std::string("malformed vector file: ") + e.what());
    }
}

// ---- points -------------------------------------------------------------------

void write_points_csv(std::ostream& os, const PointSet& pts, bool exact, std::uint64_t count) {
    const std::uint64_t n = count == 0 ? pts.size() : std::min(count, pts.size());
    const std::uint64_t den = ipow(pts.base(), static_cast<unsigned>(pts.digits()));
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < pts.dim(); ++j) {
            if (j) os << ',';
            if (exact)
                os << pts.numerator(i, j) << '/' << den;
            else
                os << format_double(pts.value(i, j));
        }
        os << '\n';
    }
}

// ---- bounds -------------------------------------------------------------------

Json to_json(const BoundReport& rep) {
    Json j;
    j["b"] = rep.b;
    j["m"] = rep.m;
    j["s"] = rep.s;
    j["alpha"] = rep.alpha;
    j["p"] = rep.p;
    j["family"] = to_string(rep.family);
    Json rows = Json::array();
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
        rows.push_back({{"lambda", rep.lambdas[i]}, {"bound", rep.bounds[i]}});
    j["table"] = rows;
    j["best_lambda"] = rep.best_lambda;
    j["best_bound"] = rep.best_bound;
    j["bound_at_p"] = rep.bound_at_p;
    if (rep.smallness) {
        j["smallness"] = {{"ok", rep.smallness->ok},
                          {"sum", rep.smallness->sum},
                          {"threshold", rep.smallness->threshold}};
    }
    return j;
}

// ---- convergence ----------------------------------------------------------------

Json to_json(const ConvergenceConfig& cfg) {
    Json j;
    j["integrand"] = to_string(cfg.integrand);
    j["b"] = cfg.b;
    j["m_min"] = cfg.m_min;
    j["m_max"] = cfg.m_max;
    j["s"] = cfg.s;
    j["alpha"] = cfg.alpha;
    j["family"] = to_string(cfg.family);
    j["beta"] = to_json(cfg.beta);
    j["p"] = cfg.beta.p;
    j["baseline"] = cfg.baseline;
    return j;
}

ConvergenceConfig convergence_config_from_json(const Json& j) {
    ConvergenceConfig cfg;
    cfg.integrand = parse_integrand_kind(j.at("integrand").get<std::string>());
    cfg.b = j.at("b").get<unsigned>();
    cfg.m_min = j.at("m_min").get<int>();
    cfg.m_max = j.at("m_max").get<int>();
    cfg.s = j.at("s").get<std::size_t>();
    cfg.alpha = j.at("alpha").get<int>();
    cfg.family = parse_weight_family(j.at("family").get<std::string>());
    cfg.beta = beta_from_json(j.at("beta"), j.at("p").get<double>());
    cfg.baseline = j.at("baseline").get<bool>();
    return cfg;
}

std::string convergence_csv(const ConvergenceReport& rep) {
    std::ostringstream os;
    const bool base = !rep.baseline_rows.empty();
    os << "m,N,error,bound,estimate,criterion,rule_id,used_in_fit";
    if (base) os << ",baseline_error";
    os << '\n';
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        os << r.m << ',' << r.N << ',' << format_double(r.error) << ',' << format_double(r.bound)
           << ',' << format_double(r.estimate) << ',' << format_double(r.criterion) << ','
           << r.rule_id << ',' << (r.used_in_fit ? 1 : 0);
        if (base) os << ',' << format_double(rep.baseline_rows[i].error);
        os << '\n';
    }
    return os.str();
}

namespace {

Json rows_json(const std::vector<ConvergenceRow>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
        out.push_back({{"m", r.m},
                       {"N", r.N},
                       {"rule_id", r.rule_id},
                       {"estimate", r.estimate},
                       {"error", r.error},
                       {"criterion", r.criterion},
                       {"bound", r.bound},
                       {"used_in_fit", r.used_in_fit}});
    }
    return out;
}

}  // namespace

Json to_json(const ConvergenceReport& rep) {
    Json j;
    j["config"] = to_json(rep.config);
    j["alpha"] = rep.alpha;
    j["integrand"] = rep.integrand;
    j["reference"] = {{"value", rep.reference.value},
                      {"uncertainty", rep.reference.uncertainty},
                      {"method", rep.reference.method}};
    j["norm_constant"] = rep.norm;
    j["rows"] = rows_json(rep.rows);
    j["slope"] = rep.slope ? Json(*rep.slope) : Json(nullptr);
    if (!rep.baseline_rows.empty()) {
        j["baseline_rows"] = rows_json(rep.baseline_rows);
        j["baseline_slope"] = rep.baseline_slope ? Json(*rep.baseline_slope) : Json(nullptr);
    }
    return j;
}

// ---- files --------------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace hoqmc::io
