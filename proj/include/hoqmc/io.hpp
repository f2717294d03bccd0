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

// JSON and CSV formats. Polynomials are written as base-b integer encodings
// (constant coefficient = least significant digit).

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hoqmc/bounds.hpp"
#include "hoqmc/cbc.hpp"
#include "hoqmc/integrands.hpp"
#include "hoqmc/pointgen.hpp"
#include "hoqmc/weights.hpp"

namespace hoqmc::io {

using Json = nlohmann::ordered_json;

Json to_json(const BetaSequence& beta);
BetaSequence beta_from_json(const Json& j, double p);

/// {family, b, alpha, beta: {...}, p}
Json to_json(const WeightSpec& spec);
WeightSpec weight_spec_from_json(const Json& j);

struct ConstructionInfo {
    WeightFamily family = WeightFamily::Spod;
    std::vector<double> e_trace;
    std::optional<double> wall_time;
};

/// Parsed generating-vector file.
struct VectorFile {
    InterlacedRule rule;
    std::optional<WeightSpec> weights;
    std::optional<ConstructionInfo> construction;
};

/// {b, m, s, alpha, P, q, weights, construction{family, E_trace[, wall_time]}}.
Json vector_file_json(const CbcResult& result, bool with_timing);
std::string vector_file_text(const CbcResult& result, bool with_timing);

/// Parse and validate a generating-vector file; throws Error on malformed
/// input.
VectorFile parse_vector_file(const std::string& text);

/// One row per point. Float mode writes 17 significant digits; exact mode
/// writes numerator/denominator pairs. count = 0 writes all points.
void write_points_csv(std::ostream& os, const PointSet& pts, bool exact, std::uint64_t count = 0);

Json to_json(const BoundReport& rep);

Json to_json(const ConvergenceConfig& cfg);
ConvergenceConfig convergence_config_from_json(const Json& j);

/// Columns m, N, error, bound, then estimate, criterion, rule_id, used_in_fit
/// (and baseline_error when a baseline was run).
std::string convergence_csv(const ConvergenceReport& rep);
Json to_json(const ConvergenceReport& rep);

/// printf-style "%.17g".
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace hoqmc::io
