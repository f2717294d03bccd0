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

#include <ostream>
#include <string>
#include <vector>

#include "hoqmc/io.hpp"

namespace hoqmc::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kVerifyFailed = 2,
    kEnvelope = 3,
};

struct RunConfig {
    std::string command;
    unsigned b = 2;
    int m = 10;
    int m_min = 6;
    int m_max = 14;
    std::size_t s = 10;
    double p = 0.6;
    int alpha = 0;  // 0: floor(1/p) + 1
    WeightFamily family = WeightFamily::Spod;
    double beta_c = 0.1;
    double beta_theta = 2.0;
    std::vector<double> beta_list;  // overrides the power law when set
    std::string integrand = "model";
    bool baseline = false;
    std::string preset = "smoke";
    std::string in;
    std::string points;
    std::string out;
    std::string format = "csv";
    std::uint64_t count = 0;
    bool exact = false;
    bool timing = false;
    int threads = 0;  // 0: HOQMC_THREADS or 1

    BetaSequence beta() const;
    WeightSpec spec() const;
    int resolved_alpha() const;
    /// Throws Error on an invalid combination.
    void validate() const;
};

io::Json to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const io::Json& j);

/// Run the command line; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hoqmc::cli
