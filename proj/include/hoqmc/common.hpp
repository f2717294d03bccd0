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
#include <stdexcept>
#include <string>
#include <vector>

namespace hoqmc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computation left its documented numeric envelope (overflow, pole,
/// oracle scale guard).
class EnvelopeError : public Error {
public:
    using Error::Error;
};

bool is_prime(std::uint64_t n);

/// Distinct prime factors of n in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// b^e; throws EnvelopeError on 64-bit overflow.
std::uint64_t ipow(std::uint64_t b, unsigned e);

/// Number of worker threads requested via HOQMC_THREADS, or 1.
int default_threads();

}  // namespace hoqmc
