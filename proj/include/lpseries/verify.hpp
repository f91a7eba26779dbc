// Copyright 2026 The lpseries Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LPSERIES_VERIFY_HPP
#define LPSERIES_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lpseries/basis.hpp"

namespace lpseries {

inline constexpr std::string_view library_version = "1.0.0";

/// Outcome of one acceptance check.  Everything except `seconds` is a
/// deterministic function of the options.
struct CheckResult
{
    int number = 0;
    std::string id;
    std::string title;
    bool passed = false;
    std::string expected;
    nlohmann::json measured;
    std::string failure;  // expected vs measured summary when failed
    double seconds = 0.0;
};

struct VerifyOptions
{
    std::uint64_t master_seed = 20260417;
    /// Check ids to run; empty means all.
    std::vector<std::string> only;
    /// Applied to every radial basis the orthonormality and normalizer
    /// checks build; lets tests corrupt a normalizer table.
    std::function<RadialBasis(const RadialBasis&)> basis_fault;
};

/// Ids in execution order.
std::vector<std::string> acceptance_check_ids();

std::vector<CheckResult> run_acceptance(const VerifyOptions& options);

/// Deterministic report: inputs, per-check verdicts and measured values.
nlohmann::json acceptance_report(const std::vector<CheckResult>& results,
                                 const VerifyOptions& options);

/// Per-check wall-clock seconds, kept apart from the report so that the
/// report stays byte-identical across runs.
nlohmann::json timing_report(const std::vector<CheckResult>& results);

/// Per-check seed: SplitMix64(SplitMix64(master) + check number), so nearby
/// master seeds do not share check streams.
std::uint64_t check_seed(std::uint64_t master_seed, int check_number);

}  // namespace lpseries

#endif  // LPSERIES_VERIFY_HPP
