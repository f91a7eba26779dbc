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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "lpseries/verify.hpp"

using namespace lpseries;

namespace {

// Scales beta_3 by 1 + eps, as a corrupted normalizer table would.
RadialBasis corrupt_third_normalizer(const RadialBasis& basis, double eps)
{
    std::vector<double> normalizers;
    for (std::size_t n = 1; n <= basis.size(); ++n)
        normalizers.push_back(basis.normalizer(n) * (n == 3 ? 1.0 + eps : 1.0));
    return RadialBasis(basis.dimension(), basis.zeros(), normalizers);
}

}  // namespace

TEST_CASE("check ids are stable")
{
    const std::vector<std::string> ids = acceptance_check_ids();
    REQUIRE(ids.size() == 13);
    CHECK(ids.front() == "zero_accuracy");
    CHECK(ids[1] == "orthonormality");
    CHECK(ids.back() == "reproducibility");
}

TEST_CASE("corrupted normalizers fail the orthonormality check by name")
{
    VerifyOptions options;
    options.only = {"orthonormality"};
    options.basis_fault = [](const RadialBasis& b) { return corrupt_third_normalizer(b, 1e-3); };
    const std::vector<CheckResult> results = run_acceptance(options);
    REQUIRE(results.size() == 1);
    CHECK(results[0].id == "orthonormality");
    CHECK_FALSE(results[0].passed);
    CHECK(results[0].failure.find("expected <= 1e-6") != std::string::npos);
    CHECK(results[0].measured["max_gram_deviation_d2"].get<double>() > 1e-3);

    const nlohmann::json report = acceptance_report(results, options);
    CHECK_FALSE(report["all_passed"].get<bool>());
    CHECK(report["checks"][0]["id"] == "orthonormality");
    CHECK(report["checks"][0].contains("failure"));
}

TEST_CASE("an intact basis passes the same check")
{
    VerifyOptions options;
    options.only = {"orthonormality"};
    options.basis_fault = [](const RadialBasis& b) { return b; };
    const std::vector<CheckResult> results = run_acceptance(options);
    REQUIRE(results.size() == 1);
    CHECK(results[0].passed);
}

TEST_CASE("reports are deterministic and timings kept apart")
{
    VerifyOptions options;
    options.only = {"zero_accuracy", "moment_constants", "reproducibility"};
    const std::vector<CheckResult> a = run_acceptance(options);
    const std::vector<CheckResult> b = run_acceptance(options);
    REQUIRE(a.size() == 3);
    for (const auto& r : a)
        CHECK_MESSAGE(r.passed, r.id << ": " << r.failure);
    CHECK(acceptance_report(a, options).dump() == acceptance_report(b, options).dump());
    CHECK(acceptance_report(a, options).dump().find("seconds") == std::string::npos);
    const nlohmann::json timings = timing_report(a);
    REQUIRE(timings["checks"].size() == 3);
    CHECK(timings["checks"][0]["id"] == "zero_accuracy");
    CHECK(timings["checks"][0]["seconds"].get<double>() >= 0.0);
}

TEST_CASE("seed changes move Monte Carlo measurements")
{
    VerifyOptions a;
    a.only = {"moment_constants"};
    VerifyOptions b = a;
    b.master_seed = a.master_seed + 1;
    CHECK(run_acceptance(a)[0].measured != run_acceptance(b)[0].measured);
    CHECK(check_seed(1, 2) != check_seed(2, 1));
}

TEST_CASE("unknown ids are rejected")
{
    VerifyOptions options;
    options.only = {"no_such_check"};
    CHECK_THROWS_AS(run_acceptance(options), std::invalid_argument);
}
