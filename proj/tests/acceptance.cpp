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


// Runs every acceptance criterion and prints one PASS/FAIL line each.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "lpseries/verify.hpp"

int main(int argc, char** argv)
{
    lpseries::VerifyOptions options;
    if (argc > 1)
        options.master_seed = std::strtoull(argv[1], nullptr, 10);
    const auto results = lpseries::run_acceptance(options);
    bool all = true;
    for (const auto& r : results) {
        char seconds[32];
        std::snprintf(seconds, sizeof seconds, "%.2f", r.seconds);
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.number << ". " << r.id
                  << " (" << seconds << " s)";
        if (!r.passed)
            std::cout << "\n      " << r.failure;
        std::cout << '\n';
        all = all && r.passed;
    }
    std::cout << (all ? "all acceptance criteria passed" : "acceptance FAILED") << '\n';
    return all ? 0 : 1;
}
