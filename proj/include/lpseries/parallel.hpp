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

#ifndef LPSERIES_PARALLEL_HPP
#define LPSERIES_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace lpseries {

/// Process-wide worker count used by every parallel loop (default: hardware
/// concurrency).  Results never depend on it: work is split into disjoint
/// index ranges and reductions happen afterwards in index order.
std::size_t worker_count();
void set_worker_count(std::size_t workers);

/// Calls body(begin, end) on disjoint chunks covering [0, count).
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace lpseries

#endif  // LPSERIES_PARALLEL_HPP
