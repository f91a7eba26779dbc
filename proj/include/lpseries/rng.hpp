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

#ifndef LPSERIES_RNG_HPP
#define LPSERIES_RNG_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lpseries {

/// SplitMix64 finalizer: a bijective 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t x);

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32-10 block function.
PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

/**
 * Counter-based random stream.  The key is derived from (master seed,
 * stream index) through SplitMix64, and the n-th variate is a pure function
 * of the key and n, so draws are random-access: the first N coefficients of
 * a stream are the same whatever N is requested.
 */
class RandomStream
{
  public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    /// Raw 128-bit block for counter `index`.
    PhiloxCounter block(std::uint64_t index) const;

    /// Two uniforms on (0, 1) with 53 random bits each.
    std::array<double, 2> uniforms(std::uint64_t index) const;

    /// X1 + i X2 with X1, X2 independent standard normals (Box-Muller on
    /// block `index`), so E|g|^2 = 2.
    std::complex<double> complex_gaussian(std::uint64_t index) const;

    /// |complex_gaussian(index)|^2 = -2 log u1 without the trigonometry
    /// (equal up to rounding).
    double complex_gaussian_norm(std::uint64_t index) const;

  private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    PhiloxKey key_;
};

/// complex_gaussian(first), ..., complex_gaussian(first + count - 1).
std::vector<std::complex<double>> sample_complex_gaussian(
    const RandomStream& stream, std::size_t count, std::uint64_t first = 0);

}  // namespace lpseries

#endif  // LPSERIES_RNG_HPP
