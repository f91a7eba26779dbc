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

#include "lpseries/rng.hpp"

#include <cmath>
#include <numbers>

namespace lpseries {

std::uint64_t splitmix64(std::uint64_t x)
{
    std::uint64_t z = x + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

PhiloxCounter philox4x32(PhiloxCounter c, PhiloxKey k)
{
    constexpr std::uint32_t m0 = 0xD2511F53u;
    constexpr std::uint32_t m1 = 0xCD9E8D57u;
    constexpr std::uint32_t w0 = 0x9E3779B9u;
    constexpr std::uint32_t w1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(m0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(m1) * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += w0;
        k[1] += w1;
    }
    return c;
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index)
{
    const std::uint64_t key =
        splitmix64(splitmix64(master_seed) ^ splitmix64(~stream_index));
    key_ = {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
}

PhiloxCounter RandomStream::block(std::uint64_t index) const
{
    return philox4x32({static_cast<std::uint32_t>(index),
                       static_cast<std::uint32_t>(index >> 32), 0u, 0u},
                      key_);
}

std::array<double, 2> RandomStream::uniforms(std::uint64_t index) const
{
    const PhiloxCounter b = block(index);
    const std::uint64_t a = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
    const std::uint64_t c = (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
    // Top 53 bits, shifted by half an ulp so 0 and 1 are excluded.
    constexpr double scale = 0x1.0p-53;
    return {(static_cast<double>(a >> 11) + 0.5) * scale,
            (static_cast<double>(c >> 11) + 0.5) * scale};
}

std::complex<double> RandomStream::complex_gaussian(std::uint64_t index) const
{
    const auto [u1, u2] = uniforms(index);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

double RandomStream::complex_gaussian_norm(std::uint64_t index) const
{
    return -2.0 * std::log(uniforms(index)[0]);
}

std::vector<std::complex<double>> sample_complex_gaussian(
    const RandomStream& stream, std::size_t count, std::uint64_t first)
{
    std::vector<std::complex<double>> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = stream.complex_gaussian(first + i);
    return out;
}

}  // namespace lpseries
