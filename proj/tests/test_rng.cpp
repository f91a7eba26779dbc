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

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "lpseries/rng.hpp"

using namespace lpseries;

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) ==
          PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                     {0xffffffffu, 0xffffffffu}) ==
          PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                     {0xa4093822u, 0x299f31d0u}) ==
          PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("SplitMix64 reference outputs")
{
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(1) == 0x910a2dec89025cc1ULL);
}

TEST_CASE("streams are deterministic and random access")
{
    const RandomStream a(42, 7);
    const RandomStream b(42, 7);
    for (std::uint64_t i : {0ull, 1ull, 999ull, 1ull << 40})
        CHECK(a.complex_gaussian(i) == b.complex_gaussian(i));
    const auto head = sample_complex_gaussian(a, 100);
    const auto tail = sample_complex_gaussian(a, 10, 90);
    for (std::size_t k = 0; k < 10; ++k)
        CHECK(tail[k] == head[90 + k]);
    CHECK(a.master_seed() == 42);
    CHECK(a.stream_index() == 7);
}

TEST_CASE("distinct seeds and streams give distinct sequences")
{
    std::set<std::uint32_t> firsts;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        for (std::uint64_t stream = 0; stream < 20; ++stream)
            firsts.insert(RandomStream(seed, stream).block(0)[0]);
    CHECK(firsts.size() >= 399);
}

TEST_CASE("uniforms lie strictly inside (0, 1)")
{
    const RandomStream s(1, 0);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    constexpr int n = 200000;
    for (int i = 0; i < n; ++i) {
        const auto u = s.uniforms(i);
        for (double x : u) {
            CHECK_UNARY(x > 0.0);
            CHECK_UNARY(x < 1.0);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
            sum += x;
        }
    }
    CHECK(std::abs(sum / (2.0 * n) - 0.5) < 0.003);
}

TEST_CASE("complex Gaussian moments at 1e6 draws")
{
    const RandomStream s(2026, 3);
    constexpr std::size_t n = 1'000'000;
    std::complex<long double> mean = 0.0L;
    long double m2 = 0.0L, m4 = 0.0L, cross = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const auto g = s.complex_gaussian(i);
        mean += std::complex<long double>(g.real(), g.imag());
        const long double a = std::norm(g);
        m2 += a;
        m4 += a * a;
        cross += static_cast<long double>(g.real()) * g.imag();
    }
    CHECK(std::abs(mean / static_cast<long double>(n)) <= 0.005L);
    CHECK(std::abs(static_cast<double>(m2 / n) / 2.0 - 1.0) <= 0.01);
    CHECK(std::abs(static_cast<double>(m4 / n) / 8.0 - 1.0) <= 0.02);
    CHECK(std::abs(static_cast<double>(cross / n)) <= 0.01);
}

TEST_CASE("squared modulus shortcut equals the full draw")
{
    const RandomStream s(9, 9);
    for (std::uint64_t i = 0; i < 1000; ++i)
        CHECK(s.complex_gaussian_norm(i) ==
              doctest::Approx(std::norm(s.complex_gaussian(i))).epsilon(1e-14));
}
