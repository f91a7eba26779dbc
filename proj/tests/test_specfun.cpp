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
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lpseries/specfun.hpp"
#include "oracles.hpp"

using namespace lpseries;

TEST_CASE("gamma at integers and half integers")
{
    CHECK(lpseries::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lpseries::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    // Gamma(1/2) = 2 int_0^inf exp(-u^2) du; the tail past u = 10 is < 1e-40.
    const double oracle =
        2.0 * oracle::integrate([](double u) { return std::exp(-u * u); }, 0.0, 10.0);
    CHECK(std::abs(oracle - std::sqrt(std::numbers::pi)) < 1e-12);
    CHECK(std::abs(lpseries::gamma(0.5) - oracle) < 1e-12);
}

TEST_CASE("gamma agrees with the standard library across its range")
{
    for (double x = 0.05; x < 60.0; x += 0.37)
        CHECK(lpseries::gamma(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
}

TEST_CASE("gamma recurrence")
{
    for (double x = 0.3; x < 20.0; x += 0.71)
        CHECK(lpseries::gamma(x + 1.0) ==
              doctest::Approx(x * lpseries::gamma(x)).epsilon(1e-13));
}

TEST_CASE("gamma rejects nonpositive arguments")
{
    CHECK_THROWS_AS(lpseries::gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(lpseries::gamma(-1.5), std::domain_error);
    CHECK_THROWS_AS(lpseries::gamma(std::nan("")), std::domain_error);
}

TEST_CASE("bessel_j special values")
{
    CHECK(bessel_j(BesselOrder(0.0), 0.0) == 1.0);
    CHECK(bessel_j(BesselOrder(1.0), 0.0) == 0.0);
    CHECK(std::abs(bessel_j(BesselOrder(0.5), std::numbers::pi)) <= 1e-10);
    const double z = oracle::bisect(oracle::j0_series, 2.0, 3.0);
    CHECK(std::abs(z - 2.404825557695773) < 1e-12);
    CHECK(std::abs(bessel_j(BesselOrder(0.0), 2.404825557695773)) <= 1e-9);
}

TEST_CASE("bessel_j matches the closed-form half-order function")
{
    const BesselOrder half(0.5);
    for (double r = 0.01; r < 300.0; r *= 1.13)
        CHECK(std::abs(bessel_j(half, r) - oracle::j_half(r)) <= 1e-12);
}

TEST_CASE("bessel_j matches std::cyl_bessel_j for the dimensions in use")
{
    for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        const BesselOrder order(nu);
        for (double r = 0.0; r < 400.0; r += 0.731) {
            const double ref = std::cyl_bessel_j(nu, r);
            CHECK_MESSAGE(std::abs(bessel_j(order, r) - ref) <= 2e-13,
                          "nu=" << nu << " r=" << r);
        }
    }
}

TEST_CASE("series and asymptotic branches agree on their overlap")
{
    for (double nu : {0.0, 0.5, 1.0, 2.0}) {
        const BesselOrder order(nu);
        const double cut = bessel_series_cutoff(order);
        for (double r = cut - 2.0; r <= cut + 2.0; r += 0.25)
            CHECK(std::abs(bessel_j_series(order, r) - bessel_j_asymptotic(order, r)) <=
                  1e-12);
    }
}

TEST_CASE("bessel_j derivative against central differences")
{
    for (double nu : {0.0, 1.0, 1.5}) {
        const BesselOrder order(nu);
        for (double r = 0.5; r < 50.0; r += 1.7) {
            const double h = 1e-5;
            const double fd =
                (bessel_j(order, r + h) - bessel_j(order, r - h)) / (2.0 * h);
            CHECK(std::abs(bessel_j_derivative(order, r) - fd) <= 1e-8);
        }
    }
}

TEST_CASE("bessel_j domain errors")
{
    CHECK_THROWS_AS(bessel_j(BesselOrder(0.0), -1.0), std::domain_error);
    CHECK_THROWS_AS(BesselOrder(-0.5), std::domain_error);
    CHECK_THROWS_AS(BesselOrder::from_dimension(1), std::domain_error);
    CHECK(BesselOrder::from_dimension(5).value() == 1.5);
}

TEST_CASE("kernel G values")
{
    CHECK(kernel_g(2, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kernel_g(4, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(kernel_g(3, 1.0) - std::sqrt(2.0 / std::numbers::pi) * std::sin(1.0)) <=
          1e-10);
    for (int d = 2; d <= 6; ++d) {
        CHECK(kernel_g_at_zero(d) == doctest::Approx(kernel_g(d, 0.0)).epsilon(1e-15));
        // Continuous at the origin.
        CHECK(std::abs(kernel_g(d, 1e-6) - kernel_g(d, 0.0)) <= 1e-11);
    }
}

TEST_CASE("kernel G equals s^-nu J_nu(s) away from the origin")
{
    for (int d = 2; d <= 5; ++d) {
        const double nu = (d - 2) / 2.0;
        for (double s = 0.3; s < 80.0; s += 1.37)
            CHECK(std::abs(kernel_g(d, s) - std::pow(s, -nu) * std::cyl_bessel_j(nu, s)) <=
                  1e-13);
    }
}

TEST_CASE("zeros of the half-order function are multiples of pi")
{
    const ZeroTable table = bessel_zeros(BesselOrder(0.5), 100);
    REQUIRE(table.size() == 100);
    for (std::size_t n = 1; n <= 100; ++n) {
        const double exact = std::numbers::pi * static_cast<double>(n);
        CHECK(std::abs(table.zero(n) - exact) / exact <= 1e-10);
    }
}

TEST_CASE("first zero of J_0 against bisection on the power series")
{
    const double oracle_zero = oracle::bisect(oracle::j0_series, 2.0, 3.0);
    CHECK(std::abs(bessel_zeros(BesselOrder(0.0), 1).zero(1) - oracle_zero) <= 1e-10);
}

TEST_CASE("J_0 zeros approach (n - 1/4) pi")
{
    const ZeroTable table = bessel_zeros(BesselOrder(0.0), 100);
    CHECK(std::abs(table.zero(100) - 99.75 * std::numbers::pi) <= 1e-3);
}

TEST_CASE("zero tables match std::cyl_bessel_j sign changes and skip none")
{
    for (double nu : {0.0, 0.5, 1.0, 1.5}) {
        const BesselOrder order(nu);
        const ZeroTable table = bessel_zeros(order, 200);
        for (std::size_t n = 1; n <= 200; ++n) {
            const double z = table.zero(n);
            CHECK(std::abs(std::cyl_bessel_j(nu, z)) <= 1e-12);
            if (n > 1) {
                const double gap = z - table.zero(n - 1);
                CHECK(gap > 2.5);
                CHECK(gap < 4.0);
            }
        }
        // Sign-change count on (0, z_200 + pi/2] equals the table length.
        const double end = table.zero(200) + 1.5;
        CHECK(count_sign_changes(order, 1e-3, end, 0.05) == 200);
    }
}

TEST_CASE("zero gaps tend to pi")
{
    const ZeroTable table = bessel_zeros(BesselOrder(1.0), 1000);
    CHECK(std::abs(table.zero(1000) - table.zero(999) - std::numbers::pi) < 1e-4);
}

TEST_CASE("McMahon estimate is close to the refined zero")
{
    const BesselOrder order(1.0);
    const ZeroTable table = bessel_zeros(order, 50);
    for (std::size_t n = 5; n <= 50; ++n)
        CHECK(std::abs(mcmahon_zero_estimate(order, n) - table.zero(n)) < 1e-3);
}

TEST_CASE("zero table access and csv")
{
    const ZeroTable table = bessel_zeros(BesselOrder(0.0), 3);
    CHECK_THROWS_AS(table.zero(0), std::out_of_range);
    CHECK_THROWS_AS(table.zero(4), std::out_of_range);
    CHECK_THROWS_AS(bessel_zeros(BesselOrder(0.0), 0), std::invalid_argument);
    std::ostringstream out;
    write_zero_table_csv(table, out);
    CHECK(out.str().rfind("n,z_n\n1,2.404825557695", 0) == 0);
}
