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

#include "lpseries/specfun.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lpseries/io.hpp"

static_assert(LDBL_MANT_DIG >= 64,
              "the Bessel power series needs an extended-precision long double");

namespace lpseries {

namespace {

constexpr double pi = std::numbers::pi;

// Lanczos coefficients for g = 7, n = 9.
constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x)
{
    // Reflection keeps the approximation on x >= 0.5.
    if (x < 0.5)
        return pi / (std::sin(pi * x) * lanczos_gamma(1.0 - x));
    x -= 1.0;
    double a = lanczos_coef[0];
    const double t = x + lanczos_g + 0.5;
    for (std::size_t i = 1; i < lanczos_coef.size(); ++i)
        a += lanczos_coef[i] / (x + static_cast<double>(i));
    return std::sqrt(2.0 * pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

// sum_k (-s^2/4)^k / (k! Gamma(k + nu + 1)), compensated, in long double.
long double series_core(double nu, double s)
{
    const long double q = -static_cast<long double>(s) * s / 4.0L;
    long double term = 1.0L / static_cast<long double>(gamma(nu + 1.0));
    long double sum = term;
    long double carry = 0.0L;
    long double max_term = std::fabs(term);
    const long double peak = std::sqrt(std::fabs(q));
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<long double>(k) * (k + nu));
        const long double y = term - carry;
        const long double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        max_term = std::max(max_term, std::fabs(term));
        if (k > peak && std::fabs(term) < 1e-21L * max_term)
            break;
    }
    return sum;
}

constexpr double asymptotic_term_floor = 1e-17;

}  // namespace

//---------------------------------------------------------------------------//

BesselOrder::BesselOrder(double nu) : nu_(nu)
{
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw std::domain_error("BesselOrder: order must be finite and >= 0");
}

BesselOrder BesselOrder::from_dimension(int d)
{
    if (d < 2)
        throw std::domain_error("BesselOrder: dimension must be >= 2, got " +
                                std::to_string(d));
    return BesselOrder(0.5 * (d - 2));
}

//---------------------------------------------------------------------------//

double gamma(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("gamma: argument must be positive");
    // Exact products at small integers and half-integers, which the basis
    // normalization constants hit constantly.
    if (x <= 30.0) {
        if (x == std::floor(x)) {
            double f = 1.0;
            for (int k = 2; k < static_cast<int>(x); ++k)
                f *= k;
            return f;
        }
        if (x - 0.5 == std::floor(x - 0.5)) {
            double f = std::sqrt(pi);
            for (double k = 0.5; k < x; k += 1.0)
                f *= k;
            return f;
        }
    }
    return lanczos_gamma(x);
}

double bessel_series_cutoff(BesselOrder nu)
{
    // Series error grows like eps_ld * max term, asymptotic truncation error
    // decays like exp(-2r); for nu <= 3 they cross near 1e-14 at r = 15.
    const double v = nu.value();
    return v <= 3.0 ? 15.0 : 15.0 + v * v;
}

double bessel_j_series(BesselOrder nu, double r)
{
    if (!(r >= 0.0))
        throw std::domain_error("bessel_j: argument must be >= 0");
    const double v = nu.value();
    const long double scale =
        v == 0.0 ? 1.0L : std::pow(static_cast<long double>(r) / 2.0L, v);
    return static_cast<double>(scale * series_core(v, r));
}

double bessel_j_asymptotic(BesselOrder nu, double r)
{
    if (!(r > 0.0))
        throw std::domain_error("bessel_j_asymptotic: argument must be > 0");
    const double v = nu.value();
    const double mu = 4.0 * v * v;
    double p_sum = 1.0;
    double q_sum = 0.0;
    double term = 1.0;
    double previous = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * r);
        if (term == 0.0)
            break;  // half-integer order: the expansion terminates
        if (k > 3 && std::fabs(term) > std::fabs(previous))
            break;  // past the smallest term of the divergent expansion
        // P collects even k with alternating sign, Q the odd k.
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0)
            p_sum += sign * term;
        else
            q_sum += sign * term;
        if (std::fabs(term) < asymptotic_term_floor)
            break;
        previous = term;
    }
    const double chi = r - (0.5 * v + 0.25) * pi;
    return std::sqrt(2.0 / (pi * r)) *
           (p_sum * std::cos(chi) - q_sum * std::sin(chi));
}

double bessel_j(BesselOrder nu, double r)
{
    if (!(r >= 0.0))
        throw std::domain_error("bessel_j: argument must be >= 0");
    if (r <= bessel_series_cutoff(nu))
        return bessel_j_series(nu, r);
    return bessel_j_asymptotic(nu, r);
}

double bessel_j_derivative(BesselOrder nu, double r)
{
    const double v = nu.value();
    const BesselOrder next(v + 1.0);
    if (r == 0.0) {
        if (v == 0.0 || v > 1.0)
            return 0.0;
        if (v == 1.0)
            return 0.5;
        return INFINITY;
    }
    const double lead = v == 0.0 ? 0.0 : (v / r) * bessel_j(nu, r);
    return lead - bessel_j(next, r);
}

double kernel_g_at_zero(int d)
{
    const BesselOrder nu = BesselOrder::from_dimension(d);
    return 1.0 / (std::pow(2.0, nu.value()) * gamma(0.5 * d));
}

double kernel_g(int d, double s)
{
    const BesselOrder nu = BesselOrder::from_dimension(d);
    if (!(s >= 0.0))
        throw std::domain_error("kernel_g: argument must be >= 0");
    const double v = nu.value();
    if (s <= bessel_series_cutoff(nu)) {
        const long double scale =
            v == 0.0 ? 1.0L : std::pow(2.0L, -static_cast<long double>(v));
        return static_cast<double>(scale * series_core(v, s));
    }
    const double j = bessel_j_asymptotic(nu, s);
    return v == 0.0 ? j : j / std::pow(s, v);
}

//---------------------------------------------------------------------------//

ZeroTable::ZeroTable(BesselOrder nu, std::vector<double> zeros)
    : nu_(nu), zeros_(std::move(zeros))
{
    for (std::size_t i = 0; i < zeros_.size(); ++i) {
        if (!(zeros_[i] > 0.0) || (i > 0 && !(zeros_[i] > zeros_[i - 1])))
            throw std::invalid_argument(
                "ZeroTable: zeros must be positive and strictly increasing");
    }
}

double ZeroTable::zero(std::size_t n) const
{
    if (n < 1 || n > zeros_.size())
        throw std::out_of_range("ZeroTable: index " + std::to_string(n) +
                                " outside [1, " +
                                std::to_string(zeros_.size()) + "]");
    return zeros_[n - 1];
}

double mcmahon_zero_estimate(BesselOrder nu, std::size_t n)
{
    if (n < 1)
        throw std::invalid_argument("mcmahon_zero_estimate: n must be >= 1");
    const double v = nu.value();
    const double mu = 4.0 * v * v;
    const double b = (static_cast<double>(n) + 0.5 * v - 0.25) * pi;
    const double e = 8.0 * b;
    const double e2 = e * e;
    return b - (mu - 1.0) / e -
           4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e2) -
           32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) /
               (15.0 * e * e2 * e2);
}

double refine_bessel_zero(BesselOrder nu, double lower, double upper,
                          double guess)
{
    double f_lower = bessel_j(nu, lower);
    const double f_upper = bessel_j(nu, upper);
    if (f_lower == 0.0)
        return lower;
    if (f_upper == 0.0)
        return upper;
    if ((f_lower > 0.0) == (f_upper > 0.0))
        throw std::runtime_error("refine_bessel_zero: no sign change in [" +
                                 format_double(lower) + ", " +
                                 format_double(upper) + "]");
    double x = std::clamp(guess, lower, upper);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = bessel_j(nu, x);
        if (f == 0.0)
            return x;
        if ((f > 0.0) == (f_lower > 0.0)) {
            lower = x;
            f_lower = f;
        } else {
            upper = x;
        }
        double next = x - f / bessel_j_derivative(nu, x);
        if (!(next > lower && next < upper))
            next = 0.5 * (lower + upper);
        if (std::fabs(next - x) <= 1e-14 * next || upper - lower <= 1e-15 * x)
            return next;
        x = next;
    }
    throw std::runtime_error("refine_bessel_zero: no convergence near " +
                             format_double(guess));
}

double next_bessel_zero(BesselOrder nu, std::size_t n, double previous)
{
    if (n < 1)
        throw std::invalid_argument("next_bessel_zero: n must be >= 1");
    const double guess = mcmahon_zero_estimate(nu, n);
    double zero = NAN;
    for (double half_width : {1.0, 1.4}) {
        const double lower = std::max(guess - half_width, previous + 1e-9);
        const double upper = guess + half_width;
        const double fl = bessel_j(nu, lower);
        const double fu = bessel_j(nu, upper);
        if (fl == 0.0 || fu == 0.0 || (fl > 0.0) != (fu > 0.0)) {
            zero = refine_bessel_zero(nu, lower, upper, guess);
            break;
        }
    }
    // Consecutive zeros of J_nu, nu >= 0, are more than 2 apart; a smaller
    // gap means the bracket caught the wrong zero.
    if (std::isnan(zero) || zero - previous < 2.0)
        throw std::runtime_error("failed to bracket zero " + std::to_string(n) +
                                 " of J_" + format_double(nu.value()));
    return zero;
}

ZeroTable bessel_zeros(BesselOrder nu, std::size_t n_max)
{
    if (n_max < 1)
        throw std::invalid_argument("bessel_zeros: n_max must be >= 1");
    std::vector<double> zeros;
    zeros.reserve(n_max);
    double previous = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        previous = next_bessel_zero(nu, n, previous);
        zeros.push_back(previous);
    }
    return ZeroTable(nu, std::move(zeros));
}

std::size_t count_sign_changes(BesselOrder nu, double a, double b, double step)
{
    if (!(step > 0.0) || !(b > a))
        throw std::invalid_argument("count_sign_changes: bad interval or step");
    std::size_t changes = 0;
    double last = bessel_j(nu, a);
    const auto samples = static_cast<std::size_t>(std::ceil((b - a) / step));
    for (std::size_t i = 1; i <= samples; ++i) {
        const double x = std::min(b, a + static_cast<double>(i) * step);
        const double f = bessel_j(nu, x);
        if (f == 0.0)
            continue;
        if (last != 0.0 && (f > 0.0) != (last > 0.0))
            ++changes;
        last = f;
    }
    return changes;
}

void write_zero_table_csv(const ZeroTable& table, std::ostream& out)
{
    out << "n,z_n\n";
    for (std::size_t n = 1; n <= table.size(); ++n)
        write_csv_row(out, {std::to_string(n), format_double(table.zero(n))});
}

}  // namespace lpseries
