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

#include "lpseries/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lpseries/analysis.hpp"
#include "lpseries/io.hpp"
#include "lpseries/quad.hpp"
#include "lpseries/rng.hpp"
#include "lpseries/series.hpp"
#include "lpseries/specfun.hpp"

namespace lpseries {

namespace {

using nlohmann::json;

struct Outcome
{
    bool passed = false;
    json measured = json::object();
    std::string failure;
};

struct CheckSpec
{
    std::string id;
    std::string title;
    std::string expected;
    // Wall-clock ceiling in seconds, or 0 for none.
    double time_limit = 0.0;
    std::function<Outcome(const VerifyOptions&, std::uint64_t seed)> run;
};

// Records a failed condition; the first one becomes the failure summary.
class Conditions
{
  public:
    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            if (!failure_.empty())
                failure_ += "; ";
            failure_ += what;
        }
    }
    Outcome finish(json measured) const
    {
        return {failure_.empty(), std::move(measured), failure_};
    }

  private:
    std::string failure_;
};

std::string describe(const std::string& label, double measured,
                     const std::string& expected)
{
    return label + ": measured " + format_double(measured) + ", expected " +
           expected;
}

RadialBasis faulted(const VerifyOptions& options, RadialBasis basis)
{
    return options.basis_fault ? options.basis_fault(basis) : basis;
}

// J_0 by its Maclaurin series, accurate to rounding for x <= 3.
double j0_maclaurin(double x)
{
    const double q = -0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
    }
    return sum;
}

double bisect(const std::function<double(double)>& f, double lo, double hi)
{
    double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double fmid = f(mid);
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

json estimate_json(const MonteCarloEstimate& e)
{
    return {{"mean", e.mean}, {"standard_error", e.standard_error},
            {"samples", e.samples}};
}

std::vector<double> log_range(std::size_t first, std::size_t last)
{
    std::vector<double> out;
    for (std::size_t n = first; n <= last; ++n)
        out.push_back(std::log(static_cast<double>(n)));
    return out;
}

//---------------------------------------------------------------------------//

Outcome check_zero_accuracy(const VerifyOptions&, std::uint64_t)
{
    Conditions cond;
    const double oracle = bisect(j0_maclaurin, 2.0, 3.0);
    const double z = bessel_zeros(BesselOrder(0.0), 1).zero(1);
    const double j0_error = std::abs(z - oracle);
    cond.require(j0_error <= 1e-10,
                 describe("|z_1(J_0) - bisection|", j0_error, "<= 1e-10"));

    const ZeroTable half = bessel_zeros(BesselOrder(0.5), 100);
    double worst = 0.0;
    std::size_t worst_n = 1;
    for (std::size_t n = 1; n <= 100; ++n) {
        const double exact = std::numbers::pi * static_cast<double>(n);
        const double rel = std::abs(half.zero(n) - exact) / exact;
        if (rel > worst) {
            worst = rel;
            worst_n = n;
        }
    }
    cond.require(worst <= 1e-10,
                 describe("max relative error of J_{1/2} zeros", worst, "<= 1e-10"));
    return cond.finish({{"z_1_J0", z},
                        {"z_1_J0_oracle", oracle},
                        {"z_1_J0_error", j0_error},
                        {"half_order_max_relative_error", worst},
                        {"half_order_worst_n", worst_n}});
}

Outcome check_orthonormality(const VerifyOptions& options, std::uint64_t)
{
    Conditions cond;
    json measured = json::object();
    constexpr std::size_t modes = 30;
    for (int d : {2, 3, 4}) {
        const ZeroTable zeros = bessel_zeros(BesselOrder::from_dimension(d), modes);
        // Normalizers on one grid, Gram matrix on a finer one.
        const QuadratureGrid build = build_grid(d, zeros.zero(modes));
        const QuadratureGrid check = build_grid(d, zeros.zero(modes), 16);
        const RadialBasis basis =
            faulted(options, build_radial_basis(d, modes, build));
        const double deviation = gram_deviation(basis, modes, check);
        measured["max_gram_deviation_d" + std::to_string(d)] = deviation;
        cond.require(deviation <= 1e-6,
                     describe("d=" + std::to_string(d) + " max |<e_m,e_n> - delta|",
                              deviation, "<= 1e-6"));
    }
    return cond.finish(std::move(measured));
}

Outcome check_beta_scaling(const VerifyOptions& options, std::uint64_t)
{
    Conditions cond;
    json measured = json::object();
    constexpr std::size_t first = 20;
    constexpr std::size_t last = 500;
    for (int d : {2, 3, 4}) {
        const ZeroTable zeros = bessel_zeros(BesselOrder::from_dimension(d), last);
        const QuadratureGrid grid = build_grid(d, zeros.zero(last));
        const RadialBasis basis = faulted(options, build_radial_basis(d, last, grid));
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (std::size_t n = first; n <= last; ++n) {
            const double scaled = std::sqrt(static_cast<double>(n)) * basis.normalizer(n);
            lo = std::min(lo, scaled);
            hi = std::max(hi, scaled);
        }
        const std::string tag = "d" + std::to_string(d);
        measured["sqrt_n_beta_min_" + tag] = lo;
        measured["sqrt_n_beta_max_" + tag] = hi;
        measured["max_over_min_" + tag] = hi / lo;
        cond.require(hi / lo <= 2.0,
                     describe(tag + " max/min of sqrt(n) beta_n", hi / lo, "<= 2"));
        if (d == 2) {
            const double at200 =
                basis.normalizer(200) * std::sqrt(std::numbers::pi * basis.zero(200));
            measured["beta_200_sqrt_pi_z_d2"] = at200;
            cond.require(at200 >= 0.98 && at200 <= 1.02,
                         describe("beta_200 sqrt(pi z_200) at d=2", at200,
                                  "in [0.98, 1.02]"));
        }
    }
    return cond.finish(std::move(measured));
}

Outcome check_lp_growth(const VerifyOptions&, std::uint64_t)
{
    Conditions cond;
    constexpr std::size_t first = 32;
    constexpr std::size_t last = 512;
    const std::vector<double> log_n = log_range(first, last);

    auto slope_of = [&](int d, double p) {
        const std::vector<double> norms = mode_lp_norms(d, last, p);
        std::vector<double> log_norm;
        for (std::size_t n = first; n <= last; ++n)
            log_norm.push_back(std::log(norms[n - 1]));
        return least_squares_slope(log_n, log_norm);
    };
    const double slope_d2 = slope_of(2, 6.0);
    const double slope_d3 = slope_of(3, 8.0);
    cond.require(std::abs(slope_d2 - 1.0 / 6.0) <= 0.05,
                 describe("d=2 p=6 slope", slope_d2, "1/6 +- 0.05"));
    cond.require(std::abs(slope_d3 - 0.625) <= 0.05,
                 describe("d=3 p=8 slope", slope_d3, "0.625 +- 0.05"));

    const std::vector<double> l4 = mode_lp_norms(2, last, 4.0);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t n = first; n <= last; ++n) {
        const double ratio =
            l4[n - 1] / std::pow(std::log(2.0 + static_cast<double>(n)), 0.25);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    cond.require(hi / lo <= 2.0,
                 describe("d=2 p=4 max/min of ||e_n||_4 / log(2+n)^(1/4)", hi / lo,
                          "<= 2"));
    return cond.finish({{"slope_d2_p6", slope_d2},
                        {"slope_d3_p8", slope_d3},
                        {"log_ratio_max_over_min_d2_p4", hi / lo}});
}

Outcome check_moment_constants(const VerifyOptions&, std::uint64_t seed)
{
    Conditions cond;
    constexpr std::size_t draws = 1'000'000;
    const RandomStream stream(seed, 0);
    long double m4 = 0.0L;
    long double m6 = 0.0L;
    for (std::size_t i = 0; i < draws; ++i) {
        const double a = std::norm(stream.complex_gaussian(i));
        m4 += static_cast<long double>(a) * a;
        m6 += static_cast<long double>(a) * a * a;
    }
    const double e4 = static_cast<double>(m4 / draws);
    const double e6 = static_cast<double>(m6 / draws);
    cond.require(std::abs(e4 / 8.0 - 1.0) <= 0.01,
                 describe("Monte Carlo E|g|^4", e4, "8 +- 1%"));
    cond.require(std::abs(e6 / 48.0 - 1.0) <= 0.02,
                 describe("Monte Carlo E|g|^6", e6, "48 +- 2%"));

    json constants = json::array();
    for (double p : {2.0, 4.0, 6.0, 7.5}) {
        const double c_p = moment_constants(p).c_p;
        const double oracle = std::tgamma(p / 2.0 + 1.0);
        const double rel = std::abs(c_p / oracle - 1.0);
        constants.push_back({{"p", p}, {"c_p", c_p}, {"relative_error", rel}});
        cond.require(rel <= 1e-10, describe("C_p at p=" + format_double(p), c_p,
                                            format_double(oracle) + " within 1e-10"));
    }
    return cond.finish({{"draws", draws},
                        {"mean_abs_g_4", e4},
                        {"mean_abs_g_6", e6},
                        {"c_p", constants}});
}

Outcome check_moment_identity(const VerifyOptions&, std::uint64_t seed)
{
    Conditions cond;
    constexpr int d = 2;
    constexpr std::size_t truncation = 50;
    constexpr std::size_t seeds = 10'000;
    constexpr double p = 4.0;
    const CoefficientSequence c = CoefficientSequence::power_law(1.0, 1.0);
    const ZeroTable zeros = bessel_zeros(BesselOrder::from_dimension(d), truncation);
    const QuadratureGrid grid = build_grid(d, zeros.zero(truncation));
    const RadialBasis basis = build_radial_basis(d, truncation, grid);
    const double expected = expected_lp_pth_power(c, basis, truncation, p, grid);
    const SeriesSampler sampler(c, basis, truncation, grid);
    const std::vector<double> samples = sampler.power_integrals(grid, seed, 0, seeds, p);
    const MonteCarloEstimate mc = summarize(samples);
    const double z = std::abs(mc.mean - expected) / mc.standard_error;
    cond.require(z <= 3.0, describe("|MC - expected| / SE", z, "<= 3"));
    return cond.finish({{"M_N", expected},
                        {"monte_carlo", estimate_json(mc)},
                        {"z_score", z}});
}

Outcome check_critical_exponent(const VerifyOptions&, std::uint64_t)
{
    Conditions cond;
    json measured = json::object();
    const CoefficientSequence c = CoefficientSequence::power_law(1.0, 1.0);
    for (int d : {3, 4}) {
        const double target = 2.0 * d / (d - 2.0);
        const LadderProfile profile(c, BasisFamily::radial(d), default_ladder());
        const PcrBracket bracket = bracket_pcr(profile, c);
        const std::string tag = "d" + std::to_string(d);
        json entry = {{"p_lower", bracket.lower},
                      {"p_upper", bracket.upper ? json(*bracket.upper) : json()},
                      {"target", target}};
        const bool contains = bracket.lower_found && bracket.lower <= target &&
                              bracket.upper && *bracket.upper >= target;
        const double width =
            bracket.upper ? *bracket.upper - bracket.lower
                          : std::numeric_limits<double>::infinity();
        cond.require(contains, tag + ": bracket [" + format_double(bracket.lower) +
                                   ", " +
                                   (bracket.upper ? format_double(*bracket.upper)
                                                  : std::string("inf")) +
                                   "] does not contain " + format_double(target));
        cond.require(width <= 1.0, describe(tag + " bracket width", width, "<= 1"));
        const TheoremBracket& tb = bracket.theorem_bracket;
        entry["theorem_p_lower"] = tb.lower;
        entry["theorem_p_upper"] = tb.upper ? json(*tb.upper) : json();
        if (d == 4) {
            cond.require(std::abs(tb.lower - 4.0) <= 0.5,
                         describe("d=4 theorem lower edge", tb.lower, "4 +- 0.5"));
            cond.require(tb.upper && std::abs(*tb.upper - 6.0) <= 0.5,
                         describe("d=4 theorem upper edge",
                                  tb.upper ? *tb.upper
                                           : std::numeric_limits<double>::infinity(),
                                  "6 +- 0.5"));
        }
        measured[tag] = std::move(entry);
    }
    return cond.finish(std::move(measured));
}

Outcome check_torus_contrast(const VerifyOptions&, std::uint64_t)
{
    Conditions cond;
    json measured = json::object();
    const CoefficientSequence c = CoefficientSequence::power_law(1.0, 1.0);
    const LadderProfile profile(c, BasisFamily::constant_modulus(), default_ladder());
    for (double p : {4.0, 8.0, 12.0, 20.0}) {
        const DivergenceVerdict v = classify_divergence(profile, p);
        measured["p" + format_double(p)] = {
            {"verdict", std::string(to_string(v.verdict))},
            {"fitted_growth_exponent", v.fitted_growth_exponent}};
        cond.require(v.verdict == Verdict::convergent,
                     "p=" + format_double(p) + ": verdict " +
                         std::string(to_string(v.verdict)) + ", expected Convergent");
    }
    return cond.finish(std::move(measured));
}

Outcome check_alpha_star(const VerifyOptions&, std::uint64_t)
{
    Conditions cond;
    json measured = json::object();
    const CoefficientSequence c = CoefficientSequence::power_law(1.0, 1.0);
    const std::vector<std::size_t> ladder = default_ladder();
    for (int d : {3, 4, 5}) {
        const double a = alpha_star(c, d, ladder);
        const double bound = divergence_exponent_bound(a, d);
        const double critical = 2.0 * d / (d - 2.0);
        const std::string tag = "d" + std::to_string(d);
        measured[tag] = {{"alpha_star", a}, {"two_d_over_alpha_star", bound}};
        cond.require(std::abs(a - (d - 2.0)) <= 0.05,
                     describe(tag + " alpha_star", a, format_double(d - 2.0) + " +- 0.05"));
        cond.require(std::abs(bound - critical) <= 0.05,
                     describe(tag + " 2d/alpha_star", bound,
                              format_double(critical) + " +- 0.05"));
    }
    return cond.finish(std::move(measured));
}

Outcome check_adversarial(const VerifyOptions&, std::uint64_t)
{
    Conditions cond;
    json measured = json::object();
    const AdversarialSequence seq =
        construct_diverging_sequence(BasisFamily::radial(2), 6.0, 4);
    json picks = json::array();
    for (std::size_t k = 0; k < seq.indices.size(); ++k) {
        // Re-measure each pick on its own grid rather than trusting the sweep.
        const double norm = grid_lp_norm_of_mode(2, seq.indices[k], 6.0);
        const double target = std::ldexp(1.0, static_cast<int>(k + 1));
        picks.push_back({{"k", k + 1},
                         {"n_k", seq.indices[k]},
                         {"sweep_norm", seq.norms[k]},
                         {"grid_norm", norm}});
        cond.require(norm >= target,
                     describe("||e_{n_" + std::to_string(k + 1) + "}||_6", norm,
                              ">= " + format_double(target)));
    }
    cond.require(seq.indices.size() == 4, "expected 4 indices, got " +
                                              std::to_string(seq.indices.size()));
    measured["p6"] = std::move(picks);

    bool refused = false;
    std::string message;
    try {
        (void)construct_diverging_sequence(BasisFamily::radial(2), 3.0, 4, 2000);
    } catch (const NoSuchSequence& e) {
        refused = true;
        message = e.what();
    }
    measured["p3_no_such_sequence"] = refused;
    measured["p3_message"] = message;
    cond.require(refused, "p=3 with mode cap 2000 returned a sequence");
    return cond.finish(std::move(measured));
}

Outcome check_appendix_laws(const VerifyOptions&, std::uint64_t seed)
{
    Conditions cond;
    constexpr int d = 2;
    constexpr std::size_t truncation = 20;
    const CoefficientSequence c = CoefficientSequence::power_law(1.0, 1.0);
    const ZeroTable zeros = bessel_zeros(BesselOrder::from_dimension(d), truncation);
    const QuadratureGrid grid = build_grid(d, zeros.zero(truncation));
    const RadialBasis basis = build_radial_basis(d, truncation, grid);

    const IncrementEstimate inc =
        l2_cauchy_increment(c, basis, 10, 20, grid, 10'000, splitmix64(seed));
    double oracle = 0.0;
    for (int n = 11; n <= 20; ++n)
        oracle += 2.0 / (static_cast<double>(n) * n);
    const double inc_z =
        std::abs(inc.estimate.mean - oracle) / inc.estimate.standard_error;
    cond.require(inc_z <= 3.0, describe("L2 increment |MC - exact| / SE", inc_z, "<= 3"));

    constexpr double r = 0.5;
    constexpr std::size_t seeds = 100'000;
    const auto values = pointwise_samples(c, basis, r, truncation, seeds,
                                          splitmix64(seed + 1));
    long double second = 0.0L;
    long double re2 = 0.0L;
    long double re4 = 0.0L;
    for (const auto& v : values) {
        second += std::norm(v);
        const long double x2 = static_cast<long double>(v.real()) * v.real();
        re2 += x2;
        re4 += x2 * x2;
    }
    const double variance = static_cast<double>(second / seeds);
    const double sigma2 = pointwise_sigma2(c, basis, r, truncation);
    const double variance_ratio = variance / (2.0 * sigma2);
    cond.require(std::abs(variance_ratio - 1.0) <= 0.03,
                 describe("E|F(0.5)|^2 / (2 sigma^2)", variance_ratio, "1 +- 3%"));
    const double kurtosis =
        static_cast<double>((re4 / seeds) / ((re2 / seeds) * (re2 / seeds)));
    cond.require(std::abs(kurtosis - 3.0) <= 0.15,
                 describe("kurtosis of Re F(0.5)", kurtosis, "3 +- 0.15"));

    return cond.finish({{"l2_increment", estimate_json(inc.estimate)},
                        {"l2_increment_exact", oracle},
                        {"l2_increment_z_score", inc_z},
                        {"pointwise_second_moment", variance},
                        {"two_sigma2", 2.0 * sigma2},
                        {"variance_ratio", variance_ratio},
                        {"kurtosis_re", kurtosis}});
}

Outcome check_gibbs(const VerifyOptions&, std::uint64_t seed)
{
    Conditions cond;
    json measured = json::object();
    constexpr std::size_t seeds = 10'000;
    std::vector<GibbsSample> runs;
    for (std::size_t n : {128u, 256u}) {
        // Same streams at both truncations, as the stability test intends.
        runs.push_back(sample_gibbs_weights(n, seeds, seed));
        const GibbsSample& s = runs.back();
        const auto [lo, hi] = std::minmax_element(s.weights.begin(), s.weights.end());
        const std::size_t outside =
            std::count_if(s.weights.begin(), s.weights.end(),
                          [](double w) { return !(w > 0.0 && w <= 1.0); });
        const std::string tag = "N" + std::to_string(n);
        measured[tag] = {{"mean_weight", estimate_json(s.estimate)},
                         {"min_weight", *lo},
                         {"max_weight", *hi},
                         {"weights_outside_unit_interval", outside}};
        cond.require(outside == 0, tag + ": " + std::to_string(outside) +
                                       " weights outside (0, 1]");
        cond.require(s.estimate.mean >= 0.01 && s.estimate.mean <= 0.99,
                     describe(tag + " mean weight", s.estimate.mean,
                              "in [0.01, 0.99]"));
    }
    const double diff = runs[1].estimate.mean - runs[0].estimate.mean;
    const double se = std::hypot(runs[0].estimate.standard_error,
                                 runs[1].estimate.standard_error);
    measured["mean_difference_z"] = std::abs(diff) / se;
    cond.require(std::abs(diff) <= 3.0 * se,
                 describe("|mean(256) - mean(128)| / SE", std::abs(diff) / se, "<= 3"));

    constexpr std::size_t h_n = 10'000;
    const HalfSobolevEnergy h = h_half_partial_energy(h_n, seeds, splitmix64(seed));
    // Euler-Maclaurin expansion of the harmonic number, independent of the
    // direct sum used by the library.
    const double n = static_cast<double>(h_n);
    const double harmonic = std::log(n) + std::numbers::egamma + 1.0 / (2.0 * n) -
                            1.0 / (12.0 * n * n) + 1.0 / (120.0 * n * n * n * n);
    const double analytic_error = std::abs(h.analytic - 2.0 * harmonic);
    const double h_z = std::abs(h.estimate.mean - h.analytic) / h.estimate.standard_error;
    cond.require(analytic_error <= 1e-9,
                 describe("|2 H_N - asymptotic|", analytic_error, "<= 1e-9"));
    cond.require(h_z <= 3.0, describe("H^{1/2} energy |MC - 2 H_N| / SE", h_z, "<= 3"));
    measured["h_half"] = {{"N", h_n},
                          {"analytic", h.analytic},
                          {"ratio_to_log", h.ratio_to_log ? json(*h.ratio_to_log) : json()},
                          {"monte_carlo", estimate_json(h.estimate)},
                          {"z_score", h_z}};
    return cond.finish(std::move(measured));
}

const std::vector<CheckSpec>& registry()
{
    static const std::vector<CheckSpec> checks = {
        {"zero_accuracy", "Bessel zero accuracy",
         "J_0 first zero within 1e-10 of bisection; J_{1/2} zeros = n pi within "
         "1e-10 relative for n <= 100; under 1 s",
         1.0, check_zero_accuracy},
        {"orthonormality", "Orthonormality of the radial basis",
         "max_{m,n <= 30} |<e_m,e_n> - delta_mn| <= 1e-6 for d = 2, 3, 4; under 30 s",
         30.0, check_orthonormality},
        {"beta_scaling", "Normalizer scaling",
         "max/min of sqrt(n) beta_n over n in [20, 500] <= 2 for d = 2, 3, 4; "
         "beta_200 sqrt(pi z_200) in [0.98, 1.02] at d = 2",
         0.0, check_beta_scaling},
        {"lp_growth", "L^p growth exponents of single modes",
         "slope 1/6 +- 0.05 (d=2, p=6) and 0.625 +- 0.05 (d=3, p=8) over "
         "n in [32, 512]; d=2, p=4 norm / log(2+n)^(1/4) max/min <= 2",
         0.0, check_lp_growth},
        {"moment_constants", "Gaussian moment constants",
         "E|g|^4 = 8 +- 1% and E|g|^6 = 48 +- 2% at 1e6 draws; C_p = Gamma(p/2+1) "
         "within 1e-10 at p = 2, 4, 6, 7.5",
         0.0, check_moment_constants},
        {"moment_identity", "Expected L^p norm identity",
         "d=2, N=50, c_n = 1/n, p=4: Monte Carlo mean over 1e4 seeds within 3 SE "
         "of M_N; under 120 s",
         120.0, check_moment_identity},
        {"critical_exponent", "Critical exponent brackets",
         "c_n = 1/n: bracket contains 6 at d=3 and 4 at d=4 with width <= 1; d=4 "
         "theorem bracket edges 4 +- 0.5 and 6 +- 0.5; under 600 s",
         600.0, check_critical_exponent},
        {"torus_contrast", "Constant-modulus contrast",
         "c_n = 1/n on the constant-modulus basis is Convergent at p = 4, 8, 12, 20",
         0.0, check_torus_contrast},
        {"alpha_star", "Weighted growth exponent",
         "alpha_star(1/n, d) = d - 2 +- 0.05 and 2d/alpha_star = 2d/(d-2) +- 0.05 "
         "for d = 3, 4, 5",
         0.0, check_alpha_star},
        {"adversarial", "Diverging sparse sequence",
         "d=2, p=6, K=4: ||e_{n_k}||_6 >= 2^k; p=3 gives no sequence within 2000 modes",
         0.0, check_adversarial},
        {"appendix_laws", "Second-moment and Gaussianity laws",
         "L2 increment (M=10, N=20) within 3 SE of 2 sum_{11}^{20} n^-2; "
         "E|F(0.5)|^2 within 3% of 2 sigma^2; kurtosis of Re F(0.5) = 3 +- 0.15 "
         "at 1e5 seeds",
         0.0, check_appendix_laws},
        {"gibbs", "Gibbs weight nontriviality",
         "1e4 weights in (0, 1]; mean in [0.01, 0.99]; N = 128 vs 256 means within "
         "3 combined SE; H^{1/2} energy matches 2 H_N within 3 SE",
         0.0, check_gibbs},
    };
    return checks;
}

constexpr const char* reproducibility_id = "reproducibility";
constexpr const char* reproducibility_title = "Byte-identical reports";
constexpr const char* reproducibility_expected =
    "two runs with the same master seed serialize to identical reports";

bool selected(const VerifyOptions& options, const std::string& id)
{
    return options.only.empty() ||
           std::find(options.only.begin(), options.only.end(), id) !=
               options.only.end();
}

CheckResult run_one(const CheckSpec& spec, int number, const VerifyOptions& options)
{
    CheckResult result;
    result.number = number;
    result.id = spec.id;
    result.title = spec.title;
    result.expected = spec.expected;
    const auto start = std::chrono::steady_clock::now();
    try {
        Outcome outcome = spec.run(options, check_seed(options.master_seed, number));
        result.passed = outcome.passed;
        result.measured = std::move(outcome.measured);
        result.failure = std::move(outcome.failure);
    } catch (const std::exception& e) {
        result.passed = false;
        result.measured = json::object();
        result.failure = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    if (spec.time_limit > 0.0 && result.seconds > spec.time_limit) {
        result.passed = false;
        if (!result.failure.empty())
            result.failure += "; ";
        result.failure += "runtime " + format_double(result.seconds) +
                          " s exceeds " + format_double(spec.time_limit) + " s";
    }
    return result;
}

std::vector<CheckResult> run_numbered(const VerifyOptions& options)
{
    std::vector<CheckResult> results;
    const auto& checks = registry();
    for (std::size_t i = 0; i < checks.size(); ++i)
        if (selected(options, checks[i].id))
            results.push_back(run_one(checks[i], static_cast<int>(i + 1), options));
    return results;
}

json check_json(const CheckResult& r)
{
    json out = {{"number", r.number},  {"id", r.id},
                {"title", r.title},    {"passed", r.passed},
                {"expected", r.expected}, {"measured", r.measured}};
    if (!r.passed)
        out["failure"] = r.failure;
    return out;
}

}  // namespace

std::uint64_t check_seed(std::uint64_t master_seed, int check_number)
{
    return splitmix64(splitmix64(master_seed) + static_cast<std::uint64_t>(check_number));
}

std::vector<std::string> acceptance_check_ids()
{
    std::vector<std::string> ids;
    for (const auto& spec : registry())
        ids.push_back(spec.id);
    ids.push_back(reproducibility_id);
    return ids;
}

std::vector<CheckResult> run_acceptance(const VerifyOptions& options)
{
    for (const auto& id : options.only) {
        const auto ids = acceptance_check_ids();
        if (std::find(ids.begin(), ids.end(), id) == ids.end())
            throw std::invalid_argument("unknown acceptance check id: " + id);
    }
    std::vector<CheckResult> results = run_numbered(options);
    if (!selected(options, reproducibility_id))
        return results;

    // Second run of the same checks; an empty selection of numbered checks
    // still compares (trivially equal) reports.
    CheckResult repro;
    repro.number = static_cast<int>(registry().size() + 1);
    repro.id = reproducibility_id;
    repro.title = reproducibility_title;
    repro.expected = reproducibility_expected;
    const auto start = std::chrono::steady_clock::now();
    try {
        const std::string first = acceptance_report(results, options).dump(2);
        const std::vector<CheckResult> again = run_numbered(options);
        const std::string second = acceptance_report(again, options).dump(2);
        std::size_t mismatch = 0;
        while (mismatch < first.size() && mismatch < second.size() &&
               first[mismatch] == second[mismatch])
            ++mismatch;
        repro.passed = first == second;
        repro.measured = {{"report_bytes", first.size()},
                          {"identical", repro.passed},
                          {"checks_compared", results.size()}};
        if (!repro.passed) {
            repro.measured["first_difference_at_byte"] = mismatch;
            repro.failure = "reports differ from byte " + std::to_string(mismatch);
        }
    } catch (const std::exception& e) {
        repro.passed = false;
        repro.measured = json::object();
        repro.failure = std::string("exception: ") + e.what();
    }
    repro.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(repro));
    return results;
}

json acceptance_report(const std::vector<CheckResult>& results,
                       const VerifyOptions& options)
{
    json checks = json::array();
    bool all = true;
    for (const auto& r : results) {
        checks.push_back(check_json(r));
        all = all && r.passed;
    }
    return {{"version", std::string(library_version)},
            {"master_seed", options.master_seed},
            {"checks_run", results.size()},
            {"all_passed", all},
            {"checks", std::move(checks)}};
}

json timing_report(const std::vector<CheckResult>& results)
{
    json checks = json::array();
    double total = 0.0;
    for (const auto& r : results) {
        checks.push_back({{"id", r.id}, {"seconds", r.seconds}});
        total += r.seconds;
    }
    return {{"checks", std::move(checks)}, {"total_seconds", total}};
}

}  // namespace lpseries
