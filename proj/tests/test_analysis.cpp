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

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "lpseries/analysis.hpp"
#include "lpseries/basis.hpp"
#include "lpseries/quad.hpp"
#include "lpseries/rng.hpp"
#include "lpseries/series.hpp"
#include "lpseries/specfun.hpp"

using namespace lpseries;

namespace {

struct Setup
{
    QuadratureGrid grid;
    RadialBasis basis;
};

Setup make(int d, std::size_t n)
{
    const ZeroTable zeros = bessel_zeros(BesselOrder::from_dimension(d), n);
    QuadratureGrid grid = build_grid(d, zeros.zero(n));
    RadialBasis basis = build_radial_basis(d, n, grid);
    return {std::move(grid), std::move(basis)};
}

// Cheaper ladder for property sweeps; the acceptance run uses 64..1024.
std::vector<std::size_t> short_ladder()
{
    return geometric_ladder(32, 5);
}

const CoefficientSequence harmonic = CoefficientSequence::power_law(1.0, 1.0);

}  // namespace

TEST_CASE("moment constants")
{
    const MomentConstants m2 = moment_constants(2.0);
    CHECK(m2.c_p == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m2.d_p == doctest::Approx(2.0).epsilon(1e-15));
    const MomentConstants m4 = moment_constants(4.0);
    CHECK(m4.c_p == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m4.d_p == doctest::Approx(8.0).epsilon(1e-15));
    const MomentConstants m6 = moment_constants(6.0);
    CHECK(m6.c_p == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(m6.d_p == doctest::Approx(48.0).epsilon(1e-14));
    for (double p : {2.0, 3.3, 4.0, 6.0, 7.5, 11.0})
        CHECK(moment_constants(p).c_p ==
              doctest::Approx(std::tgamma(p / 2.0 + 1.0)).epsilon(1e-10));
    CHECK_THROWS_AS(moment_constants(0.0), std::invalid_argument);
}

TEST_CASE("moment constants against Monte Carlo at 1e6 draws")
{
    const RandomStream s(123, 0);
    long double m6 = 0.0L, m3 = 0.0L;
    constexpr std::size_t n = 1'000'000;
    for (std::size_t i = 0; i < n; ++i) {
        const long double a = s.complex_gaussian_norm(i);
        m6 += a * a * a;
        m3 += std::pow(a, 1.5L);
    }
    CHECK(std::abs(static_cast<double>(m6 / n) / moment_constants(6.0).d_p - 1.0) <= 0.02);
    CHECK(std::abs(static_cast<double>(m3 / n) / moment_constants(3.0).d_p - 1.0) <= 0.01);
}

TEST_CASE("superadditivity of powers")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> value(0.0, 5.0);
    std::uniform_real_distribution<double> power(1.0, 6.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const double alpha = power(rng);
        double sum = 0.0, sum_powers = 0.0;
        for (int k = 0; k < 1 + trial % 9; ++k) {
            const double a = value(rng);
            sum += a;
            sum_powers += std::pow(a, alpha);
        }
        CHECK(std::pow(sum, alpha) >= sum_powers * (1.0 - 1e-12));
    }
}

TEST_CASE("expected norm of a single term and of the constant-modulus family")
{
    const Setup s = make(2, 5);
    const auto one = CoefficientSequence::explicit_list({1.0});
    for (double p : {2.0, 4.0, 5.5}) {
        const double norm = lp_norm_of_e(s.basis, 1, p, s.grid);
        CHECK(expected_lp_pth_power(one, s.basis, 5, p, s.grid) ==
              doctest::Approx(moment_constants(p).d_p * std::pow(norm, p)).epsilon(1e-12));
    }
    double energy = 0.0;
    for (int n = 1; n <= 30; ++n)
        energy += 1.0 / (n * n);
    CHECK(expected_lp_pth_power(harmonic, ConstantModulusBasis{}, 30, 6.0) ==
          doctest::Approx(48.0 * std::pow(energy, 3.0)).epsilon(1e-13));
}

TEST_CASE("expected norm matches Monte Carlo")
{
    const Setup s = make(2, 50);
    const SeriesSampler sampler(harmonic, s.basis, 50, s.grid);
    for (double p : {3.0, 4.0}) {
        const double m = expected_lp_pth_power(harmonic, s.basis, 50, p, s.grid);
        const MonteCarloEstimate mc =
            summarize(sampler.power_integrals(s.grid, 99, 0, 10'000, p));
        CHECK(std::abs(mc.mean - m) <= 3.0 * mc.standard_error);
    }
    // At p = 2 the identity is the L^2 energy 2 sum c_n^2.
    double energy = 0.0;
    for (int n = 1; n <= 50; ++n)
        energy += 2.0 / (n * n);
    CHECK(expected_lp_pth_power(harmonic, s.basis, 50, 2.0, s.grid) ==
          doctest::Approx(energy).epsilon(1e-10));
}

TEST_CASE("ladder profile values agree with expected_lp_pth_power")
{
    const std::vector<std::size_t> ladder = {8, 16, 32, 64, 128};
    const LadderProfile profile(harmonic, BasisFamily::radial(3), ladder);
    const Setup s = make(3, 128);
    const std::vector<double> values = profile.expected_values(5.0);
    for (std::size_t k = 0; k < ladder.size(); ++k)
        CHECK(values[k] ==
              doctest::Approx(expected_lp_pth_power(harmonic, s.basis, ladder[k], 5.0, s.grid))
                  .epsilon(1e-9));
    CHECK(profile.nodes() > 0);
}

TEST_CASE("ladders")
{
    CHECK(default_ladder() == std::vector<std::size_t>{64, 128, 256, 512, 1024});
    CHECK(geometric_ladder(3, 4, 3) == std::vector<std::size_t>{3, 9, 27, 81});
}

TEST_CASE("least squares slope")
{
    const std::vector<double> x = {0.0, 1.0, 2.0, 3.5};
    std::vector<double> y;
    for (double v : x)
        y.push_back(-0.75 * v + 2.0);
    CHECK(least_squares_slope(x, y) == doctest::Approx(-0.75).epsilon(1e-14));
}

TEST_CASE("classifier on synthetic ladders")
{
    const std::vector<std::size_t> ladder = {64, 128, 256, 512, 1024};
    std::vector<double> growing, bounded, flat, logarithmic;
    for (std::size_t n : ladder) {
        const double x = static_cast<double>(n);
        growing.push_back(std::pow(x, 0.5));
        bounded.push_back(3.0 - 1.0 / x);
        flat.push_back(1.0);
        logarithmic.push_back(std::log(x));
    }
    CHECK(classify_ladder(4.0, ladder, growing).verdict == Verdict::divergent);
    CHECK(classify_ladder(4.0, ladder, bounded).verdict == Verdict::convergent);
    CHECK(classify_ladder(4.0, ladder, flat).verdict == Verdict::convergent);
    // Constant increments along a doubling ladder: neither rule applies.
    CHECK(classify_ladder(4.0, ladder, logarithmic).verdict == Verdict::inconclusive);
    const DivergenceVerdict v = classify_ladder(4.0, ladder, growing);
    CHECK(v.fitted_growth_exponent == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(v.level_slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(v.ladder.size() == 5);
    CHECK(std::string(to_string(Verdict::divergent)) == "Divergent");
    CHECK(std::string(to_string(Verdict::convergent)) == "Convergent");
    CHECK(std::string(to_string(Verdict::inconclusive)) == "Inconclusive");
}

TEST_CASE("classifier verdicts for the harmonic sequence")
{
    CHECK(classify_divergence(harmonic, BasisFamily::constant_modulus(), 10.0,
                              default_ladder())
              .verdict == Verdict::convergent);
    const LadderProfile d3(harmonic, BasisFamily::radial(3), short_ladder());
    CHECK(classify_divergence(d3, 8.0).verdict == Verdict::divergent);
    CHECK(classify_divergence(d3, 4.0).verdict == Verdict::convergent);
}

TEST_CASE("p = 2 is always convergent and p = 20 divergent in d >= 3")
{
    const std::vector<CoefficientSequence> sequences = {
        harmonic, CoefficientSequence::power_law(0.3, 0.7),
        CoefficientSequence::power_law(5.0, 2.0), CoefficientSequence::inverse_zero(2, 1.0)};
    for (const auto& c : sequences) {
        CHECK(classify_divergence(c, BasisFamily::constant_modulus(), 2.0, short_ladder())
                  .verdict == Verdict::convergent);
        const LadderProfile profile(c, BasisFamily::radial(2), short_ladder());
        CHECK(classify_divergence(profile, 2.0).verdict == Verdict::convergent);
    }
    for (int d = 3; d <= 5; ++d) {
        const LadderProfile profile(harmonic, BasisFamily::radial(d), short_ladder());
        CHECK(classify_divergence(profile, 2.0).verdict == Verdict::convergent);
        CHECK(classify_divergence(profile, 20.0).verdict == Verdict::divergent);
    }
}

TEST_CASE("verdicts, brackets and alpha* are invariant under scaling")
{
    const LadderProfile base(harmonic, BasisFamily::radial(3), short_ladder());
    const PcrBracket b0 = bracket_pcr(base, harmonic);
    for (double factor : {1e-3, 7.25, 1e4}) {
        const CoefficientSequence scaled = harmonic.scaled(factor);
        const LadderProfile profile(scaled, BasisFamily::radial(3), short_ladder());
        for (double p : {3.0, 5.0, 6.0, 7.0, 12.0})
            CHECK(classify_divergence(profile, p).verdict ==
                  classify_divergence(base, p).verdict);
        const PcrBracket b = bracket_pcr(profile, scaled);
        CHECK(b.lower == b0.lower);
        CHECK(b.upper == b0.upper);
        CHECK(b.theorem_bracket.lower == b0.theorem_bracket.lower);
        for (int d = 3; d <= 5; ++d)
            CHECK(alpha_star(scaled, d, default_ladder()) ==
                  doctest::Approx(alpha_star(harmonic, d, default_ladder())).epsilon(1e-12));
    }
}

TEST_CASE("empirical brackets sit inside the theorem bracket")
{
    for (int d : {3, 4}) {
        const LadderProfile profile(harmonic, BasisFamily::radial(d), short_ladder());
        const BracketOptions options;
        const PcrBracket b = bracket_pcr(profile, harmonic, options);
        const TheoremBracket& t = b.theorem_bracket;
        CHECK(b.lower_found);
        CHECK(t.lower <= b.lower + options.tol);
        if (b.upper && t.upper)
            CHECK(*b.upper <= *t.upper + options.tol);
        // Probes come back sorted and unique.
        for (std::size_t k = 1; k < b.probes.size(); ++k)
            CHECK(b.probes[k].p > b.probes[k - 1].p);
    }
}

TEST_CASE("2d / alpha* bounds the convergent edge from above")
{
    for (int d : {3, 4}) {
        for (double alpha : {0.75, 1.0, 1.25}) {
            const auto c = CoefficientSequence::power_law(1.0, alpha);
            const LadderProfile profile(c, BasisFamily::radial(d), short_ladder());
            const BracketOptions options;
            const PcrBracket b = bracket_pcr(profile, c, options);
            const double bound =
                divergence_exponent_bound(alpha_star(c, d, short_ladder()), d);
            CHECK_MESSAGE(bound >= b.lower - options.tol,
                          "d=" << d << " alpha=" << alpha << " bound=" << bound
                               << " lower=" << b.lower);
        }
    }
}

TEST_CASE("degenerate plane case has no finite upper edge")
{
    const LadderProfile profile(harmonic, BasisFamily::radial(2), short_ladder());
    const PcrBracket b = bracket_pcr(profile, harmonic);
    CHECK_FALSE(b.upper.has_value());
    CHECK_FALSE(b.theorem_bracket.upper.has_value());
}

TEST_CASE("theorem bracket edges")
{
    const TheoremBracket t4 =
        theorem_bracket(harmonic, BasisFamily::radial(4), default_ladder());
    CHECK(std::abs(t4.lower - 4.0) <= 0.5);
    REQUIRE(t4.upper.has_value());
    CHECK(std::abs(*t4.upper - 6.0) <= 0.5);
    const TheoremBracket t3 =
        theorem_bracket(harmonic, BasisFamily::radial(3), default_ladder());
    CHECK(std::abs(t3.lower - 6.0) <= 0.5);
}

TEST_CASE("bracket option checks")
{
    const LadderProfile profile(harmonic, BasisFamily::constant_modulus(), short_ladder());
    BracketOptions bad;
    bad.p_min = 1.0;
    CHECK_THROWS_AS(bracket_pcr(profile, harmonic, bad), std::invalid_argument);
    bad = {};
    bad.tol = 0.0;
    CHECK_THROWS_AS(bracket_pcr(profile, harmonic, bad), std::invalid_argument);
    CHECK_THROWS_AS(bracket_pcr(harmonic, BasisFamily::radial(3), {64, 128}),
                    std::invalid_argument);
}

TEST_CASE("alpha*")
{
    for (int d = 3; d <= 5; ++d)
        CHECK(std::abs(alpha_star(harmonic, d, default_ladder()) - (d - 2.0)) <= 0.05);
    CHECK(alpha_star(CoefficientSequence::sparse({3, 40}, {1.0, 0.5}), 3, default_ladder()) ==
          0.0);

    // Direct partial-sum oracle for c_n = n^{-5/4} in d = 4.
    const auto c = CoefficientSequence::power_law(1.0, 1.25);
    std::vector<double> x, y;
    long double sum = 0.0L;
    const auto ladder = default_ladder();
    std::size_t rung = 0;
    for (std::size_t n = 1; n <= ladder.back(); ++n) {
        sum += std::pow(static_cast<long double>(n), 0.5L);
        if (n == ladder[rung]) {
            x.push_back(std::log(static_cast<double>(n)));
            y.push_back(std::log(static_cast<double>(sum)));
            ++rung;
        }
    }
    const double oracle_slope = least_squares_slope(x, y);
    CHECK(std::abs(oracle_slope - 1.5) <= 0.05);
    CHECK(alpha_star(c, 4, ladder) == doctest::Approx(oracle_slope).epsilon(1e-10));
}

TEST_CASE("divergence exponent bound")
{
    CHECK(divergence_exponent_bound(1.0, 3) == 6.0);
    CHECK(divergence_exponent_bound(2.0, 4) == 4.0);
    CHECK(std::isinf(divergence_exponent_bound(0.0, 3)));
    CHECK_THROWS_AS(divergence_exponent_bound(-1.0, 3), std::invalid_argument);
}

TEST_CASE("adversarial construction in the plane")
{
    const AdversarialSequence seq =
        construct_diverging_sequence(BasisFamily::radial(2), 6.0, 3);
    REQUIRE(seq.indices.size() == 3);
    const std::size_t top = seq.indices.back();
    // Basis with closed-form normalizers |J_1(z_n)| / sqrt 2, evaluated by
    // lp_norm_of_e on a grid resolving the largest pick.
    const ZeroTable zeros = bessel_zeros(BesselOrder(0.0), top);
    std::vector<double> normalizers;
    for (std::size_t n = 1; n <= top; ++n)
        normalizers.push_back(std::abs(std::cyl_bessel_j(1.0, zeros.zero(n))) /
                              std::numbers::sqrt2);
    const RadialBasis basis(2, zeros, normalizers);
    const QuadratureGrid grid = build_grid(2, zeros.zero(top));
    for (std::size_t k = 0; k < 3; ++k) {
        const double norm = lp_norm_of_e(basis, seq.indices[k], 6.0, grid);
        CHECK(norm >= std::ldexp(1.0, static_cast<int>(k + 1)));
        CHECK(norm == doctest::Approx(seq.norms[k]).epsilon(1e-8));
        CHECK(seq.sequence(seq.indices[k]) == std::ldexp(1.0, -static_cast<int>(k + 1)));
        if (k > 0)
            CHECK(seq.indices[k] > seq.indices[k - 1]);
    }
    // Each pick is the first mode to reach its target.
    const std::vector<double> norms = mode_lp_norms(2, seq.indices[1], 6.0);
    for (std::size_t n = seq.indices[0] + 1; n < seq.indices[1]; ++n)
        CHECK(norms[n - 1] < 4.0);
}

TEST_CASE("adversarial construction fails for bounded families")
{
    CHECK_THROWS_AS(construct_diverging_sequence(BasisFamily::constant_modulus(), 6.0, 2),
                    NoSuchSequence);
    CHECK_THROWS_AS(construct_diverging_sequence(BasisFamily::radial(2), 3.0, 4, 2000),
                    NoSuchSequence);
    CHECK_THROWS_AS(construct_diverging_sequence(BasisFamily::radial(2), 6.0, 0),
                    std::invalid_argument);
}

TEST_CASE("grid and sweep norms of a single mode agree")
{
    for (std::size_t n : {1u, 17u, 300u})
        CHECK(grid_lp_norm_of_mode(2, n, 6.0) ==
              doctest::Approx(mode_lp_norms(2, n, 6.0).back()).epsilon(1e-9));
}

TEST_CASE("Fernique probe")
{
    const Setup s = make(2, 100);
    const std::vector<double> eps = {0.0, 1e-3, 1e-2, 5e-2};
    const auto small = fernique_probe(harmonic, s.basis, 4.0, 100, eps, s.grid, 2000, 5);
    const auto large = fernique_probe(harmonic, s.basis, 4.0, 100, eps, s.grid, 4000, 5);
    CHECK(small[0].estimate.mean == 1.0);
    CHECK(small[0].estimate.standard_error == 0.0);
    for (std::size_t k = 1; k < eps.size(); ++k) {
        CHECK(small[k].estimate.mean >= small[k - 1].estimate.mean);
        CHECK(std::isfinite(small[k].estimate.mean));
    }
    const double diff = std::abs(small[1].estimate.mean - large[1].estimate.mean);
    CHECK(diff <= 3.0 * std::hypot(small[1].estimate.standard_error,
                                   large[1].estimate.standard_error));
    // Overflow is reported as +inf, not thrown.
    const std::vector<double> huge = {1e6};
    const auto blown = fernique_probe(harmonic, s.basis, 4.0, 100, huge, s.grid, 10, 5);
    CHECK(std::isinf(blown[0].estimate.mean));
}

TEST_CASE("Gibbs weights")
{
    CHECK(gibbs_weight_from_l4(0.0) == 1.0);
    CHECK(gibbs_weight_from_l4(2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(gibbs_weight_from_l4(1e6) == DBL_MIN);

    const Setup s = make(2, 8);
    SeriesDraw zero;
    zero.truncation = 8;
    zero.field_re.assign(s.grid.size(), 0.0);
    zero.field_im.assign(s.grid.size(), 0.0);
    CHECK(gibbs_weight(zero, s.grid) == 1.0);
    const SeriesDraw draw = draw_series(gibbs_sequence(), s.basis, 8, s.grid, 3, 0);
    const double w = gibbs_weight(draw, s.grid);
    CHECK(w > 0.0);
    CHECK(w <= 1.0);
    CHECK(gibbs_sequence()(1) ==
          doctest::Approx(std::numbers::sqrt2 / 2.404825557695773).epsilon(1e-14));

    const GibbsSample a = sample_gibbs_weights(32, 500, 17);
    const GibbsSample b = sample_gibbs_weights(32, 500, 17);
    CHECK(a.weights == b.weights);
    CHECK(a.estimate.mean == b.estimate.mean);
    for (std::size_t k = 0; k < a.weights.size(); ++k) {
        CHECK(a.weights[k] > 0.0);
        CHECK(a.weights[k] <= 1.0);
        CHECK(a.log_weights[k] <= 0.0);
        if (a.weights[k] > DBL_MIN)
            CHECK(std::log(a.weights[k]) == doctest::Approx(a.log_weights[k]).epsilon(1e-12));
    }
    CHECK(a.estimate.mean > 0.01);
    CHECK(a.estimate.mean < 0.99);
}

TEST_CASE("half-Sobolev energy diverges logarithmically")
{
    const HalfSobolevEnergy one = h_half_partial_energy(1, 10, 1);
    CHECK(one.analytic == 2.0);
    CHECK_FALSE(one.ratio_to_log.has_value());
    double previous = 0.0;
    for (std::size_t n : {1u, 2u, 10u, 100u, 1000u}) {
        const double value = h_half_partial_energy(n, 1, 1).analytic;
        CHECK(value > previous);
        previous = value;
    }
    const HalfSobolevEnergy big = h_half_partial_energy(10'000, 2000, 4);
    const double harmonic_asymptotic = std::log(1e4) + std::numbers::egamma + 0.5e-4;
    CHECK(std::abs(big.analytic - 2.0 * harmonic_asymptotic) <= 1e-8);
    CHECK(std::abs(big.estimate.mean - big.analytic) <= 3.0 * big.estimate.standard_error);
    REQUIRE(big.ratio_to_log.has_value());
    CHECK(*big.ratio_to_log > 1.0);
    CHECK(*big.ratio_to_log < 1.1);
}
