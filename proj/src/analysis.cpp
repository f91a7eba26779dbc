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

#include "lpseries/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "lpseries/io.hpp"
#include "lpseries/parallel.hpp"
#include "lpseries/specfun.hpp"

namespace lpseries {

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

void check_exponent(double p)
{
    if (!(p >= 2.0) || !std::isfinite(p))
        throw std::invalid_argument("exponent p must be finite and >= 2, got " +
                                    format_double(p));
}

void check_ladder(std::span<const std::size_t> ladder)
{
    if (ladder.empty())
        throw std::invalid_argument("ladder must not be empty");
    for (std::size_t k = 0; k < ladder.size(); ++k)
        if (ladder[k] < 1 || (k > 0 && ladder[k] <= ladder[k - 1]))
            throw std::invalid_argument("ladder rungs must be >= 1 and increasing");
}

// Largest p in [lo, hi] with pred(p) true, given pred(lo) true; bisection to
// width tol.  Returns hi if pred(hi) holds.
double last_true(const std::function<bool(double)>& pred, double lo, double hi,
                 double tol)
{
    if (pred(hi))
        return hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? lo : hi) = mid;
    }
    return lo;
}

// Smallest p in [lo, hi] with pred(p) true, or nothing if pred(hi) fails.
std::optional<double> first_true(const std::function<bool(double)>& pred,
                                 double lo, double hi, double tol)
{
    if (!pred(hi))
        return std::nullopt;
    if (pred(lo))
        return lo;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? hi : lo) = mid;
    }
    return hi;
}

void check_bracket_options(const BracketOptions& options)
{
    if (!(options.p_min >= 2.0) || !(options.p_max > options.p_min) ||
        !std::isfinite(options.p_max))
        throw std::invalid_argument("bracket needs 2 <= p_min < p_max < inf");
    if (!(options.tol >= 0.1))
        throw std::invalid_argument("bracket tolerance must be >= 0.1");
}

}  // namespace

MomentConstants moment_constants(double p)
{
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("moment_constants: p must be positive");
    MomentConstants m;
    m.p = p;
    m.c_p = lpseries::gamma(0.5 * p + 1.0);
    m.d_p = std::pow(2.0, 0.5 * p) * m.c_p;
    return m;
}

double expected_lp_pth_power(const CoefficientSequence& c,
                             const RadialBasis& basis, std::size_t truncation,
                             double p, const QuadratureGrid& grid)
{
    check_exponent(p);
    if (truncation > basis.size())
        throw std::out_of_range("truncation exceeds basis size");
    std::vector<double> s(grid.size(), 0.0);
    for (std::size_t n = 1; n <= truncation; ++n) {
        const double coefficient = c(n);
        if (coefficient == 0.0)
            continue;
        const std::vector<double> mode = sample_mode(basis, n, grid);
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] += coefficient * coefficient * mode[i] * mode[i];
    }
    return moment_constants(p).d_p * power_integral(grid, s, 0.5 * p);
}

double expected_lp_pth_power(const CoefficientSequence& c,
                             const ConstantModulusBasis& basis,
                             std::size_t truncation, double p)
{
    check_exponent(p);
    return moment_constants(p).d_p *
           std::pow(pointwise_sigma2(c, basis, 0.0, truncation), 0.5 * p) *
           basis.measure_mass();
}

std::vector<std::size_t> geometric_ladder(std::size_t first, std::size_t rungs,
                                          std::size_t ratio)
{
    if (first < 1 || ratio < 2)
        throw std::invalid_argument("geometric_ladder: need first >= 1, ratio >= 2");
    std::vector<std::size_t> ladder;
    std::size_t n = first;
    for (std::size_t k = 0; k < rungs; ++k) {
        ladder.push_back(n);
        n *= ratio;
    }
    return ladder;
}

std::vector<std::size_t> default_ladder()
{
    return geometric_ladder(64, 5);
}

//---------------------------------------------------------------------------//

LadderProfile::LadderProfile(const CoefficientSequence& c, BasisFamily family,
                             std::vector<std::size_t> ladder)
    : family_(family), ladder_(std::move(ladder))
{
    check_ladder(ladder_);
    const std::size_t top = ladder_.back();
    const std::vector<double> coefficients = c.first(top);

    if (family_.kind == BasisFamily::Kind::constant_modulus) {
        const ConstantModulusBasis basis;
        weights_ = {basis.measure_mass()};
        double sum = 0.0;
        std::size_t rung = 0;
        for (std::size_t n = 1; n <= top; ++n) {
            const double e = coefficients[n - 1] * basis.abs_value(n);
            sum += e * e;
            if (n == ladder_[rung]) {
                sums_.push_back({sum});
                ++rung;
            }
        }
        return;
    }

    const int d = family_.dimension;
    const double top_zero =
        bessel_zeros(BesselOrder::from_dimension(d), top).zero(top);
    const QuadratureGrid grid = build_grid(d, top_zero);
    const RadialBasis basis = build_radial_basis(d, top, grid);
    const auto w = grid.weights();
    weights_.assign(w.begin(), w.end());
    sums_.assign(ladder_.size(), std::vector<double>(grid.size(), 0.0));

    std::vector<double> amplitude2(top);
    for (std::size_t n = 1; n <= top; ++n) {
        const double a = coefficients[n - 1] * basis.amplitude(n);
        amplitude2[n - 1] = a * a;
    }
    const auto z = basis.zeros().values();
    const auto nodes = grid.nodes();
    parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double sum = 0.0;
            std::size_t rung = 0;
            for (std::size_t n = 1; n <= top; ++n) {
                if (amplitude2[n - 1] != 0.0) {
                    const double g = kernel_g(d, z[n - 1] * nodes[i]);
                    sum += amplitude2[n - 1] * g * g;
                }
                if (n == ladder_[rung])
                    sums_[rung++][i] = sum;
            }
        }
    });
}

std::vector<double> LadderProfile::expected_values(double p) const
{
    check_exponent(p);
    const double d_p = moment_constants(p).d_p;
    const double half = 0.5 * p;
    std::vector<double> values;
    values.reserve(sums_.size());
    for (const auto& s : sums_) {
        double total = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i)
            total += weights_[i] * std::pow(s[i], half);
        values.push_back(d_p * total);
    }
    return values;
}

//---------------------------------------------------------------------------//

std::string_view to_string(Verdict verdict)
{
    switch (verdict) {
    case Verdict::convergent:
        return "Convergent";
    case Verdict::divergent:
        return "Divergent";
    case Verdict::inconclusive:
        return "Inconclusive";
    }
    return "Inconclusive";
}

double least_squares_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least_squares_slope: need >= 2 paired points");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("least_squares_slope: degenerate abscissae");
    return sxy / sxx;
}

DivergenceVerdict classify_ladder(double p, std::span<const std::size_t> ladder,
                                  std::span<const double> values,
                                  const ClassifierThresholds& thresholds)
{
    check_ladder(ladder);
    if (ladder.size() != values.size())
        throw std::invalid_argument("classify: ladder/value count mismatch");
    if (ladder.size() < min_ladder_rungs)
        throw std::invalid_argument("classify: ladder needs at least " +
                                    std::to_string(min_ladder_rungs) + " rungs");
    DivergenceVerdict v;
    v.p = p;
    for (std::size_t k = 0; k < ladder.size(); ++k) {
        if (!(values[k] >= 0.0))
            throw std::invalid_argument("classify: values must be nonnegative");
        v.ladder.emplace_back(ladder[k], values[k]);
    }
    const std::size_t rungs = ladder.size();
    const double last = values[rungs - 1];

    if (last == 0.0) {
        v.verdict = Verdict::convergent;
        v.fitted_growth_exponent = -infinity;
        v.diagnostic = "identically zero";
        return v;
    }
    if (!std::isfinite(last)) {
        v.verdict = Verdict::divergent;
        v.fitted_growth_exponent = infinity;
        v.level_slope = infinity;
        v.diagnostic = "overflow at the top rung";
        return v;
    }

    std::vector<double> log_n;
    std::vector<double> log_m;
    for (std::size_t k = 0; k < rungs; ++k) {
        if (values[k] > 0.0) {
            log_n.push_back(std::log(static_cast<double>(ladder[k])));
            log_m.push_back(std::log(values[k]));
        }
    }
    v.level_slope = log_n.size() >= 2 ? least_squares_slope(log_n, log_m) : 0.0;

    std::vector<double> increments(rungs - 1);
    for (std::size_t k = 0; k + 1 < rungs; ++k)
        increments[k] = values[k + 1] - values[k];

    if (std::fabs(increments.back()) <= thresholds.negligible * last) {
        v.verdict = Verdict::convergent;
        v.fitted_growth_exponent = -infinity;
        v.diagnostic = "last increment below relative round-off";
        return v;
    }
    const bool increasing =
        std::all_of(increments.begin(), increments.end(), [](double d) { return d > 0.0; });
    if (!increasing) {
        v.verdict = Verdict::inconclusive;
        v.fitted_growth_exponent = std::numeric_limits<double>::quiet_NaN();
        v.diagnostic = "ladder values not strictly increasing";
        return v;
    }
    std::vector<double> log_d(increments.size());
    for (std::size_t k = 0; k < increments.size(); ++k)
        log_d[k] = std::log(increments[k]);
    const std::span<const double> x(log_n.data(), increments.size());
    v.fitted_growth_exponent = least_squares_slope(x, log_d);

    bool shrinking = true;
    for (std::size_t k = 1; k < increments.size(); ++k)
        shrinking = shrinking && increments[k] < increments[k - 1];

    if (v.fitted_growth_exponent > thresholds.divergent) {
        v.verdict = Verdict::divergent;
        v.diagnostic = "increments grow along the ladder";
    } else if (v.fitted_growth_exponent < thresholds.convergent && shrinking) {
        v.verdict = Verdict::convergent;
        v.diagnostic = "increments shrink geometrically along the ladder";
    } else {
        v.verdict = Verdict::inconclusive;
        v.diagnostic = shrinking ? "increment exponent inside the dead band"
                                 : "increments not monotonically shrinking";
    }
    return v;
}

DivergenceVerdict classify_divergence(const LadderProfile& profile, double p,
                                      const ClassifierThresholds& thresholds)
{
    const std::vector<double> values = profile.expected_values(p);
    return classify_ladder(p, profile.ladder(), values, thresholds);
}

DivergenceVerdict classify_divergence(const CoefficientSequence& c,
                                      BasisFamily family, double p,
                                      std::vector<std::size_t> ladder)
{
    if (ladder.size() < min_ladder_rungs)
        throw std::invalid_argument("classify: ladder needs at least " +
                                    std::to_string(min_ladder_rungs) + " rungs");
    return classify_divergence(LadderProfile(c, family, std::move(ladder)), p);
}

//---------------------------------------------------------------------------//

std::vector<double> norm_series_partial_sums(const CoefficientSequence& c,
                                             BasisFamily family, double p,
                                             double coefficient_power,
                                             double norm_power,
                                             std::span<const std::size_t> ladder)
{
    check_ladder(ladder);
    const std::size_t top = ladder.back();
    std::vector<double> sums;
    sums.reserve(ladder.size());
    std::optional<ModeNormSweep> sweep;
    const ConstantModulusBasis torus;
    if (family.kind == BasisFamily::Kind::radial)
        sweep.emplace(family.dimension, std::vector<double>{p});
    double sum = 0.0;
    std::size_t rung = 0;
    for (std::size_t n = 1; n <= top; ++n) {
        double norm = 0.0;
        if (sweep) {
            sweep->advance();
            norm = sweep->lp_norm(0);
        } else {
            norm = torus.lp_norm(n, p);
        }
        const double coefficient = c(n);
        if (coefficient > 0.0)
            sum += std::pow(coefficient, coefficient_power) * std::pow(norm, norm_power);
        if (n == ladder[rung]) {
            sums.push_back(sum);
            ++rung;
        }
    }
    return sums;
}

TheoremBracket theorem_bracket(const CoefficientSequence& c, BasisFamily family,
                               std::span<const std::size_t> ladder,
                               const BracketOptions& options)
{
    check_bracket_options(options);
    auto verdict_for = [&](double p, double coefficient_power, double norm_power) {
        const std::vector<double> sums = norm_series_partial_sums(
            c, family, p, coefficient_power, norm_power, ladder);
        return classify_ladder(p, ladder, sums, options.thresholds).verdict;
    };
    TheoremBracket bracket;
    bracket.lower = last_true(
        [&](double p) { return verdict_for(p, 2.0, 2.0) == Verdict::convergent; },
        options.p_min, options.p_max, options.tol);
    bracket.upper = first_true(
        [&](double p) { return verdict_for(p, p, p) == Verdict::divergent; },
        options.p_min, options.p_max, options.tol);
    return bracket;
}

PcrBracket bracket_pcr(const LadderProfile& profile,
                       const CoefficientSequence& c,
                       const BracketOptions& options)
{
    check_bracket_options(options);
    PcrBracket bracket;
    auto verdict_for = [&](double p) {
        DivergenceVerdict v = classify_divergence(profile, p, options.thresholds);
        const Verdict verdict = v.verdict;
        bracket.probes.push_back(std::move(v));
        return verdict;
    };
    const bool convergent_at_min = verdict_for(options.p_min) == Verdict::convergent;
    bracket.lower_found = convergent_at_min;
    bracket.lower =
        convergent_at_min
            ? last_true([&](double p) { return verdict_for(p) == Verdict::convergent; },
                        options.p_min, options.p_max, options.tol)
            : options.p_min;
    bracket.upper = first_true(
        [&](double p) { return verdict_for(p) == Verdict::divergent; },
        bracket.lower, options.p_max, options.tol);
    bracket.theorem_bracket =
        theorem_bracket(c, profile.family(), profile.ladder(), options);
    std::sort(bracket.probes.begin(), bracket.probes.end(),
              [](const DivergenceVerdict& a, const DivergenceVerdict& b) {
                  return a.p < b.p;
              });
    bracket.probes.erase(std::unique(bracket.probes.begin(), bracket.probes.end(),
                                     [](const DivergenceVerdict& a,
                                        const DivergenceVerdict& b) {
                                         return a.p == b.p;
                                     }),
                         bracket.probes.end());
    return bracket;
}

PcrBracket bracket_pcr(const CoefficientSequence& c, BasisFamily family,
                       std::vector<std::size_t> ladder,
                       const BracketOptions& options)
{
    if (ladder.size() < min_ladder_rungs)
        throw std::invalid_argument("bracket: ladder needs at least " +
                                    std::to_string(min_ladder_rungs) + " rungs");
    return bracket_pcr(LadderProfile(c, family, std::move(ladder)), c, options);
}

//---------------------------------------------------------------------------//

double alpha_star(const CoefficientSequence& c, int d,
                  std::span<const std::size_t> ladder)
{
    check_ladder(ladder);
    if (d < 1)
        throw std::invalid_argument("alpha_star: dimension must be >= 1");
    if (ladder.size() < min_ladder_rungs)
        throw std::invalid_argument("alpha_star: ladder needs at least " +
                                    std::to_string(min_ladder_rungs) + " rungs");
    std::vector<double> x;
    std::vector<double> y;
    double sum = 0.0;
    std::size_t rung = 0;
    for (std::size_t n = 1; n <= ladder.back(); ++n) {
        const double coefficient = c(n);
        sum += std::pow(static_cast<double>(n), d - 1) * coefficient * coefficient;
        if (n == ladder[rung]) {
            if (sum > 0.0) {
                x.push_back(std::log(static_cast<double>(n)));
                y.push_back(std::log(sum));
            }
            ++rung;
        }
    }
    if (x.size() < 2)
        return 0.0;
    return std::clamp(least_squares_slope(x, y), 0.0, static_cast<double>(d - 1));
}

double divergence_exponent_bound(double alpha, int d)
{
    if (!(alpha >= 0.0))
        throw std::invalid_argument("divergence_exponent_bound: alpha* must be >= 0");
    if (alpha == 0.0)
        return infinity;
    return 2.0 * d / alpha;
}

//---------------------------------------------------------------------------//

AdversarialSequence construct_diverging_sequence(BasisFamily family, double p,
                                                 std::size_t budget,
                                                 std::size_t mode_cap)
{
    if (budget < 1)
        throw std::invalid_argument("adversarial construction: budget K must be >= 1");
    if (!(p >= 1.0))
        throw std::invalid_argument("adversarial construction: p must be >= 1");
    if (family.kind == BasisFamily::Kind::constant_modulus)
        throw NoSuchSequence(
            "every mode of the constant-modulus basis has L^p norm 1 < 2");

    ModeNormSweep sweep(family.dimension, {p});
    std::vector<std::size_t> indices;
    std::vector<double> norms;
    std::vector<double> values;
    double best = 0.0;
    double target = 2.0;
    while (indices.size() < budget && sweep.index() < mode_cap) {
        sweep.advance();
        const double norm = sweep.lp_norm(0);
        best = std::max(best, norm);
        if (norm >= target) {
            indices.push_back(sweep.index());
            norms.push_back(norm);
            values.push_back(1.0 / target);
            target *= 2.0;
        }
    }
    if (indices.size() < budget)
        throw NoSuchSequence("L^" + format_double(p) + " norms of the first " +
                             std::to_string(mode_cap) + " modes in d = " +
                             std::to_string(family.dimension) + " stay below " +
                             format_double(target) + " (largest " +
                             format_double(best) + ")");
    AdversarialSequence result{CoefficientSequence::sparse(indices, values),
                               std::move(indices), std::move(norms)};
    return result;
}

double grid_lp_norm_of_mode(int d, std::size_t n, double p)
{
    if (!(p >= 1.0))
        throw std::invalid_argument("grid_lp_norm_of_mode: p must be >= 1");
    const double z = bessel_zeros(BesselOrder::from_dimension(d), n).zero(n);
    const QuadratureGrid grid = build_grid(d, z);
    const auto nodes = grid.nodes();
    std::vector<double> g(grid.size());
    parallel_for(g.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            g[i] = std::fabs(kernel_g(d, z * nodes[i]));
    });
    // e_n = G(z r) / ||G(z .)||_2 on the grid.
    const double l2 = std::sqrt(power_integral(grid, g, 2.0));
    for (double& v : g)
        v /= l2;
    return lp_norm(grid, g, p);
}

//---------------------------------------------------------------------------//

std::vector<FerniquePoint> fernique_probe(const CoefficientSequence& c,
                                          const RadialBasis& basis, double p,
                                          std::size_t truncation,
                                          std::span<const double> eps_ladder,
                                          const QuadratureGrid& grid,
                                          std::size_t n_seeds,
                                          std::uint64_t master_seed)
{
    check_exponent(p);
    for (double eps : eps_ladder)
        if (!(eps >= 0.0))
            throw std::invalid_argument("fernique_probe: eps must be >= 0");
    const SeriesSampler sampler(c, basis, truncation, grid);
    std::vector<double> squared_norms =
        sampler.power_integrals(grid, master_seed, 0, n_seeds, p);
    for (double& v : squared_norms)
        v = std::pow(v, 2.0 / p);
    std::vector<FerniquePoint> points;
    std::vector<double> values(n_seeds);
    for (double eps : eps_ladder) {
        for (std::size_t s = 0; s < n_seeds; ++s)
            values[s] = eps == 0.0 ? 1.0 : std::exp(eps * squared_norms[s]);
        FerniquePoint point{eps, summarize(values)};
        if (!std::isfinite(point.estimate.mean)) {
            point.estimate.mean = infinity;
            point.estimate.standard_error = infinity;
        }
        points.push_back(point);
    }
    return points;
}

double disc_l4_fourth_power(const SeriesDraw& draw, const QuadratureGrid& grid)
{
    if (grid.dimension() != 2)
        throw std::invalid_argument("disc L^4 norm needs a two-dimensional grid");
    return 2.0 * std::numbers::pi * field_power_integral(draw, grid, 4.0);
}

double gibbs_weight_from_l4(double l4_fourth_power)
{
    // The weight is positive for every finite draw; below the double range
    // it is reported as the smallest normal number and the exact value is
    // carried by the log-weight.
    return std::max(std::exp(-0.5 * l4_fourth_power),
                    std::numeric_limits<double>::min());
}

double gibbs_weight(const SeriesDraw& draw, const QuadratureGrid& grid)
{
    return gibbs_weight_from_l4(disc_l4_fourth_power(draw, grid));
}

CoefficientSequence gibbs_sequence()
{
    return CoefficientSequence::inverse_zero(2, std::numbers::sqrt2, 4096);
}

GibbsSample sample_gibbs_weights(std::size_t truncation, std::size_t n_seeds,
                                 std::uint64_t master_seed)
{
    if (truncation < 1)
        throw std::invalid_argument("Gibbs sampling needs N >= 1");
    const CoefficientSequence c =
        CoefficientSequence::inverse_zero(2, std::numbers::sqrt2, truncation);
    const double top_zero = bessel_zeros(BesselOrder(0.0), truncation).zero(truncation);
    const QuadratureGrid grid = build_grid(2, top_zero);
    const RadialBasis basis = build_radial_basis(2, truncation, grid);
    const SeriesSampler sampler(c, basis, truncation, grid);
    GibbsSample sample;
    sample.truncation = truncation;
    sample.log_weights = sampler.power_integrals(grid, master_seed, 0, n_seeds, 4.0);
    sample.weights.resize(n_seeds);
    for (std::size_t s = 0; s < n_seeds; ++s) {
        const double l4 = 2.0 * std::numbers::pi * sample.log_weights[s];
        sample.log_weights[s] = -0.5 * l4;
        sample.weights[s] = gibbs_weight_from_l4(l4);
    }
    sample.estimate = summarize(sample.weights);
    return sample;
}

HalfSobolevEnergy h_half_partial_energy(std::size_t truncation,
                                        std::size_t n_seeds,
                                        std::uint64_t master_seed)
{
    if (truncation < 1)
        throw std::invalid_argument("h_half_partial_energy: N must be >= 1");
    HalfSobolevEnergy result;
    result.truncation = truncation;
    double harmonic = 0.0;
    for (std::size_t n = truncation; n >= 1; --n)
        harmonic += 1.0 / static_cast<double>(n);
    result.analytic = 2.0 * harmonic;
    if (truncation >= 2)
        result.ratio_to_log =
            result.analytic / (2.0 * std::log(static_cast<double>(truncation)));
    std::vector<double> energies(n_seeds);
    parallel_for(n_seeds, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            const RandomStream stream(master_seed, s);
            double sum = 0.0;
            for (std::size_t n = 1; n <= truncation; ++n)
                sum += stream.complex_gaussian_norm(n - 1) / static_cast<double>(n);
            energies[s] = sum;
        }
    });
    result.estimate = summarize(energies);
    return result;
}

}  // namespace lpseries
