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

#ifndef LPSERIES_ANALYSIS_HPP
#define LPSERIES_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lpseries/basis.hpp"
#include "lpseries/quad.hpp"
#include "lpseries/series.hpp"

namespace lpseries {

/// E|g|^p = d_p and E|Z|^p = C_p (E|Z|^2)^{p/2} for complex Gaussians with
/// E|g|^2 = 2.  |g|^2 / 2 is a unit exponential, so C_p = Gamma(p/2 + 1).
struct MomentConstants
{
    double p = 2.0;
    double c_p = 1.0;
    double d_p = 2.0;
};

/// Requires p > 0.
MomentConstants moment_constants(double p);

/// d_p || sum_{n <= N} c_n^2 e_n^2 ||_{p/2}^{p/2} = E ||F^N||_p^p, p >= 2.
double expected_lp_pth_power(const CoefficientSequence& c,
                             const RadialBasis& basis, std::size_t truncation,
                             double p, const QuadratureGrid& grid);
/// Constant-modulus case: d_p (sum c_n^2)^{p/2} times the measure mass.
double expected_lp_pth_power(const CoefficientSequence& c,
                             const ConstantModulusBasis& basis,
                             std::size_t truncation, double p);

/// first, first*ratio, ... (`rungs` entries).
std::vector<std::size_t> geometric_ladder(std::size_t first, std::size_t rungs,
                                          std::size_t ratio = 2);
/// 64, 128, 256, 512, 1024.
std::vector<std::size_t> default_ladder();

/**
 * S_N = sum_{n <= N} c_n^2 |e_n|^2 at the quadrature nodes, for every rung N
 * of a ladder.  Built in one pass with a single grid resolving the top rung,
 * after which M_N(p) for any p costs one weighted sum per rung.
 */
class LadderProfile
{
  public:
    LadderProfile(const CoefficientSequence& c, BasisFamily family,
                  std::vector<std::size_t> ladder);

    const BasisFamily& family() const { return family_; }
    std::span<const std::size_t> ladder() const { return ladder_; }
    /// Node count of the underlying grid (1 for the constant-modulus family).
    std::size_t nodes() const { return weights_.size(); }

    /// M_N(p) for every rung.
    std::vector<double> expected_values(double p) const;

  private:
    BasisFamily family_;
    std::vector<std::size_t> ladder_;
    std::vector<double> weights_;
    std::vector<std::vector<double>> sums_;
};

enum class Verdict { convergent, divergent, inconclusive };

std::string_view to_string(Verdict verdict);

/**
 * Finite-ladder verdict on whether a nondecreasing sequence M_N stays
 * bounded.  fitted_growth_exponent is the least-squares slope of
 * log(M_{N_{k+1}} - M_{N_k}) against log N_k, the exponent that decides the
 * verdict; level_slope is the slope of log M_N itself.
 */
struct DivergenceVerdict
{
    double p = 0.0;
    Verdict verdict = Verdict::inconclusive;
    double fitted_growth_exponent = 0.0;
    double level_slope = 0.0;
    std::vector<std::pair<std::size_t, double>> ladder;
    std::string diagnostic;
};

/**
 * Divergent: increments grow (exponent > divergent) and M strictly
 * increases.  Convergent: increments shrink geometrically along the ladder
 * (exponent < convergent, each increment below the previous), or the last
 * increment is below `negligible` relative to M.  Every test is on ratios,
 * so scaling c leaves verdicts unchanged.
 */
struct ClassifierThresholds
{
    double divergent = 0.05;
    double convergent = -0.05;
    double negligible = 1e-12;
};

inline constexpr std::size_t min_ladder_rungs = 5;

DivergenceVerdict classify_ladder(double p, std::span<const std::size_t> ladder,
                                  std::span<const double> values,
                                  const ClassifierThresholds& thresholds = {});

DivergenceVerdict classify_divergence(const LadderProfile& profile, double p,
                                      const ClassifierThresholds& thresholds = {});

DivergenceVerdict classify_divergence(const CoefficientSequence& c,
                                      BasisFamily family, double p,
                                      std::vector<std::size_t> ladder);

struct BracketOptions
{
    double p_min = 2.0;
    double p_max = 20.0;
    double tol = 0.25;
    ClassifierThresholds thresholds;
};

/// Edges from the two mode-norm series: lower is the largest p with
/// sum c_n^2 ||e_n||_p^2 convergent, upper the smallest p with
/// sum c_n^p ||e_n||_p^p divergent (absent when none up to p_max).
struct TheoremBracket
{
    double lower = 0.0;
    std::optional<double> upper;
};

/// lower: largest p classified Convergent; upper: smallest p classified
/// Divergent, absent (+infinity) if p_max is not Divergent.
struct PcrBracket
{
    double lower = 0.0;
    std::optional<double> upper;
    bool lower_found = true;
    TheoremBracket theorem_bracket;
    std::vector<DivergenceVerdict> probes;
};

PcrBracket bracket_pcr(const LadderProfile& profile,
                       const CoefficientSequence& c,
                       const BracketOptions& options = {});

PcrBracket bracket_pcr(const CoefficientSequence& c, BasisFamily family,
                       std::vector<std::size_t> ladder,
                       const BracketOptions& options = {});

TheoremBracket theorem_bracket(const CoefficientSequence& c, BasisFamily family,
                               std::span<const std::size_t> ladder,
                               const BracketOptions& options = {});

/// Partial sums of c_n^a ||e_n||_p^b at each rung, norms from ModeNormSweep.
std::vector<double> norm_series_partial_sums(const CoefficientSequence& c,
                                             BasisFamily family, double p,
                                             double coefficient_power,
                                             double norm_power,
                                             std::span<const std::size_t> ladder);

/// Slope of log(sum_{n <= N} n^{d-1} c_n^2) against log N, clamped to
/// [0, d-1].
double alpha_star(const CoefficientSequence& c, int d,
                  std::span<const std::size_t> ladder);

/// 2d / alpha_star, +infinity for alpha_star = 0.
double divergence_exponent_bound(double alpha_star, int d);

class NoSuchSequence : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Sparse sequence c_{n_k} = 2^{-k} with ||e_{n_k}||_p >= 2^k.
struct AdversarialSequence
{
    CoefficientSequence sequence;
    std::vector<std::size_t> indices;
    std::vector<double> norms;
};

/**
 * Sweeps modes n = 1..mode_cap in order and takes the first index past the
 * previous one whose L^p norm reaches 2^k, for k = 1..K.  Throws
 * NoSuchSequence if the sweep ends first (always for the constant-modulus
 * family, whose norms are all 1).
 */
AdversarialSequence construct_diverging_sequence(BasisFamily family, double p,
                                                 std::size_t budget,
                                                 std::size_t mode_cap = 2'000'000);

/// ||e_n||_p for a single mode, computed on a grid resolving z_n with the
/// normalizer from the same grid; independent of ModeNormSweep.
double grid_lp_norm_of_mode(int d, std::size_t n, double p);

struct FerniquePoint
{
    double eps = 0.0;
    MonteCarloEstimate estimate;  // of exp(eps ||F^N||_p^2); +inf on overflow
};

std::vector<FerniquePoint> fernique_probe(const CoefficientSequence& c,
                                          const RadialBasis& basis, double p,
                                          std::size_t truncation,
                                          std::span<const double> eps_ladder,
                                          const QuadratureGrid& grid,
                                          std::size_t n_seeds,
                                          std::uint64_t master_seed);

/// 2 pi int_0^1 |F|^4 r dr: the L^4 norm to the fourth over the unit disc.
double disc_l4_fourth_power(const SeriesDraw& draw, const QuadratureGrid& grid);

/// exp(-1/2 ||F||_{L^4(disc)}^4); the grid must be two-dimensional.
/// Weights below the double range are reported as DBL_MIN, keeping the
/// result in (0, 1].
double gibbs_weight(const SeriesDraw& draw, const QuadratureGrid& grid);
double gibbs_weight_from_l4(double l4_fourth_power);

/// c_n = sqrt(2) / z_{n,2}.
CoefficientSequence gibbs_sequence();

struct GibbsSample
{
    std::size_t truncation = 0;
    std::vector<double> weights;
    std::vector<double> log_weights;  // -1/2 ||F||_4^4, exact
    MonteCarloEstimate estimate;
};

/// Weights for streams 0..n_seeds-1 of master_seed at truncation N.
GibbsSample sample_gibbs_weights(std::size_t truncation, std::size_t n_seeds,
                                 std::uint64_t master_seed);

struct HalfSobolevEnergy
{
    std::size_t truncation = 0;
    double analytic = 0.0;  // 2 H_N
    std::optional<double> ratio_to_log;  // 2 H_N / (2 ln N), N >= 2
    MonteCarloEstimate estimate;  // of sum_{n <= N} |g_n|^2 / n
};

HalfSobolevEnergy h_half_partial_energy(std::size_t truncation,
                                        std::size_t n_seeds,
                                        std::uint64_t master_seed);

/// Least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace lpseries

#endif  // LPSERIES_ANALYSIS_HPP
