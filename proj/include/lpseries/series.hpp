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

#ifndef LPSERIES_SERIES_HPP
#define LPSERIES_SERIES_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpseries/basis.hpp"
#include "lpseries/quad.hpp"
#include "lpseries/rng.hpp"

namespace lpseries {

/**
 * Nonnegative, square-summable coefficients c_1, c_2, ...
 *
 *   power_law(a, alpha)     c_n = a n^{-alpha}, alpha > 1/2
 *   inverse_zero(d, scale)  c_n = scale / z_{n,d}
 *   sparse(indices, values) c_n = values[k] at n = indices[k], else 0
 *   explicit_list(values)   c_n = values[n-1], 0 past the end
 *
 * Textual specs: "powerlaw:a:alpha", "invzero" (d = 2, scale = sqrt 2),
 * "invzero:d:scale", "sparse:FILE" (lines "index value"), "explicit:FILE"
 * (one value per line).  '#' starts a comment in both file formats.
 */
class CoefficientSequence
{
  public:
    enum class Kind { power_law, inverse_zero, sparse, explicit_list };

    static CoefficientSequence power_law(double a, double alpha);
    /// Zeros are tabulated up to `capacity`; asking for c_n beyond it throws.
    static CoefficientSequence inverse_zero(int d, double scale,
                                            std::size_t capacity = 1 << 16);
    static CoefficientSequence sparse(std::vector<std::size_t> indices,
                                      std::vector<double> values);
    static CoefficientSequence explicit_list(std::vector<double> values);
    static CoefficientSequence parse(std::string_view spec);

    Kind kind() const { return kind_; }

    /// c_n for n >= 1.
    double operator()(std::size_t n) const;
    /// c_1, ..., c_count.
    std::vector<double> first(std::size_t count) const;
    /// Same rule with every c_n multiplied by factor > 0.
    CoefficientSequence scaled(double factor) const;
    /// Canonical spec-like description, used in reports.
    std::string describe() const;

    /// Indices of the nonzero entries for finitely supported kinds.
    std::span<const std::size_t> support() const { return indices_; }

  private:
    CoefficientSequence() = default;

    Kind kind_ = Kind::power_law;
    double a_ = 1.0;
    double alpha_ = 1.0;
    int d_ = 2;
    double factor_ = 1.0;
    std::shared_ptr<const ZeroTable> zeros_;
    std::vector<std::size_t> indices_;
    std::vector<double> values_;
    std::string source_;
};

/// One realization of F^N = sum_{n <= N} g_n c_n e_n at the grid nodes.
struct SeriesDraw
{
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
    std::size_t truncation = 0;
    std::vector<std::complex<double>> g;
    std::vector<double> field_re;
    std::vector<double> field_im;
};

/**
 * Precomputed c_n e_n(r_i) for n <= N on a grid, so many draws can be
 * evaluated at the cost of the linear combination only.
 */
class SeriesSampler
{
  public:
    SeriesSampler(const CoefficientSequence& c, const RadialBasis& basis,
                  std::size_t truncation, const QuadratureGrid& grid);

    std::size_t truncation() const { return truncation_; }
    std::size_t nodes() const { return nodes_; }

    /// Field for coefficients g_1..g_N of `stream`.
    SeriesDraw draw(const RandomStream& stream) const;
    /// Field for given g (size >= N; extra entries ignored).
    void evaluate(std::span<const std::complex<double>> g,
                  std::vector<double>& re, std::vector<double>& im) const;

    /// sum_i w_i |F_i|^p for streams [first, first + count) of master_seed,
    /// evaluated in seed batches so each row of the mode table is read once
    /// per batch.  Bitwise equal to field_power_integral on single draws.
    std::vector<double> power_integrals(const QuadratureGrid& grid,
                                        std::uint64_t master_seed,
                                        std::uint64_t first, std::size_t count,
                                        double p) const;

  private:
    std::size_t truncation_;
    std::size_t nodes_;
    static constexpr std::size_t block_nodes = 4;

    std::vector<double> table_;    // row n-1 holds c_n e_n at all nodes
    std::vector<double> blocked_;  // same values, node-block major
};

/// Builds F^N on the grid for stream (master_seed, stream_index).
SeriesDraw draw_series(const CoefficientSequence& c, const RadialBasis& basis,
                       std::size_t truncation, const QuadratureGrid& grid,
                       std::uint64_t master_seed, std::uint64_t stream_index);

/// sum_i w_i |F_i|^p on the draw's grid.
double field_power_integral(const SeriesDraw& draw, const QuadratureGrid& grid,
                            double p);

/// Sample mean with its standard error.
struct MonteCarloEstimate
{
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t samples = 0;
};

/// Sequential (order-fixed) mean and standard error.
MonteCarloEstimate summarize(std::span<const double> samples);

/// Monte Carlo estimate and exact value of E||F_N - F_M||^2 in L^2.
struct IncrementEstimate
{
    MonteCarloEstimate estimate;
    double analytic = 0.0;  // 2 sum_{M < n <= N} c_n^2
};

/// Seeds are streams 0..n_seeds-1 of master_seed.
IncrementEstimate l2_cauchy_increment(const CoefficientSequence& c,
                                      const RadialBasis& basis, std::size_t m,
                                      std::size_t n, const QuadratureGrid& grid,
                                      std::size_t n_seeds,
                                      std::uint64_t master_seed);

/// Constant-modulus version: ||sum g_n c_n e_n||^2 = sum |g_n|^2 c_n^2.
IncrementEstimate l2_cauchy_increment(const CoefficientSequence& c,
                                      const ConstantModulusBasis& basis,
                                      std::size_t m, std::size_t n,
                                      std::size_t n_seeds,
                                      std::uint64_t master_seed);

/// sigma^2(r) = sum_{n <= N} c_n^2 e_n(r)^2.
double pointwise_sigma2(const CoefficientSequence& c, const RadialBasis& basis,
                        double r, std::size_t truncation);
double pointwise_sigma2(const CoefficientSequence& c,
                        const ConstantModulusBasis& basis, double r,
                        std::size_t truncation);

/// F^N(r) for streams 0..n_seeds-1 of master_seed.
std::vector<std::complex<double>> pointwise_samples(
    const CoefficientSequence& c, const RadialBasis& basis, double r,
    std::size_t truncation, std::size_t n_seeds, std::uint64_t master_seed);

/// CSV with columns r,re,im.
void write_field_csv(const SeriesDraw& draw, const QuadratureGrid& grid,
                     std::ostream& out);

}  // namespace lpseries

#endif  // LPSERIES_SERIES_HPP
