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

#ifndef LPSERIES_QUAD_HPP
#define LPSERIES_QUAD_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace lpseries {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(std::size_t points);

/**
 * Composite Gauss-Legendre grid on [0, 1] for the measure r^{d-1} dr.
 *
 * `weights` already contain the factor r^{d-1}; `base_weights` are the plain
 * Lebesgue weights on the same nodes, for integrands that carry a different
 * radial weight.  The grid is immutable once built.
 */
class QuadratureGrid
{
  public:
    QuadratureGrid(int d, std::vector<double> nodes,
                   std::vector<double> base_weights,
                   double max_resolved_frequency,
                   std::size_t points_per_panel);

    int dimension() const { return d_; }
    std::size_t size() const { return nodes_.size(); }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }
    std::span<const double> base_weights() const { return base_weights_; }
    double max_resolved_frequency() const { return max_frequency_; }
    std::size_t points_per_panel() const { return points_per_panel_; }

  private:
    int d_;
    std::vector<double> nodes_;
    std::vector<double> base_weights_;
    std::vector<double> weights_;
    double max_frequency_;
    std::size_t points_per_panel_;
};

/// Hard ceiling on grid size.
inline constexpr std::size_t max_grid_nodes = 100'000'000;

/**
 * Builds panels of width <= pi / (4 * max_mode_zero) with
 * `points_per_panel` Gauss-Legendre nodes each, so any integrand oscillating
 * at frequency up to max_mode_zero gets at least eight panels per period.
 * Frequencies below pi are rounded up to pi (four panels).
 *
 * Throws std::invalid_argument if d < 1, max_mode_zero is not positive or
 * points_per_panel < 8, and std::length_error beyond max_grid_nodes.
 */
QuadratureGrid build_grid(int d, double max_mode_zero,
                          std::size_t points_per_panel = 8);

/// sum_i w_i f_i^q for nonnegative samples f (q > 0).
double power_integral(const QuadratureGrid& grid, std::span<const double> f,
                      double q);

/// (sum_i w_i f_i^p)^{1/p}; rejects negative samples and p < 1.
double lp_norm(const QuadratureGrid& grid, std::span<const double> f, double p);

/// Thrown when a grid cannot resolve the oscillation of a requested mode.
class ResolutionError : public std::runtime_error
{
  public:
    ResolutionError(double required_frequency, double resolved_frequency);

    double required_frequency() const { return required_; }
    double resolved_frequency() const { return resolved_; }

  private:
    double required_;
    double resolved_;
};

/// Throws ResolutionError unless the grid resolves `frequency`.
void require_resolution(const QuadratureGrid& grid, double frequency);

}  // namespace lpseries

#endif  // LPSERIES_QUAD_HPP
