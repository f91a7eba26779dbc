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

#include "lpseries/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lpseries/io.hpp"

namespace lpseries {

GaussLegendreRule gauss_legendre(std::size_t points)
{
    if (points < 1)
        throw std::invalid_argument("gauss_legendre: need at least one point");
    GaussLegendreRule rule;
    rule.nodes.resize(points);
    rule.weights.resize(points);
    const auto n = static_cast<double>(points);
    for (std::size_t i = 0; i < (points + 1) / 2; ++i) {
        // Chebyshev-like starting guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= points; ++k) {
                const auto kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[points - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[points - 1 - i] = w;
    }
    if (points % 2 == 1)
        rule.nodes[points / 2] = 0.0;
    return rule;
}

QuadratureGrid::QuadratureGrid(int d, std::vector<double> nodes,
                               std::vector<double> base_weights,
                               double max_resolved_frequency,
                               std::size_t points_per_panel)
    : d_(d),
      nodes_(std::move(nodes)),
      base_weights_(std::move(base_weights)),
      max_frequency_(max_resolved_frequency),
      points_per_panel_(points_per_panel)
{
    if (d_ < 1)
        throw std::invalid_argument("QuadratureGrid: dimension must be >= 1");
    if (nodes_.size() != base_weights_.size() || nodes_.empty())
        throw std::invalid_argument("QuadratureGrid: node/weight size mismatch");
    weights_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!(nodes_[i] > 0.0 && nodes_[i] < 1.0) ||
            (i > 0 && !(nodes_[i] > nodes_[i - 1])) || !(base_weights_[i] > 0.0))
            throw std::invalid_argument(
                "QuadratureGrid: nodes must increase inside (0,1) with positive "
                "weights");
        weights_[i] = base_weights_[i] * std::pow(nodes_[i], d_ - 1);
    }
}

QuadratureGrid build_grid(int d, double max_mode_zero,
                          std::size_t points_per_panel)
{
    if (d < 1)
        throw std::invalid_argument("build_grid: dimension must be >= 1");
    if (!(max_mode_zero > 0.0) || !std::isfinite(max_mode_zero))
        throw std::invalid_argument("build_grid: max_mode_zero must be positive");
    if (points_per_panel < 8)
        throw std::invalid_argument("build_grid: points_per_panel must be >= 8");
    // Low frequencies still get the four panels that resolve frequency pi.
    const double frequency = std::max(max_mode_zero, std::numbers::pi);
    const double panels_real = std::ceil(4.0 * frequency / std::numbers::pi);
    if (panels_real * static_cast<double>(points_per_panel) >
        static_cast<double>(max_grid_nodes))
        throw std::length_error("build_grid: " + format_double(panels_real) +
                                " panels exceed the node ceiling");
    const auto panels = static_cast<std::size_t>(panels_real);
    const GaussLegendreRule rule = gauss_legendre(points_per_panel);
    const double width = 1.0 / static_cast<double>(panels);
    std::vector<double> nodes;
    std::vector<double> base;
    nodes.reserve(panels * points_per_panel);
    base.reserve(panels * points_per_panel);
    for (std::size_t k = 0; k < panels; ++k) {
        const double left = static_cast<double>(k) * width;
        for (std::size_t j = 0; j < points_per_panel; ++j) {
            nodes.push_back(left + 0.5 * width * (rule.nodes[j] + 1.0));
            base.push_back(0.5 * width * rule.weights[j]);
        }
    }
    return QuadratureGrid(d, std::move(nodes), std::move(base), frequency,
                          points_per_panel);
}

double power_integral(const QuadratureGrid& grid, std::span<const double> f,
                      double q)
{
    if (f.size() != grid.size())
        throw std::invalid_argument("power_integral: sample count mismatch");
    const auto w = grid.weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(f[i] >= 0.0))
            throw std::invalid_argument("power_integral: negative or NaN sample");
        sum += w[i] * (q == 1.0 ? f[i] : q == 2.0 ? f[i] * f[i] : std::pow(f[i], q));
    }
    return sum;
}

double lp_norm(const QuadratureGrid& grid, std::span<const double> f, double p)
{
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm: exponent must be >= 1");
    return std::pow(power_integral(grid, f, p), 1.0 / p);
}

ResolutionError::ResolutionError(double required_frequency,
                                 double resolved_frequency)
    : std::runtime_error("grid resolves frequencies up to " +
                         format_double(resolved_frequency) + " but mode needs " +
                         format_double(required_frequency)),
      required_(required_frequency),
      resolved_(resolved_frequency)
{
}

void require_resolution(const QuadratureGrid& grid, double frequency)
{
    if (frequency > grid.max_resolved_frequency())
        throw ResolutionError(frequency, grid.max_resolved_frequency());
}

}  // namespace lpseries
