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

#include "lpseries/basis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lpseries/io.hpp"
#include "lpseries/parallel.hpp"

namespace lpseries {

RadialBasis::RadialBasis(int d, ZeroTable zeros, std::vector<double> normalizers)
    : d_(d), zeros_(std::move(zeros)), normalizers_(std::move(normalizers))
{
    if (BesselOrder::from_dimension(d).value() != zeros_.order().value())
        throw std::invalid_argument("RadialBasis: zero table order does not match d");
    if (normalizers_.size() > zeros_.size())
        throw std::invalid_argument("RadialBasis: more normalizers than zeros");
    const double nu = order();
    amplitudes_.resize(normalizers_.size());
    for (std::size_t i = 0; i < normalizers_.size(); ++i) {
        if (!(normalizers_[i] > 0.0) || !std::isfinite(normalizers_[i]))
            throw std::invalid_argument("RadialBasis: normalizers must be positive");
        amplitudes_[i] = std::pow(zeros_.values()[i], nu) / normalizers_[i];
    }
}

void RadialBasis::check_index(std::size_t n) const
{
    if (n < 1 || n > size())
        throw std::out_of_range("RadialBasis: mode index " + std::to_string(n) +
                                " outside [1, " + std::to_string(size()) + "]");
}

double RadialBasis::zero(std::size_t n) const
{
    check_index(n);
    return zeros_.values()[n - 1];
}

double RadialBasis::normalizer(std::size_t n) const
{
    check_index(n);
    return normalizers_[n - 1];
}

double RadialBasis::amplitude(std::size_t n) const
{
    check_index(n);
    return amplitudes_[n - 1];
}

//---------------------------------------------------------------------------//

namespace {

void require_matching_grid(int d, const QuadratureGrid& grid)
{
    if (grid.dimension() != d)
        throw std::invalid_argument("grid dimension " +
                                    std::to_string(grid.dimension()) +
                                    " does not match basis dimension " +
                                    std::to_string(d));
}

}  // namespace

RadialBasis build_radial_basis(int d, std::size_t n_max,
                               const QuadratureGrid& grid)
{
    require_matching_grid(d, grid);
    const BesselOrder nu = BesselOrder::from_dimension(d);
    ZeroTable zeros = bessel_zeros(nu, n_max);
    require_resolution(grid, zeros.zero(n_max));

    // int_0^1 J_nu(z r)^2 r dr = z^{2 nu} int_0^1 G(z r)^2 r^{d-1} dr, which
    // reuses the grid weights and avoids the r^{-nu} singular form.
    const auto nodes = grid.nodes();
    const auto weights = grid.weights();
    const auto z = zeros.values();
    std::vector<double> normalizers(n_max);
    parallel_for(n_max, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            double sum = 0.0;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                const double g = kernel_g(d, z[k] * nodes[i]);
                sum += weights[i] * g * g;
            }
            normalizers[k] = std::pow(z[k], nu.value()) * std::sqrt(sum);
        }
    });
    return RadialBasis(d, std::move(zeros), std::move(normalizers));
}

double eval_e(const RadialBasis& basis, std::size_t n, double r)
{
    if (!(r >= 0.0 && r <= 1.0))
        throw std::out_of_range("eval_e: radius " + format_double(r) +
                                " outside [0, 1]");
    return basis.amplitude(n) * kernel_g(basis.dimension(), basis.zero(n) * r);
}

std::vector<double> sample_mode(const RadialBasis& basis, std::size_t n,
                                const QuadratureGrid& grid)
{
    require_matching_grid(basis.dimension(), grid);
    require_resolution(grid, basis.zero(n));
    const double a = basis.amplitude(n);
    const double z = basis.zero(n);
    std::vector<double> values(grid.size());
    const auto nodes = grid.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        values[i] = a * kernel_g(basis.dimension(), z * nodes[i]);
    return values;
}

double lp_norm_of_e(const RadialBasis& basis, std::size_t n, double p,
                    const QuadratureGrid& grid)
{
    std::vector<double> values = sample_mode(basis, n, grid);
    for (double& v : values)
        v = std::fabs(v);
    return lp_norm(grid, values, p);
}

double sup_norm_of_e(const RadialBasis& basis, std::size_t n)
{
    return basis.amplitude(n) * kernel_g_at_zero(basis.dimension());
}

double delta_bound(std::size_t n, double p, int d)
{
    if (n < 1 || d < 1 || !(p >= 2.0))
        throw std::invalid_argument("delta_bound: need n >= 1, d >= 1, p >= 2");
    const double dd = d;
    const double nn = static_cast<double>(n);
    if (d == 1)
        return 1.0;
    const double critical = 2.0 * dd / (dd - 1.0);
    if (std::fabs(p - critical) <= 1e-12 * critical)
        return std::pow(std::log(2.0 + nn), (dd - 1.0) / (2.0 * dd));
    if (p < critical)
        return 1.0;
    return std::pow(nn, -dd / p + (dd - 1.0) / 2.0);
}

double concentration_radius(int d)
{
    const double half = 0.5 * kernel_g_at_zero(d);
    // G decreases from the origin up to the first zero of J_{nu+1}, which
    // lies beyond the first zero of J_nu; scan to bracket, then bisect.
    const double step = 1e-2;
    double lo = 0.0;
    double hi = step;
    while (kernel_g(d, hi) >= half) {
        lo = hi;
        hi += step;
        if (hi > 100.0)
            throw std::runtime_error("concentration_radius: scan did not cross G(0)/2");
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (kernel_g(d, mid) >= half ? lo : hi) = mid;
    }
    return lo;
}

double concentration_radius(const RadialBasis& basis)
{
    return concentration_radius(basis.dimension());
}

double gram_deviation(const RadialBasis& basis, std::size_t count,
                      const QuadratureGrid& grid)
{
    if (count > basis.size())
        throw std::out_of_range("gram_deviation: count exceeds basis size");
    std::vector<std::vector<double>> modes;
    modes.reserve(count);
    for (std::size_t n = 1; n <= count; ++n)
        modes.push_back(sample_mode(basis, n, grid));
    const auto w = grid.weights();
    double worst = 0.0;
    for (std::size_t m = 0; m < count; ++m) {
        for (std::size_t n = m; n < count; ++n) {
            double sum = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i)
                sum += w[i] * modes[m][i] * modes[n][i];
            worst = std::max(worst, std::fabs(sum - (m == n ? 1.0 : 0.0)));
        }
    }
    return worst;
}

void write_basis_csv(const RadialBasis& basis, const QuadratureGrid& grid,
                     std::span<const double> exponents, std::ostream& out)
{
    out << "n,z_n,beta_n,sup_norm";
    for (double p : exponents)
        out << ",lp_norm@" << format_double(p);
    out << '\n';
    std::vector<std::vector<double>> norms(basis.size(),
                                           std::vector<double>(exponents.size()));
    parallel_for(basis.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k)
            for (std::size_t j = 0; j < exponents.size(); ++j)
                norms[k][j] = lp_norm_of_e(basis, k + 1, exponents[j], grid);
    });
    for (std::size_t n = 1; n <= basis.size(); ++n) {
        out << n << ',' << format_double(basis.zero(n)) << ','
            << format_double(basis.normalizer(n)) << ','
            << format_double(sup_norm_of_e(basis, n));
        for (double v : norms[n - 1])
            out << ',' << format_double(v);
        out << '\n';
    }
}

//---------------------------------------------------------------------------//

ModeNormSweep::ModeNormSweep(int d, std::vector<double> exponents,
                             std::size_t points_per_lobe)
    : d_(d),
      nu_(BesselOrder::from_dimension(d)),
      exponents_(std::move(exponents)),
      rule_(gauss_legendre(points_per_lobe)),
      phi_(exponents_.size(), 0.0L)
{
    for (double p : exponents_)
        if (!(p >= 1.0))
            throw std::invalid_argument("ModeNormSweep: exponents must be >= 1");
}

void ModeNormSweep::advance()
{
    const double left = zero_;
    zero_ = next_bessel_zero(nu_, n_ + 1, left);
    ++n_;
    const double half = 0.5 * (zero_ - left);
    const double mid = 0.5 * (zero_ + left);
    long double lobe2 = 0.0L;
    std::vector<long double> lobe(exponents_.size(), 0.0L);
    for (std::size_t j = 0; j < rule_.nodes.size(); ++j) {
        const double s = mid + half * rule_.nodes[j];
        const double g = std::fabs(kernel_g(d_, s));
        const double w = half * rule_.weights[j] * std::pow(s, d_ - 1);
        lobe2 += static_cast<long double>(w) * g * g;
        for (std::size_t k = 0; k < exponents_.size(); ++k)
            lobe[k] += static_cast<long double>(w) * std::pow(g, exponents_[k]);
    }
    phi2_ += lobe2;
    for (std::size_t k = 0; k < exponents_.size(); ++k)
        phi_[k] += lobe[k];
}

double ModeNormSweep::normalizer() const
{
    if (n_ == 0)
        throw std::logic_error("ModeNormSweep: call advance() first");
    return static_cast<double>(std::sqrt(phi2_)) / zero_;
}

double ModeNormSweep::lp_norm(std::size_t k) const
{
    const double beta = normalizer();
    const double p = exponents_.at(k);
    const double nu = nu_.value();
    // beta^{-1} z^{nu - d/p} Phi_p^{1/p}
    return std::pow(zero_, nu - d_ / p) *
           std::pow(static_cast<double>(phi_[k]), 1.0 / p) / beta;
}

double ModeNormSweep::sup_norm() const
{
    return std::pow(zero_, nu_.value()) / normalizer() * kernel_g_at_zero(d_);
}

std::vector<double> mode_lp_norms(int d, std::size_t n_max, double p)
{
    ModeNormSweep sweep(d, {p});
    std::vector<double> norms;
    norms.reserve(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        sweep.advance();
        norms.push_back(sweep.lp_norm(0));
    }
    return norms;
}

//---------------------------------------------------------------------------//

double ConstantModulusBasis::abs_value(std::size_t n) const
{
    if (n < 1)
        throw std::out_of_range("ConstantModulusBasis: indices start at 1");
    return modulus();
}

double ConstantModulusBasis::lp_norm(std::size_t n, double p) const
{
    if (!(p >= 1.0))
        throw std::invalid_argument("ConstantModulusBasis: exponent must be >= 1");
    return abs_value(n) * std::pow(measure_mass(), 1.0 / p);
}

BasisFamily BasisFamily::radial(int d)
{
    BesselOrder::from_dimension(d);
    return BasisFamily{Kind::radial, d};
}

BasisFamily BasisFamily::constant_modulus()
{
    return BasisFamily{Kind::constant_modulus, 0};
}

}  // namespace lpseries
