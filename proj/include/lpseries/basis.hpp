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

#ifndef LPSERIES_BASIS_HPP
#define LPSERIES_BASIS_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "lpseries/quad.hpp"
#include "lpseries/specfun.hpp"

namespace lpseries {

/**
 * Radial Dirichlet eigenfunctions of the Laplacian on the unit ball of R^d,
 * orthonormal in L^2([0,1], r^{d-1} dr):
 *
 *   e_n(r) = beta_n^{-1} z_n^nu G(z_n r),   nu = (d-2)/2,
 *
 * where z_n is the n-th zero of J_nu and beta_n^2 = int_0^1 J_nu(z_n r)^2 r dr.
 * Indices are 1-based.  Immutable once built.
 */
class RadialBasis
{
  public:
    /// Assembles a basis from precomputed zeros and normalizers.  No
    /// consistency check beyond positivity is made, so tests can inject
    /// corrupted tables.
    RadialBasis(int d, ZeroTable zeros, std::vector<double> normalizers);

    int dimension() const { return d_; }
    double order() const { return zeros_.order().value(); }
    std::size_t size() const { return normalizers_.size(); }
    const ZeroTable& zeros() const { return zeros_; }

    double zero(std::size_t n) const;
    double normalizer(std::size_t n) const;
    /// beta_n^{-1} z_n^nu, so e_n(r) = amplitude(n) * G(z_n r).
    double amplitude(std::size_t n) const;

  private:
    void check_index(std::size_t n) const;

    int d_;
    ZeroTable zeros_;
    std::vector<double> normalizers_;
    std::vector<double> amplitudes_;
};

/**
 * Computes the first n_max zeros and the normalizers by quadrature of
 * int_0^1 J_nu(z_n r)^2 r dr on `grid`.  Throws ResolutionError if the grid
 * does not resolve z_{n_max}, std::invalid_argument on a dimension mismatch.
 */
RadialBasis build_radial_basis(int d, std::size_t n_max,
                               const QuadratureGrid& grid);

/// e_n(r) through the regular G form; throws std::out_of_range for a bad
/// index or r outside [0, 1].
double eval_e(const RadialBasis& basis, std::size_t n, double r);

/// e_n sampled at every node of `grid`.
std::vector<double> sample_mode(const RadialBasis& basis, std::size_t n,
                                const QuadratureGrid& grid);

/// (int_0^1 |e_n|^p r^{d-1} dr)^{1/p} on `grid`; ResolutionError if the grid
/// cannot resolve z_n.
double lp_norm_of_e(const RadialBasis& basis, std::size_t n, double p,
                    const QuadratureGrid& grid);

/// sup_r |e_n(r)| = amplitude(n) * G(0), since |G| peaks at the origin.
double sup_norm_of_e(const RadialBasis& basis, std::size_t n);

/**
 * Three-regime bound on ||e_n||_p for p >= 2:
 *   1                            if p < 2d/(d-1),
 *   log(2+n)^{(d-1)/(2d)}        if p = 2d/(d-1),
 *   n^{-d/p + (d-1)/2}           if p > 2d/(d-1).
 */
double delta_bound(std::size_t n, double p, int d);

/// Largest s with |G(t)| >= G(0)/2 on [0, s]; inside z_n r <= s every e_n
/// stays above half its value at the origin.
double concentration_radius(int d);
double concentration_radius(const RadialBasis& basis);

/// max_{m,n <= count} |<e_m, e_n> - delta_mn| on `grid`.
double gram_deviation(const RadialBasis& basis, std::size_t count,
                      const QuadratureGrid& grid);

/// CSV with columns n,z_n,beta_n,sup_norm and one lp_norm@p column per
/// exponent.
void write_basis_csv(const RadialBasis& basis, const QuadratureGrid& grid,
                     std::span<const double> exponents, std::ostream& out);

/**
 * Walks the radial modes one at a time and integrates |G|^q s^{d-1} lobe by
 * lobe between consecutive zeros, giving
 *
 *   beta_n^2 = z_n^{-2} Phi_2(z_n),
 *   ||e_n||_p^p = beta_n^{-p} z_n^{nu p - d} Phi_p(z_n),
 *
 * with Phi_q(x) = int_0^x |G(s)|^q s^{d-1} ds.  Cost per mode is constant, so
 * norms of modes far beyond any affordable grid are cheap.
 */
class ModeNormSweep
{
  public:
    ModeNormSweep(int d, std::vector<double> exponents,
                  std::size_t points_per_lobe = 20);

    /// Moves to the next mode; the first call yields n = 1.
    void advance();

    std::size_t index() const { return n_; }
    double zero() const { return zero_; }
    double normalizer() const;
    /// ||e_n||_p for exponents()[k].
    double lp_norm(std::size_t k) const;
    double sup_norm() const;
    std::span<const double> exponents() const { return exponents_; }

  private:
    int d_;
    BesselOrder nu_;
    std::vector<double> exponents_;
    GaussLegendreRule rule_;
    std::size_t n_ = 0;
    double zero_ = 0.0;
    long double phi2_ = 0.0L;
    std::vector<long double> phi_;
};

/// ||e_n||_p for n = 1..n_max through ModeNormSweep.
std::vector<double> mode_lp_norms(int d, std::size_t n_max, double p);

/**
 * Constant-modulus baseline (torus exponentials reduced to |e_n| = 1) on a
 * probability space: every L^p norm of every e_n is 1.
 */
class ConstantModulusBasis
{
  public:
    double modulus() const { return 1.0; }
    double measure_mass() const { return 1.0; }
    double abs_value(std::size_t n) const;
    double lp_norm(std::size_t n, double p) const;
};

/// Which orthonormal family a computation runs on.
struct BasisFamily
{
    enum class Kind { radial, constant_modulus };

    Kind kind = Kind::radial;
    int dimension = 2;

    static BasisFamily radial(int d);
    static BasisFamily constant_modulus();
};

}  // namespace lpseries

#endif  // LPSERIES_BASIS_HPP
