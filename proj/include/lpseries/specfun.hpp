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

#ifndef LPSERIES_SPECFUN_HPP
#define LPSERIES_SPECFUN_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace lpseries {

/**
 * Order of the Bessel function J_nu attached to the radial Laplacian on the
 * unit ball of R^d, nu = (d-2)/2.  Only nonnegative orders are supported.
 */
class BesselOrder
{
  public:
    explicit BesselOrder(double nu);

    static BesselOrder from_dimension(int d);

    double value() const { return nu_; }

  private:
    double nu_;
};

/// Gamma function for x > 0 (Lanczos, g = 7).  Throws std::domain_error
/// for x <= 0.
double gamma(double x);

/**
 * Bessel function of the first kind J_nu(r), r >= 0.
 *
 * The ascending power series is summed in extended precision for
 * r <= bessel_series_cutoff(nu); beyond it the Hankel asymptotic expansion
 * is used with as many correction terms as needed to push the truncation
 * error below 1e-17.  Absolute error is below 1e-10 for nu <= 3 and
 * r <= 1e6.
 */
double bessel_j(BesselOrder nu, double r);

/// Radius at which bessel_j switches from the power series to the
/// asymptotic expansion.
double bessel_series_cutoff(BesselOrder nu);

/// Power-series branch of bessel_j, exposed so the two branches can be
/// compared on their overlap window.
double bessel_j_series(BesselOrder nu, double r);

/// Asymptotic branch of bessel_j, valid for large r.
double bessel_j_asymptotic(BesselOrder nu, double r);

/// Derivative J_nu'(r) = (nu/r) J_nu(r) - J_{nu+1}(r), with the r = 0 limit.
double bessel_j_derivative(BesselOrder nu, double r);

/**
 * Regularized kernel G(s) = s^{-(d-2)/2} J_{(d-2)/2}(s), d >= 2.
 *
 * Near the origin the everywhere-regular series is used, so
 * G(0) = 1 / (2^{(d-2)/2} Gamma(d/2)) with no 0/0 cancellation.
 */
double kernel_g(int d, double s);

/// G(0) = 1 / (2^{(d-2)/2} Gamma(d/2)).
double kernel_g_at_zero(int d);

/**
 * The first n_max positive zeros of J_nu, strictly increasing.
 *
 * Immutable once built.  Indexing through zero() is 1-based to match the
 * usual z_1 < z_2 < ... numbering.
 */
class ZeroTable
{
  public:
    ZeroTable(BesselOrder nu, std::vector<double> zeros);

    BesselOrder order() const { return nu_; }
    std::size_t size() const { return zeros_.size(); }

    /// n-th zero, 1 <= n <= size().
    double zero(std::size_t n) const;

    std::span<const double> values() const { return zeros_; }

  private:
    BesselOrder nu_;
    std::vector<double> zeros_;
};

/**
 * First n_max zeros of J_nu.  Each zero is bracketed by a sign change
 * around a McMahon initial guess and refined by safeguarded Newton to
 * relative tolerance 1e-12.  Throws std::runtime_error if a bracket cannot
 * be found, rather than skipping a zero.
 */
ZeroTable bessel_zeros(BesselOrder nu, std::size_t n_max);

/// The n-th zero of J_nu given the (n-1)-th (0 for n = 1); the building
/// block of bessel_zeros for callers that walk zeros one at a time.
double next_bessel_zero(BesselOrder nu, std::size_t n, double previous);

/// McMahon asymptotic estimate of the n-th zero of J_nu.
double mcmahon_zero_estimate(BesselOrder nu, std::size_t n);

/// Refine the unique zero of J_nu in [lower, upper] (which must carry a sign
/// change), starting Newton from `guess`.
double refine_bessel_zero(BesselOrder nu, double lower, double upper,
                          double guess);

/// Number of sign changes of J_nu on (a, b] sampled with the given step.
std::size_t count_sign_changes(BesselOrder nu, double a, double b, double step);

/// CSV dump with columns n,z_n at 17 significant digits.
void write_zero_table_csv(const ZeroTable& table, std::ostream& out);

}  // namespace lpseries

#endif  // LPSERIES_SPECFUN_HPP
