/*
   Copyright 2026 The kinetic-fp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kfp/grid.hpp"
#include "kfp/model.hpp"
#include "kfp/rng.hpp"

namespace kfp {

/// Eigenvalue j (j + 3N - 5) / (2 N eps0) of the sphere diffusion.
double eigenvalue(int j, int n_particles, double eps0);

/// N -> infinity limit 3 j / (2 eps0).
double limit_eigenvalue(int j, double eps0);

/// Dimension (3N - 5 + 2j) (3N - 6 + j)! / (j! (3N - 5)!) of the degree-j
/// harmonics on the sphere in 3(N-1) dimensions. Exact.
boost::multiprecision::cpp_int degeneracy(int j, int n_particles);

/// Degrees (m_1 .. m_{3n}) of one harmonic chain; axes are ordered
/// (v_11, v_12, v_13, v_21, ...).
struct MultiIndex {
  int j = 0;
  std::vector<int> m;

  bool operator==(const MultiIndex&) const = default;
};

MultiIndex make_index(std::vector<int> m);

/// All compositions of j into 3n nonnegative parts, first part descending.
std::vector<MultiIndex> multi_index_set(int j, int n);

/// Indices of every degree 0..J for n particles.
std::vector<MultiIndex> multi_index_range(int J, int n);

/// False when the index puts degree > 1 on a coordinate whose remaining
/// sphere is zero-dimensional (only possible for n = N - 1).
bool admissible(const MultiIndex& idx, int n_particles);

/// multi_index_range restricted to admissible indices.
std::vector<MultiIndex> multi_index_range(int J, int n, int n_particles);

// ---------------------------------------------------------------------------
// Chain functions on the first d rotated coordinates x = (w_11, w_12, ...).

/// Normalised Legendre chain prod_a P_{k_{a-1}}^{k_a}(x_a / rho_a; q_a) / (k_{a-1}! / m_a!)
/// with k_0 = j, k_a = k_{a-1} - m_a, rho_1^2 = 2 N eps0,
/// rho_{a+1}^2 = rho_a^2 - x_a^2 and q_a = 3N - 2 - a.
/// Returns 0 when x leaves the sphere.
double chain_value(std::span<const int> m, std::span<const double> x, const SystemParams& params);

/// Mean square of the chain under the uniform law on the sphere.
double chain_norm(std::span<const int> m, const SystemParams& params);

/// Density of the first d rotated coordinates of a uniform point on the sphere.
double leading_density(std::span<const double> x, const SystemParams& params);

// ---------------------------------------------------------------------------
// Marginal eigenfunctions.

/// Marginal over particles n+1..N of a chain harmonic times the uniform
/// density, as a function of v_1..v_n. Requires N > n + 1.
double marginal_eigenfunction_finite_n(const MultiIndex& idx, int n, const SystemParams& params,
                                       std::span<const Vec3> v_block);

/// 2^{-j/2} prod_i M(v_i) prod_{i,l} H_{m}(sqrt(3/(4 eps0)) (v_il - u_l)) with
/// M the Maxwellian of temperature 2 eps0 / 3.
double marginal_eigenfunction_limit(const MultiIndex& idx, int n, const SystemParams& params,
                                    std::span<const Vec3> v_block);

/// Uniform marginal density of v_1..v_n (the zero index).
double uniform_marginal(int n, const SystemParams& params, std::span<const Vec3> v_block);

// ---------------------------------------------------------------------------
// Fourier coefficients.

struct CoefficientEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// Chain harmonic evaluated at a full state (through its first n rotated
/// particles).
double harmonic_value(const MultiIndex& idx, const VelocityState& state);

/// Coefficient of a point mass at `state`: harmonic value over its mean square.
double fourier_coefficient_point(const MultiIndex& idx, const VelocityState& state);

using StateSampler = std::function<VelocityState(RngStream&)>;

/// Monte Carlo estimate E[Y]/E_u[Y^2] from `samples` draws of `sampler`.
CoefficientEstimate fourier_coefficient_mc(const StateSampler& sampler, const MultiIndex& idx,
                                           const SystemParams& params, std::int64_t samples,
                                           std::uint64_t seed);

/// Product quadrature on the 2-sphere (N = 2 only). `density` is the initial
/// density relative to the uniform probability measure, as a function of w_1.
double fourier_coefficient_sphere(const std::function<double(const Vec3&)>& density, const MultiIndex& idx,
                                  const SystemParams& params, int nodes = 64);

/// Limit-hierarchy coefficient of an n-particle density on a grid:
/// 2^{-j/2} int f0 prod H_m dv / prod m!.
double fourier_coefficient_limit(const DensityGrid& f0, const MultiIndex& idx, const SystemParams& params);

// ---------------------------------------------------------------------------
// Expansions.

struct SpectralEntry {
  MultiIndex idx;
  double coeff = 0.0;
  double stderr_ = 0.0;
};

struct SpectralExpansion {
  SystemParams params;
  int n = 1;
  int J = 0;
  std::vector<SpectralEntry> entries;

  std::string to_json() const;
  static SpectralExpansion from_json(const std::string& text);
};

SpectralExpansion expansion_from_point(const VelocityState& state, int n, int J);
SpectralExpansion expansion_from_sampler(const StateSampler& sampler, const SystemParams& params, int n, int J,
                                         std::int64_t samples, std::uint64_t seed);
SpectralExpansion expansion_from_grid(const DensityGrid& f0, const SystemParams& params, int n, int J);

enum class SeriesMode { FiniteN, Limit };

/// sum_idx F_idx g_idx(v_block) exp(-lambda_j tau).
double evolve_marginal_series(const SpectralExpansion& expansion, double tau, SeriesMode mode,
                              std::span<const Vec3> v_block);

/// Time derivative of evolve_marginal_series.
double evolve_marginal_series_rate(const SpectralExpansion& expansion, double tau, SeriesMode mode,
                                   std::span<const Vec3> v_block);

/// Density of v_11 at time tau when all mass starts at `source`, from the
/// zonal part of the series truncated at degree J. Valid for every N >= 2.
double axis_density_from_point(const VelocityState& source, double tau, int J, double v11);

/// Integral of axis_density_from_point over [a, b].
double axis_probability_from_point(const VelocityState& source, double tau, int J, double a, double b);

/// Max over test points of |int g^{(n+1)}_{idx'} dv_{n+1} - delta g^{(n)}_{idx}|
/// for the limit eigenfunctions, where idx' appends `tail` to idx and delta
/// is one iff the tail is zero. Integration by 40-node Gauss-Hermite per axis.
double marginal_consistency_check(const MultiIndex& idx, const std::array<int, 3>& tail, int n,
                                  const SystemParams& params);

}  // namespace kfp
