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

#include "kfp/grid.hpp"
#include "kfp/model.hpp"

namespace kfp {

/// Mass, momentum and energy of a one-particle density.
struct MomentState {
  double m = 0.0;
  Vec3 p{0.0, 0.0, 0.0};
  double e = 0.0;
};

/// Green function of d_t f = div(T grad f + (v - u) f):
///   (2 pi T (1 - a^2))^{-3/2} exp(-|v - u - (w - u) a|^2 / (2 T (1 - a^2))),  a = exp(-t).
/// Throws std::domain_error for t <= 0 or T <= 0.
double mehler_kernel(const Vec3& w, const Vec3& v, const Vec3& u, double T, double t);

/// f(t) = int G_t(w, .) f0(w) dw on the grid of f0. Axis k of the grid is
/// paired with drift component u[k % 3], so n-particle grids propagate each
/// particle independently. Gauss-Hermite axes use the exact Gaussian
/// integral of the Hermite interpolant of f0 / (axis Gaussian); other axes
/// use the quadrature rule of the axis directly.
DensityGrid propagate(const DensityGrid& f0, double t, const Vec3& u, double T);

/// Propagation over master time tau, i.e. kinetic time 3 tau / (2 eps0).
DensityGrid propagate_master(const DensityGrid& f0, double tau, const SystemParams& params);

/// Quadrature values of m, p, e. Requires a three-axis grid.
MomentState functionals(const DensityGrid& f);

/// Closed-form moments at time t under the linear equation with drift u and
/// temperature T.
MomentState moment_flow(const MomentState& initial, const Vec3& u, double T, double t);

/// div((2em - |p|^2)/3 grad f + (m v - p) f) with (m, p, e) taken from f.
/// Centred differences on a regular three-axis grid, zero outside.
DensityGrid nonlinear_rhs(const DensityGrid& f);

/// div((2/3) eps0 grad f + (v - u) f) with the same discretisation.
DensityGrid linear_rhs(const DensityGrid& f, const Vec3& u, double eps0);

/// Maxwellian with mean u0 and temperature 2 eps0 / 3.
double maxwellian(const SystemParams& params, const Vec3& v);

/// Product Maxwellian sampled on a grid with 3n axes.
DensityGrid maxwellian_grid(const SystemParams& params, std::vector<GridAxis> axes);

/// S(f | f_M) = -int f ln(f / f_M) for a grid with 3n axes (product
/// Maxwellian reference). Values below 1e-300 are clipped before the log.
/// Throws std::domain_error if any value is below -1e-12.
double relative_entropy(const DensityGrid& f, const SystemParams& params);

enum class HierarchyMode { FiniteN, Limit };

/// Right-hand side of the n-particle marginal equation (n = dims / 3) by
/// second-order centred differences on a regular grid. Finite-N mode uses
/// N = params.n_particles. Edge nodes are left at zero.
DensityGrid hierarchy_rhs(const DensityGrid& f, HierarchyMode mode, const SystemParams& params);

/// Max over interior nodes of |dfdtau - hierarchy_rhs(f)|. Throws
/// std::invalid_argument when a spacing exceeds 0.1 sqrt(2 eps0 / 3) or the
/// grids differ.
double generator_residual(const DensityGrid& f, const DensityGrid& dfdtau, HierarchyMode mode,
                          const SystemParams& params);

}  // namespace kfp
