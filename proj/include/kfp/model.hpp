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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace kfp {

using Vec3 = std::array<double, 3>;

/// Absolute constraint tolerance in units where eps0 = O(1). Momentum
/// residuals are compared against tol * sqrt(N), energy against tol * N.
inline constexpr double kConstraintTol = 1e-10;

/// Conserved ensemble data fixing the constant-energy/momentum sphere.
/// The mass per particle is fixed to one.
struct SystemParams {
  int n_particles = 2;
  Vec3 u0{0.0, 0.0, 0.0};
  double e0 = 1.5;
  double eps0 = 1.5;

  static constexpr double m0 = 1.0;

  double radius_squared() const { return 2.0 * n_particles * eps0; }
  /// Temperature of the matching Maxwellian, T = 2 eps0 / 3.
  double temperature() const { return 2.0 * eps0 / 3.0; }
  /// Dimension of the sphere's embedding space, 3(N-1).
  int sphere_dim() const { return 3 * (n_particles - 1); }
};

/// Builds params from the drift and the energy per particle.
/// Throws std::invalid_argument for N < 2 or e0 <= |u0|^2 / 2.
SystemParams derive_params(const Vec3& u0, double e0, int n_particles);

struct VelocityState {
  std::vector<Vec3> v;
  SystemParams params;
};

/// Rotated coordinates w_1 .. w_{N-1} (w_N = sqrt(N) u0 is implied).
struct WState {
  std::vector<Vec3> w;
  SystemParams params;
};

struct ManifoldResiduals {
  Vec3 momentum{0.0, 0.0, 0.0};
  double energy = 0.0;

  double momentum_norm() const;
};

/// sum_k v_k - N u0 and sum_k |v_k|^2 / 2 - N e0.
ManifoldResiduals manifold_residuals(const VelocityState& state);

/// True when both residuals are within tol (scaled by sqrt(N) and N).
bool on_manifold(const VelocityState& state, double tol = kConstraintTol);
bool on_sphere(const WState& state, double tol = kConstraintTol);

/// Master-equation time tau and kinetic time t, tau = (2/3) eps0 t.
struct TimeScale {
  double tau = 0.0;
  double t = 0.0;

  static TimeScale from_kinetic(double t, const SystemParams& params);
  static TimeScale from_master(double tau, const SystemParams& params);
};

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace kfp
