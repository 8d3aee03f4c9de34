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

#include "kfp/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kfp {

SystemParams derive_params(const Vec3& u0, double e0, int n_particles) {
  if (n_particles < 2) {
    throw std::invalid_argument("derive_params: need at least two particles, got " +
                                std::to_string(n_particles));
  }
  const double eps0 = e0 - 0.5 * dot(u0, u0);
  if (!(eps0 > 0.0)) {
    throw std::invalid_argument("derive_params: e0 must exceed |u0|^2/2 (degenerate manifold)");
  }
  SystemParams p;
  p.n_particles = n_particles;
  p.u0 = u0;
  p.e0 = e0;
  p.eps0 = eps0;
  return p;
}

double ManifoldResiduals::momentum_norm() const { return std::sqrt(dot(momentum, momentum)); }

ManifoldResiduals manifold_residuals(const VelocityState& state) {
  const auto& p = state.params;
  ManifoldResiduals r;
  double kinetic = 0.0;
  for (const auto& v : state.v) {
    for (int k = 0; k < 3; ++k) r.momentum[k] += v[k];
    kinetic += 0.5 * dot(v, v);
  }
  const double n = static_cast<double>(state.v.size());
  for (int k = 0; k < 3; ++k) r.momentum[k] -= n * p.u0[k];
  r.energy = kinetic - n * p.e0;
  return r;
}

bool on_manifold(const VelocityState& state, double tol) {
  if (static_cast<int>(state.v.size()) != state.params.n_particles) return false;
  const auto r = manifold_residuals(state);
  const double n = state.params.n_particles;
  return r.momentum_norm() <= tol * std::sqrt(n) && std::abs(r.energy) <= tol * n;
}

bool on_sphere(const WState& state, double tol) {
  if (static_cast<int>(state.w.size()) != state.params.n_particles - 1) return false;
  double sum = 0.0;
  for (const auto& w : state.w) sum += dot(w, w);
  return std::abs(sum - state.params.radius_squared()) <= tol * state.params.n_particles;
}

TimeScale TimeScale::from_kinetic(double t, const SystemParams& params) {
  return {2.0 * params.eps0 * t / 3.0, t};
}

TimeScale TimeScale::from_master(double tau, const SystemParams& params) {
  return {tau, 3.0 * tau / (2.0 * params.eps0)};
}

}  // namespace kfp
