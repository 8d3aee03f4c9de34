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

#include <span>
#include <utility>
#include <vector>

#include "kfp/model.hpp"
#include "kfp/rng.hpp"

namespace kfp {

/// Orthogonal change of variables to centre-of-mass coordinates:
///
///   w_n = sqrt((N-n)/(N-n+1)) [v_n - (1/(N-n)) sum_{i>n} v_i],  n < N
///   w_N = (1/sqrt(N)) sum_i v_i
///
/// Evaluated with suffix sums in O(N). Returns (w_1..w_{N-1}, w_N).
std::pair<WState, Vec3> rotate_to_w(const VelocityState& state);

/// Inverse transform with w_N := sqrt(N) u0.
VelocityState rotate_from_w(const WState& w, const SystemParams& params);

/// Rotated coordinates of the first n particles of any state on the manifold.
/// Momentum conservation fixes sum_{l>i} v_l = N u0 - sum_{l<=i} v_l, so
/// w_1..w_n depend on v_1..v_n alone.
std::vector<Vec3> leading_w(std::span<const Vec3> v_block, const SystemParams& params);

/// Orthogonal projection of g (a 3N-vector stored as N 3-vectors) onto the
/// tangent space of the manifold at `state`.
std::vector<Vec3> project_tangent(const VelocityState& state, std::span<const Vec3> g);

/// Uniform sample on the manifold: Gaussian direction in w-space scaled to
/// the sphere radius, rotated back.
VelocityState sample_uniform(const SystemParams& params, RngStream& rng);

/// Particle 1 as far from u0 along the first axis as the sphere allows,
/// the other N-1 particles sharing the recoil equally.
VelocityState pole_state(const SystemParams& params);

/// Row n (1-based, n <= N) of the N x N matrix the transform applies to
/// each Cartesian component.
std::vector<double> rotation_row(int n, int n_particles);

}  // namespace kfp
