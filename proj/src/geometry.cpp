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

#include "kfp/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace kfp {

std::pair<WState, Vec3> rotate_to_w(const VelocityState& state) {
  const int n = static_cast<int>(state.v.size());
  if (n < 2) throw std::invalid_argument("rotate_to_w: need at least two particles");
  WState out{std::vector<Vec3>(n - 1), state.params};
  Vec3 suffix{0.0, 0.0, 0.0};  // sum_{i > k} v_i
  for (int k = n - 1; k >= 1; --k) {
    for (int c = 0; c < 3; ++c) suffix[c] += state.v[k][c];
    const int i = k;  // 1-based index of w_i is k, i.e. v[k-1]
    const double rest = n - i;
    const double scale = std::sqrt(rest / (rest + 1.0));
    for (int c = 0; c < 3; ++c) out.w[i - 1][c] = scale * (state.v[i - 1][c] - suffix[c] / rest);
  }
  Vec3 total = suffix;
  for (int c = 0; c < 3; ++c) total[c] += state.v[0][c];
  Vec3 w_last;
  for (int c = 0; c < 3; ++c) w_last[c] = total[c] / std::sqrt(static_cast<double>(n));
  return {std::move(out), w_last};
}

VelocityState rotate_from_w(const WState& w, const SystemParams& params) {
  const int n = params.n_particles;
  if (static_cast<int>(w.w.size()) != n - 1) {
    throw std::invalid_argument("rotate_from_w: w has the wrong number of blocks");
  }
  VelocityState out{std::vector<Vec3>(n), params};
  // S_i = sum_{l >= i} v_l; S_1 = N u0.
  Vec3 suffix;
  for (int c = 0; c < 3; ++c) suffix[c] = n * params.u0[c];
  for (int i = 1; i < n; ++i) {
    const double rest = n - i;
    const double coupling = std::sqrt(rest * (rest + 1.0));
    for (int c = 0; c < 3; ++c) {
      const double v = (suffix[c] + coupling * w.w[i - 1][c]) / (rest + 1.0);
      out.v[i - 1][c] = v;
      suffix[c] -= v;
    }
  }
  out.v[n - 1] = suffix;
  return out;
}

std::vector<Vec3> leading_w(std::span<const Vec3> v_block, const SystemParams& params) {
  const int n_total = params.n_particles;
  const int n = static_cast<int>(v_block.size());
  if (n >= n_total) throw std::invalid_argument("leading_w: block must be smaller than N");
  std::vector<Vec3> out(n);
  Vec3 prefix{0.0, 0.0, 0.0};
  for (int i = 1; i <= n; ++i) {
    const auto& v = v_block[i - 1];
    for (int c = 0; c < 3; ++c) prefix[c] += v[c];
    const double rest = n_total - i;
    const double scale = std::sqrt(rest / (rest + 1.0));
    for (int c = 0; c < 3; ++c) {
      const double tail = n_total * params.u0[c] - prefix[c];
      out[i - 1][c] = scale * (v[c] - tail / rest);
    }
  }
  return out;
}

std::vector<Vec3> project_tangent(const VelocityState& state, std::span<const Vec3> g) {
  const int n = static_cast<int>(state.v.size());
  if (static_cast<int>(g.size()) != n) throw std::invalid_argument("project_tangent: size mismatch");
  const auto& u0 = state.params.u0;
  Vec3 mean{0.0, 0.0, 0.0};
  double radial = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      mean[c] += g[i][c];
      radial += (state.v[i][c] - u0[c]) * g[i][c];
    }
  }
  for (int c = 0; c < 3; ++c) mean[c] /= n;
  radial /= state.params.radius_squared();
  std::vector<Vec3> out(n);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      out[i][c] = g[i][c] - mean[c] - radial * (state.v[i][c] - u0[c]);
    }
  }
  return out;
}

VelocityState sample_uniform(const SystemParams& params, RngStream& rng) {
  WState w{std::vector<Vec3>(params.n_particles - 1), params};
  double norm2 = 0.0;
  for (auto& block : w.w) {
    for (auto& x : block) {
      x = rng.normal();
      norm2 += x * x;
    }
  }
  const double scale = std::sqrt(params.radius_squared() / norm2);
  for (auto& block : w.w) {
    for (auto& x : block) x *= scale;
  }
  return rotate_from_w(w, params);
}

VelocityState pole_state(const SystemParams& params) {
  const int N = params.n_particles;
  const double a = std::sqrt(2.0 * params.eps0 * (N - 1));
  VelocityState s{std::vector<Vec3>(N, params.u0), params};
  s.v[0][0] += a;
  for (int i = 1; i < N; ++i) s.v[i][0] -= a / (N - 1);
  return s;
}

std::vector<double> rotation_row(int n, int n_particles) {
  const int big_n = n_particles;
  if (n < 1 || n > big_n) throw std::invalid_argument("rotation_row: row out of range");
  std::vector<double> row(big_n, 0.0);
  if (n == big_n) {
    for (auto& x : row) x = 1.0 / std::sqrt(static_cast<double>(big_n));
    return row;
  }
  const double rest = big_n - n;
  const double scale = std::sqrt(rest / (rest + 1.0));
  row[n - 1] = scale;
  for (int i = n; i < big_n; ++i) row[i] = -scale / rest;
  return row;
}

}  // namespace kfp
