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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kfp/grid.hpp"
#include "kfp/model.hpp"
#include "kfp/rng.hpp"

namespace kfp {

/// One projected Euler-Maruyama step v <- v + sqrt(2 dtau) P xi, followed by
/// recentring the momentum and rescaling |v - u0| to the sphere radius.
/// `reproject = false` skips the second part (used to measure drift).
/// Throws std::invalid_argument for dtau <= 0.
VelocityState step_projected_em(const VelocityState& state, double dtau, RngStream& rng, bool reproject = true);
void step_projected_em_inplace(VelocityState& state, double dtau, RngStream& rng, bool reproject = true);

/// Reusable pair list for the rotation sweep.
class PairRotationStepper {
 public:
  explicit PairRotationStepper(int n_particles);

  /// One sweep over all coordinate pairs of the 3(N-1) rotated coordinates
  /// in an order shuffled from the canonical one; each pair is rotated by an angle drawn from
  /// N(0, 2 dtau / (2 N eps0)). The radius is reset to sqrt(2 N eps0) after
  /// the sweep to remove round-off.
  void step(WState& state, double dtau, RngStream& rng);

  std::size_t pair_count() const { return canonical_.size(); }

 private:
  int dim_;
  std::vector<std::uint32_t> canonical_;
  std::vector<std::uint32_t> pairs_;
};

WState step_pair_rotation(const WState& state, double dtau, RngStream& rng);

enum class Scheme { ProjectedEM, PairRotation };

struct InitialCondition {
  enum class Kind { Uniform, Point } kind = Kind::Uniform;
  VelocityState point;  // used when kind == Point

  static InitialCondition uniform() { return {}; }
  static InitialCondition at(VelocityState s) { return {Kind::Point, std::move(s)}; }
};

struct EnsembleConfig {
  SystemParams params;
  Scheme scheme = Scheme::ProjectedEM;
  std::int64_t n_traj = 1000;
  std::vector<double> checkpoints;
  double dtau = 0.0;  // 0 selects the default step
  std::uint64_t seed = 1;
  InitialCondition initial;
  int bins = 64;            // 1-D and 3-D histograms
  int pair_bins = 12;       // 2-D histogram of (v_11, v_21)
  bool histogram3d = true;  // 3-D histogram of v_1
  int threads = 0;          // 0 = hardware concurrency
  int trace_count = 0;      // per-trajectory residual traces to keep
  bool reproject = true;    // projected EM only
  bool residuals_every_step = true;  // false: residuals at checkpoints only
};

/// 1e-3 (2 N eps0) / (3N - 4).
double default_dtau(const SystemParams& params);

/// Histogram range u0_k -/+ 5 sqrt(2 eps0 / 3) on axis k.
std::pair<double, double> histogram_range(const SystemParams& params, int k);

struct EnsembleStats {
  double tau = 0.0;
  std::int64_t sample_count = 0;
  Vec3 mean{};  // particle 1
  Vec3 mean_stderr{};
  Vec3 var{};
  Vec3 var_stderr{};
  std::array<std::array<double, 3>, 3> pair_cov{};  // Cov(v_1k, v_2l)
  std::array<std::array<double, 3>, 3> pair_cov_stderr{};
  DensityGrid hist_v1;     // density of v_1 (3-D, optional)
  DensityGrid hist_v11;    // density of v_11
  DensityGrid hist_v21;    // density of v_21
  DensityGrid hist_pair;   // density of (v_11, v_21)
  std::int64_t outside_v1 = 0;
  std::int64_t outside_pair = 0;
  double max_momentum_residual = 0.0;  // over all trajectories and steps so far
  double max_energy_residual = 0.0;
};

struct TrajectoryTrace {
  std::int64_t index = 0;
  std::vector<double> tau;
  std::vector<double> momentum_residual;
  std::vector<double> energy_residual;
};

struct EnsembleResult {
  std::vector<EnsembleStats> stats;  // one per checkpoint
  std::vector<TrajectoryTrace> traces;
  double dtau = 0.0;
  std::int64_t total_steps = 0;  // per trajectory
};

/// Runs n_traj independent trajectories in fixed blocks; results are merged
/// in block order so they do not depend on the thread count.
EnsembleResult simulate_ensemble(const EnsembleConfig& config);

/// Normalised histogram density of a set of states: n = 1 gives the 3-D
/// density of v_1, n = 2 the 2-D density of (v_11, v_21). Samples outside
/// the grid range are dropped before normalising. Throws for n > 2.
DensityGrid empirical_marginal(std::span<const VelocityState> states, int n, int bins);

}  // namespace kfp
