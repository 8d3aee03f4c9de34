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

#include "kfp/markov.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "kfp/geometry.hpp"

namespace kfp {

namespace {

constexpr std::int64_t kBlockSize = 1024;

void require_positive_step(double dtau) {
  if (!(dtau > 0.0)) throw std::invalid_argument("step: dtau must be positive");
}

void reproject_state(VelocityState& s) {
  const int N = s.params.n_particles;
  Vec3 mean{0.0, 0.0, 0.0};
  for (const auto& v : s.v)
    for (int k = 0; k < 3; ++k) mean[k] += v[k];
  for (int k = 0; k < 3; ++k) mean[k] = mean[k] / N - s.params.u0[k];
  double r2 = 0.0;
  for (auto& v : s.v)
    for (int k = 0; k < 3; ++k) {
      v[k] -= mean[k];
      const double y = v[k] - s.params.u0[k];
      r2 += y * y;
    }
  const double scale = std::sqrt(s.params.radius_squared() / r2);
  for (auto& v : s.v)
    for (int k = 0; k < 3; ++k) v[k] = s.params.u0[k] + (v[k] - s.params.u0[k]) * scale;
}

}  // namespace

void step_projected_em_inplace(VelocityState& state, double dtau, RngStream& rng, bool reproject) {
  require_positive_step(dtau);
  const int N = state.params.n_particles;
  const auto& u = state.params.u0;
  // xi, then P xi = xi - mean_sigma(xi) - (y . xi) y / |y|^2 with y = v - u.
  thread_local std::vector<Vec3> xi;
  xi.resize(N);
  Vec3 mean{0.0, 0.0, 0.0};
  for (auto& x : xi)
    for (int k = 0; k < 3; ++k) {
      x[k] = rng.normal();
      mean[k] += x[k];
    }
  for (int k = 0; k < 3; ++k) mean[k] /= N;
  double y_xi = 0.0;
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < 3; ++k) y_xi += (state.v[i][k] - u[k]) * xi[i][k];
  const double radial = y_xi / state.params.radius_squared();
  const double amp = std::sqrt(2.0 * dtau);
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < 3; ++k)
      state.v[i][k] += amp * (xi[i][k] - mean[k] - radial * (state.v[i][k] - u[k]));
  if (reproject) reproject_state(state);
}

VelocityState step_projected_em(const VelocityState& state, double dtau, RngStream& rng, bool reproject) {
  VelocityState out = state;
  step_projected_em_inplace(out, dtau, rng, reproject);
  return out;
}

PairRotationStepper::PairRotationStepper(int n_particles) : dim_(3 * (n_particles - 1)) {
  if (n_particles < 2) throw std::invalid_argument("PairRotationStepper: need N >= 2");
  canonical_.reserve(static_cast<std::size_t>(dim_) * (dim_ - 1) / 2);
  for (int k = 0; k < dim_; ++k)
    for (int l = k + 1; l < dim_; ++l) canonical_.push_back(static_cast<std::uint32_t>(k) << 16 | static_cast<std::uint32_t>(l));
}

void PairRotationStepper::step(WState& state, double dtau, RngStream& rng) {
  require_positive_step(dtau);
  if (static_cast<int>(state.w.size()) * 3 != dim_) throw std::invalid_argument("PairRotationStepper: size mismatch");
  pairs_ = canonical_;
  const std::size_t P = pairs_.size();
  for (std::size_t i = P; i > 1; --i) std::swap(pairs_[i - 1], pairs_[rng.below(i)]);
  double* w = state.w.front().data();
  const double sigma = std::sqrt(2.0 * dtau / state.params.radius_squared());
  for (std::uint32_t pair : pairs_) {
    const std::uint32_t k = pair >> 16, l = pair & 0xffffu;
    const double theta = sigma * rng.normal();
    const double c = std::cos(theta), s = std::sin(theta);
    const double a = w[k], b = w[l];
    w[k] = c * a - s * b;
    w[l] = s * a + c * b;
  }
  double r2 = 0.0;
  for (int a = 0; a < dim_; ++a) r2 += w[a] * w[a];
  const double scale = std::sqrt(state.params.radius_squared() / r2);
  for (int a = 0; a < dim_; ++a) w[a] *= scale;
}

WState step_pair_rotation(const WState& state, double dtau, RngStream& rng) {
  PairRotationStepper stepper(state.params.n_particles);
  WState out = state;
  stepper.step(out, dtau, rng);
  return out;
}

double default_dtau(const SystemParams& params) {
  const int N = params.n_particles;
  return 1e-3 * params.radius_squared() / std::max(1, 3 * N - 4);
}

std::pair<double, double> histogram_range(const SystemParams& params, int k) {
  const double half = 5.0 * std::sqrt(2.0 * params.eps0 / 3.0);
  return {params.u0[k] - half, params.u0[k] + half};
}

namespace {

// Float accumulators for one block and one checkpoint, all centred at u0.
struct MomentSums {
  std::int64_t n = 0;
  std::array<double, 3> s1{}, s2{}, s4{};
  std::array<double, 9> c{}, c2{};
  std::array<double, 3> s1b{};

  void add(const VelocityState& s) {
    const auto& u = s.params.u0;
    ++n;
    for (int k = 0; k < 3; ++k) {
      const double a = s.v[0][k] - u[k];
      s1[k] += a;
      s2[k] += a * a;
      s4[k] += a * a * a * a;
      s1b[k] += s.v[1][k] - u[k];
      for (int l = 0; l < 3; ++l) {
        const double z = a * (s.v[1][l] - u[l]);
        c[3 * k + l] += z;
        c2[3 * k + l] += z * z;
      }
    }
  }

  void merge(const MomentSums& o) {
    n += o.n;
    for (int k = 0; k < 3; ++k) {
      s1[k] += o.s1[k];
      s2[k] += o.s2[k];
      s4[k] += o.s4[k];
      s1b[k] += o.s1b[k];
    }
    for (int k = 0; k < 9; ++k) {
      c[k] += o.c[k];
      c2[k] += o.c2[k];
    }
  }
};

struct HistogramLayout {
  std::array<double, 3> lo{}, width{};
  int bins = 64;
  int pair_bins = 12;
  std::array<double, 2> pair_lo{}, pair_width{};

  HistogramLayout(const SystemParams& p, int b, int pb) : bins(b), pair_bins(pb) {
    for (int k = 0; k < 3; ++k) {
      const auto [a, z] = histogram_range(p, k);
      lo[k] = a;
      width[k] = (z - a) / bins;
    }
    const auto [a, z] = histogram_range(p, 0);
    pair_lo = {a, a};
    pair_width = {(z - a) / pb, (z - a) / pb};
  }

  static int bin_of(double x, double lo, double width, int bins) {
    const double r = (x - lo) / width;
    if (!(r >= 0.0) || r >= bins) return -1;
    return std::min(static_cast<int>(r), bins - 1);
  }
};

// Integer counts; addition is exact so the merge order does not matter.
struct Counts {
  std::vector<std::uint32_t> v1;  // bins^3 (optional)
  std::vector<std::int64_t> v11, v21, pair;
  std::int64_t outside_v1 = 0, outside_pair = 0, total = 0;

  Counts(const HistogramLayout& L, bool three_d)
      : v1(three_d ? static_cast<std::size_t>(L.bins) * L.bins * L.bins : 0),
        v11(L.bins), v21(L.bins), pair(static_cast<std::size_t>(L.pair_bins) * L.pair_bins) {}

  void add(const HistogramLayout& L, const VelocityState& s) {
    ++total;
    int b[3];
    for (int k = 0; k < 3; ++k) b[k] = HistogramLayout::bin_of(s.v[0][k], L.lo[k], L.width[k], L.bins);
    if (b[0] >= 0) ++v11[b[0]];
    const int b21 = HistogramLayout::bin_of(s.v[1][0], L.lo[0], L.width[0], L.bins);
    if (b21 >= 0) ++v21[b21];
    if (!v1.empty()) {
      if (b[0] >= 0 && b[1] >= 0 && b[2] >= 0) {
        ++v1[(static_cast<std::size_t>(b[0]) * L.bins + b[1]) * L.bins + b[2]];
      } else {
        ++outside_v1;
      }
    } else if (b[0] < 0 || b[1] < 0 || b[2] < 0) {
      ++outside_v1;
    }
    const int p0 = HistogramLayout::bin_of(s.v[0][0], L.pair_lo[0], L.pair_width[0], L.pair_bins);
    const int p1 = HistogramLayout::bin_of(s.v[1][0], L.pair_lo[1], L.pair_width[1], L.pair_bins);
    if (p0 >= 0 && p1 >= 0) {
      ++pair[static_cast<std::size_t>(p0) * L.pair_bins + p1];
    } else {
      ++outside_pair;
    }
  }

  void merge(const Counts& o) {
    for (std::size_t i = 0; i < v1.size(); ++i) v1[i] += o.v1[i];
    for (std::size_t i = 0; i < v11.size(); ++i) {
      v11[i] += o.v11[i];
      v21[i] += o.v21[i];
    }
    for (std::size_t i = 0; i < pair.size(); ++i) pair[i] += o.pair[i];
    outside_v1 += o.outside_v1;
    outside_pair += o.outside_pair;
    total += o.total;
  }
};

template <class C>
DensityGrid density_from_counts(std::vector<GridAxis> axes, const C& counts, int order) {
  DensityGrid g(std::move(axes), order);
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total > 0.0) {
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = static_cast<double>(counts[i]) / (total * g.weight(i));
  }
  return g;
}

struct Residuals {
  double momentum = 0.0, energy = 0.0;
  void observe(const VelocityState& s) {
    const auto r = manifold_residuals(s);
    momentum = std::max(momentum, r.momentum_norm());
    energy = std::max(energy, std::abs(r.energy));
  }
};

std::vector<std::int64_t> steps_per_gap(const std::vector<double>& checkpoints, double dtau) {
  std::vector<std::int64_t> steps;
  double prev = 0.0;
  for (double t : checkpoints) {
    const double gap = t - prev;
    steps.push_back(gap <= 0.0 ? 0 : static_cast<std::int64_t>(std::ceil(gap / dtau - 1e-9)));
    prev = t;
  }
  return steps;
}

}  // namespace

EnsembleResult simulate_ensemble(const EnsembleConfig& cfg) {
  const auto& params = cfg.params;
  if (cfg.n_traj < 1) throw std::invalid_argument("simulate_ensemble: n_traj must be positive");
  if (cfg.checkpoints.empty()) throw std::invalid_argument("simulate_ensemble: empty checkpoint list");
  if (cfg.bins < 1 || cfg.pair_bins < 1) throw std::invalid_argument("simulate_ensemble: bins must be positive");
  double prev = 0.0, min_gap = INFINITY;
  for (std::size_t c = 0; c < cfg.checkpoints.size(); ++c) {
    const double t = cfg.checkpoints[c];
    if (t < 0.0 || (c > 0 && !(t > prev))) throw std::invalid_argument("simulate_ensemble: checkpoints must increase");
    if (t > prev) min_gap = std::min(min_gap, t - prev);
    prev = t;
  }
  const double dtau = cfg.dtau > 0.0 ? cfg.dtau : default_dtau(params);
  if (cfg.dtau < 0.0) throw std::invalid_argument("simulate_ensemble: dtau must be positive");
  if (std::isfinite(min_gap) && dtau > min_gap * (1.0 + 1e-12))
    throw std::invalid_argument("simulate_ensemble: dtau exceeds the smallest checkpoint gap");
  if (cfg.initial.kind == InitialCondition::Kind::Point) {
    if (cfg.initial.point.params.n_particles != params.n_particles ||
        static_cast<int>(cfg.initial.point.v.size()) != params.n_particles)
      throw std::invalid_argument("simulate_ensemble: initial point has the wrong size");
    if (!on_manifold(cfg.initial.point)) throw std::invalid_argument("simulate_ensemble: initial point off the manifold");
  }

  const auto steps = steps_per_gap(cfg.checkpoints, dtau);
  const std::size_t n_ck = cfg.checkpoints.size();
  const HistogramLayout layout(params, cfg.bins, cfg.pair_bins);
  const std::int64_t n_blocks = (cfg.n_traj + kBlockSize - 1) / kBlockSize;

  std::vector<std::vector<MomentSums>> block_sums(n_blocks, std::vector<MomentSums>(n_ck));
  int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(n_blocks)));

  struct WorkerState {
    std::vector<Counts> counts;
    std::vector<Residuals> residuals;  // per checkpoint, cumulative within a trajectory
    std::vector<TrajectoryTrace> traces;
  };
  std::vector<WorkerState> workers(threads);
  for (auto& w : workers) {
    w.counts.assign(n_ck, Counts(layout, cfg.histogram3d));
    w.residuals.assign(n_ck, Residuals{});
  }
  std::atomic<std::int64_t> next_block{0};

  auto run_worker = [&](WorkerState& ws) {
    PairRotationStepper stepper(params.n_particles);
    VelocityState state;
    WState wstate;
    for (;;) {
      const std::int64_t block = next_block.fetch_add(1);
      if (block >= n_blocks) break;
      const std::int64_t first = block * kBlockSize;
      const std::int64_t last = std::min(cfg.n_traj, first + kBlockSize);
      for (std::int64_t traj = first; traj < last; ++traj) {
        RngStream rng(cfg.seed, static_cast<std::uint64_t>(traj));
        state = cfg.initial.kind == InitialCondition::Kind::Point ? cfg.initial.point : sample_uniform(params, rng);
        if (cfg.scheme == Scheme::PairRotation) wstate = rotate_to_w(state).first;
        const bool traced = traj < cfg.trace_count;
        TrajectoryTrace trace;
        trace.index = traj;
        Residuals running;
        running.observe(state);
        double tau = 0.0;
        if (traced) {
          const auto r = manifold_residuals(state);
          trace.tau.push_back(0.0);
          trace.momentum_residual.push_back(r.momentum_norm());
          trace.energy_residual.push_back(std::abs(r.energy));
        }
        for (std::size_t c = 0; c < n_ck; ++c) {
          const double gap = cfg.checkpoints[c] - tau;
          const std::int64_t n_steps = steps[c];
          const double h = n_steps > 0 ? gap / static_cast<double>(n_steps) : 0.0;
          for (std::int64_t s = 0; s < n_steps; ++s) {
            if (cfg.scheme == Scheme::ProjectedEM) {
              step_projected_em_inplace(state, h, rng, cfg.reproject);
            } else {
              stepper.step(wstate, h, rng);
              state = rotate_from_w(wstate, params);
            }
            if (cfg.residuals_every_step) running.observe(state);
            if (traced) {
              const auto r = manifold_residuals(state);
              trace.tau.push_back(tau + h * static_cast<double>(s + 1));
              trace.momentum_residual.push_back(r.momentum_norm());
              trace.energy_residual.push_back(std::abs(r.energy));
            }
          }
          tau = cfg.checkpoints[c];
          if (!cfg.residuals_every_step) running.observe(state);
          block_sums[block][c].add(state);
          ws.counts[c].add(layout, state);
          ws.residuals[c].momentum = std::max(ws.residuals[c].momentum, running.momentum);
          ws.residuals[c].energy = std::max(ws.residuals[c].energy, running.energy);
        }
        if (traced) ws.traces.push_back(std::move(trace));
      }
    }
  };

  if (threads == 1) {
    run_worker(workers[0]);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(run_worker, std::ref(workers[t]));
    for (auto& t : pool) t.join();
  }

  EnsembleResult result;
  result.dtau = dtau;
  for (auto s : steps) result.total_steps += s;
  for (std::size_t c = 0; c < n_ck; ++c) {
    MomentSums sums;
    for (std::int64_t b = 0; b < n_blocks; ++b) sums.merge(block_sums[b][c]);
    Counts counts(layout, cfg.histogram3d);
    Residuals res;
    for (const auto& w : workers) {
      counts.merge(w.counts[c]);
      res.momentum = std::max(res.momentum, w.residuals[c].momentum);
      res.energy = std::max(res.energy, w.residuals[c].energy);
    }

    EnsembleStats st;
    st.tau = cfg.checkpoints[c];
    st.sample_count = sums.n;
    const double n = static_cast<double>(sums.n);
    Vec3 m1{}, m2{};
    for (int k = 0; k < 3; ++k) {
      m1[k] = sums.s1[k] / n;
      m2[k] = sums.s1b[k] / n;
      st.mean[k] = params.u0[k] + m1[k];
      st.var[k] = sums.s2[k] / n - m1[k] * m1[k];
      st.mean_stderr[k] = n > 1 ? std::sqrt(std::max(0.0, st.var[k]) / (n - 1)) : 0.0;
      const double ez2 = sums.s2[k] / n;
      st.var_stderr[k] = n > 1 ? std::sqrt(std::max(0.0, sums.s4[k] / n - ez2 * ez2) / (n - 1)) : 0.0;
    }
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        const double ez = sums.c[3 * k + l] / n;
        st.pair_cov[k][l] = ez - m1[k] * m2[l];
        st.pair_cov_stderr[k][l] = n > 1 ? std::sqrt(std::max(0.0, sums.c2[3 * k + l] / n - ez * ez) / (n - 1)) : 0.0;
      }
    const GridAxis ax0 = bin_axis(layout.lo[0], layout.lo[0] + layout.bins * layout.width[0], layout.bins);
    if (cfg.histogram3d) {
      std::vector<GridAxis> axes;
      for (int k = 0; k < 3; ++k) axes.push_back(bin_axis(layout.lo[k], layout.lo[k] + layout.bins * layout.width[k], layout.bins));
      st.hist_v1 = density_from_counts(std::move(axes), counts.v1, 1);
    }
    st.hist_v11 = density_from_counts({ax0}, counts.v11, 0);
    st.hist_v21 = density_from_counts({ax0}, counts.v21, 0);
    const GridAxis pax = bin_axis(layout.pair_lo[0], layout.pair_lo[0] + layout.pair_bins * layout.pair_width[0],
                                  layout.pair_bins);
    st.hist_pair = density_from_counts({pax, pax}, counts.pair, 0);
    st.outside_v1 = counts.outside_v1;
    st.outside_pair = counts.outside_pair;
    st.max_momentum_residual = res.momentum;
    st.max_energy_residual = res.energy;
    result.stats.push_back(std::move(st));
  }
  for (auto& w : workers)
    for (auto& t : w.traces) result.traces.push_back(std::move(t));
  std::sort(result.traces.begin(), result.traces.end(),
            [](const TrajectoryTrace& a, const TrajectoryTrace& b) { return a.index < b.index; });
  return result;
}

DensityGrid empirical_marginal(std::span<const VelocityState> states, int n, int bins) {
  if (n < 1 || n > 2) throw std::invalid_argument("empirical_marginal: supported orders are 1 and 2");
  if (states.empty()) throw std::invalid_argument("empirical_marginal: no states");
  if (bins < 1) throw std::invalid_argument("empirical_marginal: bins must be positive");
  const auto& params = states.front().params;
  HistogramLayout layout(params, bins, bins);
  if (n == 1) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(bins) * bins * bins, 0);
    for (const auto& s : states) {
      int b[3];
      for (int k = 0; k < 3; ++k) b[k] = HistogramLayout::bin_of(s.v[0][k], layout.lo[k], layout.width[k], bins);
      if (b[0] >= 0 && b[1] >= 0 && b[2] >= 0) ++counts[(static_cast<std::size_t>(b[0]) * bins + b[1]) * bins + b[2]];
    }
    std::vector<GridAxis> axes;
    for (int k = 0; k < 3; ++k) axes.push_back(bin_axis(layout.lo[k], layout.lo[k] + bins * layout.width[k], bins));
    return density_from_counts(std::move(axes), counts, 1);
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(bins) * bins, 0);
  for (const auto& s : states) {
    if (s.v.size() < 2) throw std::invalid_argument("empirical_marginal: need two particles");
    const int a = HistogramLayout::bin_of(s.v[0][0], layout.lo[0], layout.width[0], bins);
    const int b = HistogramLayout::bin_of(s.v[1][0], layout.lo[0], layout.width[0], bins);
    if (a >= 0 && b >= 0) ++counts[static_cast<std::size_t>(a) * bins + b];
  }
  const GridAxis ax = bin_axis(layout.lo[0], layout.lo[0] + bins * layout.width[0], bins);
  return density_from_counts({ax, ax}, counts, 2);
}

}  // namespace kfp
