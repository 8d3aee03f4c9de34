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

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "kfp/geometry.hpp"
#include "kfp/markov.hpp"

using namespace kfp;

TEST_CASE("projected step stays on the manifold") {
  for (int n : {2, 8, 64}) {
    const auto p = derive_params({0.3, -0.2, 0.1}, 2.0, n);
    RngStream rng(11, n);
    auto s = sample_uniform(p, rng);
    for (int i = 0; i < 2000; ++i) step_projected_em_inplace(s, 1e-3, rng);
    const auto r = manifold_residuals(s);
    CHECK(r.momentum_norm() < 1e-10);
    CHECK(std::abs(r.energy) < 1e-10);
  }
}

TEST_CASE("projected step without reprojection keeps momentum but drifts in energy") {
  const auto p = derive_params({0, 0, 0}, 1.5, 4);
  RngStream rng(3, 0);
  auto s = sample_uniform(p, rng);
  for (int i = 0; i < 500; ++i) step_projected_em_inplace(s, 1e-2, rng, false);
  const auto r = manifold_residuals(s);
  CHECK(r.momentum_norm() < 1e-10);
  CHECK(r.energy > 1e-3);
}

TEST_CASE("steps reject non-positive dtau") {
  const auto p = derive_params({0, 0, 0}, 1.5, 3);
  RngStream rng(1, 0);
  auto s = sample_uniform(p, rng);
  CHECK_THROWS_AS(step_projected_em(s, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(step_projected_em(s, -1e-3, rng), std::invalid_argument);
  const auto w = rotate_to_w(s).first;
  CHECK_THROWS_AS(step_pair_rotation(w, 0.0, rng), std::invalid_argument);
}

TEST_CASE("pair rotation preserves the sphere") {
  for (int n : {2, 5, 16}) {
    const auto p = derive_params({1, 0, -1}, 3.0, n);
    RngStream rng(7, n);
    auto w = rotate_to_w(sample_uniform(p, rng)).first;
    PairRotationStepper stepper(n);
    CHECK(stepper.pair_count() == static_cast<std::size_t>(3 * (n - 1) * (3 * (n - 1) - 1) / 2));
    for (int i = 0; i < 500; ++i) stepper.step(w, 1e-3, rng);
    CHECK(on_sphere(w));
    CHECK(on_manifold(rotate_from_w(w, p)));
  }
}

TEST_CASE("both schemes relax the mean at the spectral rate") {
  // E[v_11] of a point start decays like exp(-lambda tau), lambda = (3N-4)/(2 N eps0).
  const int n = 3;
  const auto p = derive_params({0, 0, 0}, 1.0, n);
  VelocityState start{{{1.0, 0, 0}, {-0.5, 0, 0}, {-0.5, 0, 0}}, p};
  const double r2 = 1.0 + 0.25 + 0.25;
  const double s = std::sqrt(p.radius_squared() / r2);
  for (auto& v : start.v) v[0] *= s;
  REQUIRE(on_manifold(start));
  const double lambda = (3.0 * n - 4.0) / p.radius_squared();
  for (auto scheme : {Scheme::ProjectedEM, Scheme::PairRotation}) {
    EnsembleConfig cfg;
    cfg.params = p;
    cfg.scheme = scheme;
    cfg.n_traj = 20000;
    cfg.checkpoints = {0.5};
    cfg.dtau = 5e-3;
    cfg.seed = 9;
    cfg.initial = InitialCondition::at(start);
    cfg.histogram3d = false;
    const auto res = simulate_ensemble(cfg);
    const auto& st = res.stats[0];
    const double expected = start.v[0][0] * std::exp(-lambda * 0.5);
    CHECK(std::abs(st.mean[0] - expected) < 4.0 * st.mean_stderr[0] + 0.01 * std::abs(expected));
  }
}

TEST_CASE("ensemble is independent of the thread count") {
  const auto p = derive_params({0.1, 0.2, 0.3}, 2.0, 4);
  EnsembleConfig cfg;
  cfg.params = p;
  cfg.n_traj = 3000;
  cfg.checkpoints = {0.0, 0.01, 0.02};
  cfg.seed = 42;
  cfg.bins = 16;
  cfg.trace_count = 3;
  cfg.threads = 1;
  const auto a = simulate_ensemble(cfg);
  cfg.threads = 3;
  const auto b = simulate_ensemble(cfg);
  REQUIRE(a.stats.size() == 3);
  for (std::size_t c = 0; c < 3; ++c) {
    CHECK(a.stats[c].mean == b.stats[c].mean);
    CHECK(a.stats[c].var == b.stats[c].var);
    CHECK(a.stats[c].pair_cov == b.stats[c].pair_cov);
    CHECK(a.stats[c].hist_v1.values() == b.stats[c].hist_v1.values());
    CHECK(a.stats[c].hist_pair.values() == b.stats[c].hist_pair.values());
    CHECK(a.stats[c].max_energy_residual == b.stats[c].max_energy_residual);
    CHECK(a.stats[c].max_energy_residual < 1e-10);
  }
  cfg.scheme = Scheme::PairRotation;
  cfg.checkpoints = {0.005};
  cfg.threads = 1;
  const auto r1 = simulate_ensemble(cfg);
  cfg.threads = 2;
  const auto r2 = simulate_ensemble(cfg);
  CHECK(r1.stats[0].mean == r2.stats[0].mean);
  CHECK(r1.stats[0].hist_v11.values() == r2.stats[0].hist_v11.values());
  REQUIRE(a.traces.size() == 3);
  CHECK(a.traces[2].energy_residual == b.traces[2].energy_residual);
  CHECK(a.traces[0].tau.size() == static_cast<std::size_t>(a.total_steps + 1));
}

TEST_CASE("uniform ensemble statistics") {
  const int n = 6;
  const auto p = derive_params({0.5, 0, 0}, 2.0, n);
  EnsembleConfig cfg;
  cfg.params = p;
  cfg.n_traj = 40000;
  cfg.checkpoints = {0.0};
  cfg.seed = 5;
  cfg.bins = 32;
  const auto st = simulate_ensemble(cfg).stats[0];
  const double T = p.temperature();
  const double var = T;
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(st.mean[k] - p.u0[k]) < 5.0 * st.mean_stderr[k]);
    CHECK(std::abs(st.var[k] - var) < 5.0 * st.var_stderr[k]);
    CHECK(std::abs(st.pair_cov[k][k] + var / (n - 1.0)) < 5.0 * st.pair_cov_stderr[k][k]);
  }
  CHECK(st.hist_v11.mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(st.hist_v1.mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(st.hist_pair.mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("checkpoint validation") {
  EnsembleConfig cfg;
  cfg.params = derive_params({0, 0, 0}, 1.5, 3);
  cfg.n_traj = 4;
  cfg.checkpoints = {};
  CHECK_THROWS_AS(simulate_ensemble(cfg), std::invalid_argument);
  cfg.checkpoints = {0.2, 0.1};
  CHECK_THROWS_AS(simulate_ensemble(cfg), std::invalid_argument);
  cfg.checkpoints = {0.01, 0.02};
  cfg.dtau = 0.05;
  CHECK_THROWS_AS(simulate_ensemble(cfg), std::invalid_argument);
  cfg.dtau = 0.003;
  const auto r = simulate_ensemble(cfg);
  CHECK(r.total_steps == 8);
}

TEST_CASE("empirical marginal") {
  const auto p = derive_params({0, 0, 0}, 1.5, 5);
  RngStream rng(2, 0);
  std::vector<VelocityState> states;
  for (int i = 0; i < 5000; ++i) states.push_back(sample_uniform(p, rng));
  const auto g1 = empirical_marginal(states, 1, 10);
  CHECK(g1.dims() == 3);
  CHECK(g1.mass() == doctest::Approx(1.0).epsilon(1e-12));
  const auto g2 = empirical_marginal(states, 2, 10);
  CHECK(g2.dims() == 2);
  CHECK(g2.mass() == doctest::Approx(1.0).epsilon(1e-12));
  for (double x : g2.values()) CHECK(x >= 0.0);
  CHECK_THROWS_AS(empirical_marginal(states, 3, 10), std::invalid_argument);
}
