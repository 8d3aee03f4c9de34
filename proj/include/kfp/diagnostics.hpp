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
#include <span>
#include <string>
#include <vector>

#include "kfp/io.hpp"
#include "kfp/markov.hpp"

namespace kfp {

/// One named check, serialised as {metric, value, stderr, tolerance, pass}.
struct Report {
  std::string metric;
  double value = 0.0;
  double stderr_ = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  Json to_json() const;
};

struct ConservationReport {
  std::vector<double> momentum_drift;  // per trajectory
  std::vector<double> energy_drift;
  double max_momentum_drift = 0.0;
  double max_energy_drift = 0.0;
};

/// Largest |r(tau) - r(0)| of each residual trace. Throws
/// std::invalid_argument when a trace has fewer than two points.
ConservationReport conservation_report(std::span<const TrajectoryTrace> traces);

struct ChaosMetric {
  std::array<std::array<double, 3>, 3> pair_cov{};
  double l1_product_defect = 0.0;
};

/// Pair covariance of particles 1 and 2 and the L1 distance between the
/// (v_11, v_21) density and the product of its own marginals.
ChaosMetric chaos_metric(const EnsembleStats& stats);

/// Sum over the bins of a 1-D histogram of v_11 of |observed - predicted|
/// bin probability, with the prediction taken from the degree-J series for
/// a start at `source`.
double axis_oracle_l1(const DensityGrid& hist_v11, const VelocityState& source, double tau, int J);

struct FitResult {
  double value = 0.0;
  double stderr_ = 0.0;
  int points = 0;
};

/// Exponential rate of |value - limit| by least squares on its logarithm.
/// With `stderr` given, only the leading run of points whose residual
/// exceeds 10 stderr is used. Requires >= 10 points spanning at least
/// 2 / expected_rate; throws std::domain_error when the residual changes
/// sign inside the fitted window or fewer than 3 points remain.
FitResult gap_estimate(std::span<const double> tau, std::span<const double> value, double limit,
                       double expected_rate, std::span<const double> stderr = {});

/// Slope of log(error) against log(scale). Requires >= 3 positive errors;
/// throws std::domain_error when the errors are not monotone, up to a
/// relative allowance.
FitResult convergence_order(std::span<const double> scale, std::span<const double> error,
                            double allowance = 0.0);

}  // namespace kfp
