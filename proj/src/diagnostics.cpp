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

#include "kfp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kfp/spectral.hpp"

namespace kfp {

Json Report::to_json() const {
  Json j;
  j["metric"] = metric;
  j["value"] = value;
  j["stderr"] = stderr_;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  return j;
}

ConservationReport conservation_report(std::span<const TrajectoryTrace> traces) {
  ConservationReport r;
  for (const auto& t : traces) {
    if (t.momentum_residual.size() < 2 || t.energy_residual.size() != t.momentum_residual.size())
      throw std::invalid_argument("conservation_report: need at least two checkpoints per trace");
    double dm = 0.0, de = 0.0;
    for (std::size_t i = 1; i < t.momentum_residual.size(); ++i) {
      dm = std::max(dm, std::abs(t.momentum_residual[i] - t.momentum_residual[0]));
      de = std::max(de, std::abs(t.energy_residual[i] - t.energy_residual[0]));
    }
    r.momentum_drift.push_back(dm);
    r.energy_drift.push_back(de);
    r.max_momentum_drift = std::max(r.max_momentum_drift, dm);
    r.max_energy_drift = std::max(r.max_energy_drift, de);
  }
  return r;
}

ChaosMetric chaos_metric(const EnsembleStats& stats) {
  const auto& h = stats.hist_pair;
  if (h.dims() != 2 || h.size() == 0) throw std::invalid_argument("chaos_metric: missing pair histogram");
  const auto& ax = h.axis(0);
  const auto& ay = h.axis(1);
  const std::size_t nx = ax.size(), ny = ay.size();
  std::vector<double> fx(nx, 0.0), fy(ny, 0.0);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      const double f = h[i * ny + j];
      fx[i] += f * ay.weights[j];
      fy[j] += f * ax.weights[i];
    }
  ChaosMetric m;
  m.pair_cov = stats.pair_cov;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      m.l1_product_defect += std::abs(h[i * ny + j] - fx[i] * fy[j]) * ax.weights[i] * ay.weights[j];
  return m;
}

double axis_oracle_l1(const DensityGrid& hist_v11, const VelocityState& source, double tau, int J) {
  if (hist_v11.dims() != 1) throw std::invalid_argument("axis_oracle_l1: need a 1-D histogram");
  const auto& ax = hist_v11.axis(0);
  double l1 = 0.0;
  for (std::size_t b = 0; b < ax.size(); ++b) {
    const double lo = ax.nodes[b] - 0.5 * ax.weights[b];
    const double hi = ax.nodes[b] + 0.5 * ax.weights[b];
    l1 += std::abs(hist_v11[b] * ax.weights[b] - axis_probability_from_point(source, tau, J, lo, hi));
  }
  return l1;
}

namespace {

FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::domain_error("fit: abscissae are all equal");
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - my - slope * (x[i] - mx);
    ssr += e * e;
  }
  FitResult f;
  f.value = slope;
  f.stderr_ = x.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : 0.0;
  f.points = static_cast<int>(x.size());
  return f;
}

}  // namespace

FitResult gap_estimate(std::span<const double> tau, std::span<const double> value, double limit,
                       double expected_rate, std::span<const double> stderr) {
  if (tau.size() != value.size() || (!stderr.empty() && stderr.size() != tau.size()))
    throw std::invalid_argument("gap_estimate: length mismatch");
  if (tau.size() < 10) throw std::invalid_argument("gap_estimate: need at least 10 points");
  if (!(expected_rate > 0.0) || (tau.back() - tau.front()) * expected_rate < 2.0 * (1.0 - 1e-12))
    throw std::invalid_argument("gap_estimate: series must span 2 / expected_rate");
  std::vector<double> x, y;
  int sign = 0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const double r = value[i] - limit;
    if (!stderr.empty() && !(std::abs(r) > 10.0 * stderr[i])) break;
    if (r == 0.0) break;
    const int s = r > 0.0 ? 1 : -1;
    if (sign != 0 && s != sign) throw std::domain_error("gap_estimate: residual changes sign inside the fit window");
    sign = s;
    x.push_back(tau[i]);
    y.push_back(std::log(std::abs(r)));
  }
  if (x.size() < 3) throw std::domain_error("gap_estimate: fewer than 3 points above the noise floor");
  auto f = linear_fit(x, y);
  f.value = -f.value;
  return f;
}

FitResult convergence_order(std::span<const double> scale, std::span<const double> error, double allowance) {
  if (scale.size() != error.size()) throw std::invalid_argument("convergence_order: length mismatch");
  if (scale.size() < 3) throw std::invalid_argument("convergence_order: need at least 3 scales");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < scale.size(); ++i) {
    if (!(error[i] > 0.0) || !(scale[i] > 0.0))
      throw std::invalid_argument("convergence_order: scales and errors must be positive");
    x.push_back(std::log(scale[i]));
    y.push_back(std::log(error[i]));
  }
  const double trend = y.back() - y.front();
  const double slack = std::log1p(allowance);
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double step = y[i] - y[i - 1];
    if ((trend < 0.0 && step > slack) || (trend > 0.0 && step < -slack) || trend == 0.0)
      throw std::domain_error("convergence_order: errors are not monotone");
  }
  return linear_fit(x, y);
}

}  // namespace kfp
