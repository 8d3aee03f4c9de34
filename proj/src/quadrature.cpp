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

#include "kfp/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace kfp {
namespace {

// Symmetric weight with monic recurrence p_{k+1} = x p_k - beta_k p_{k-1}.
// Golub-Welsch for the initial nodes, then Newton polishing and Christoffel
// weights from the orthonormal recurrence; the tail weights keep full
// relative accuracy that way, which the eigenvector route does not give.
GaussRule symmetric_rule(int n, double mu0, const std::function<double(int)>& beta) {
  if (n < 1) throw std::invalid_argument("Gauss rule needs at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n - 1);
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(beta(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& eig = solver.eigenvalues();

  std::vector<double> sqrt_beta(n + 1);
  for (int k = 1; k <= n; ++k) sqrt_beta[k] = std::sqrt(beta(k));

  // Orthonormal p_0..p_n and p_n' at x.
  auto evaluate = [&](double x, double& pn, double& dpn, double& christoffel) {
    double p_prev = 0.0, p = 1.0 / std::sqrt(mu0);
    double d_prev = 0.0, d = 0.0;
    christoffel = p * p;
    for (int k = 0; k < n; ++k) {
      const double b_prev = k > 0 ? sqrt_beta[k] : 0.0;
      const double p_next = (x * p - b_prev * p_prev) / sqrt_beta[k + 1];
      const double d_next = (p + x * d - b_prev * d_prev) / sqrt_beta[k + 1];
      p_prev = p;
      p = p_next;
      d_prev = d;
      d = d_next;
      if (k + 1 < n) christoffel += p * p;
    }
    pn = p;
    dpn = d;
  };

  for (int i = 0; i < n; ++i) {
    double x = eig[i];
    double pn = 0.0, dpn = 1.0, sum = 0.0;
    for (int iter = 0; iter < 6; ++iter) {
      evaluate(x, pn, dpn, sum);
      const double step = pn / dpn;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    evaluate(x, pn, dpn, sum);
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / sum;
  }
  // Enforce exact symmetry of the rule.
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

GaussRule gauss_hermite(int n) {
  return symmetric_rule(n, std::sqrt(std::numbers::pi), [](int k) { return 0.5 * k; });
}

GaussRule gauss_normal(int n) {
  return symmetric_rule(n, 1.0, [](int k) { return static_cast<double>(k); });
}

GaussRule gauss_legendre(int n) {
  return symmetric_rule(n, 2.0, [](int k) {
    const double kk = static_cast<double>(k) * k;
    return kk / (4.0 * kk - 1.0);
  });
}

GaussRule gauss_gegenbauer(int n, double alpha) {
  if (!(alpha > -1.0)) throw std::invalid_argument("gauss_gegenbauer: alpha must exceed -1");
  const double mu0 =
      std::sqrt(std::numbers::pi) * boost::math::tgamma_delta_ratio(alpha + 1.0, 0.5);
  return symmetric_rule(n, mu0, [alpha](int k) {
    if (k == 1) return 1.0 / (2.0 * alpha + 3.0);
    const double s = 2.0 * k + 2.0 * alpha;
    return k * (k + 2.0 * alpha) / ((s + 1.0) * (s - 1.0));
  });
}

}  // namespace kfp
