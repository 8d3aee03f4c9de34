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

#include "kfp/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

namespace kfp {

double hermite(int k, double x) {
  if (k < 0) throw std::invalid_argument("hermite: negative degree");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int n = 1; n < k; ++n) {
    const double next = 2.0 * x * cur - 2.0 * n * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gamma_ratio(double x, double a) {
  if (!(x > 0.0)) throw std::domain_error("gamma_ratio: x must be positive");
  if (a < 0.0) throw std::domain_error("gamma_ratio: a must be nonnegative");
  if (a == 0.0) return 1.0;
  return boost::math::tgamma_delta_ratio(x, a);
}

double log_gamma_ratio(double x, double a) { return std::log(gamma_ratio(x, a)); }

double log_factorial(int k) {
  if (k < 0) throw std::invalid_argument("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double assoc_legendre_qdim(int s, int r, double t, double q) {
  if (s < 0 || r < 0 || r > s) throw std::invalid_argument("assoc_legendre_qdim: need 0 <= r <= s");
  if (!(std::abs(t) <= 1.0)) throw std::domain_error("assoc_legendre_qdim: |t| > 1");
  if (!(q >= 2.0)) throw std::domain_error("assoc_legendre_qdim: q must be at least 2");

  const double one_minus_t2 = (1.0 - t) * (1.0 + t);
  const double log_1mt2 = one_minus_t2 > 0.0 ? std::log(one_minus_t2) : -INFINITY;
  const double log_abs_t = t != 0.0 ? std::log(std::abs(t)) : -INFINITY;
  const double half_qm1 = 0.5 * (q - 1.0);
  const double log_prefix = 0.5 * (s + r) * std::log(q) + log_factorial(s) - r * std::log(2.0);

  double sum = 0.0;
  for (int l = 0; 2 * l <= s - r; ++l) {
    const int t_power = s - r - 2 * l;
    const int half_power2 = 2 * l + r;  // twice the exponent of (1 - t^2)
    double log_mag = log_prefix - 2.0 * l * std::log(2.0) - log_factorial(l) - log_factorial(t_power) +
                     log_gamma_ratio(half_qm1, l + r);
    if (half_power2 > 0) {
      if (one_minus_t2 <= 0.0) continue;
      log_mag += 0.5 * half_power2 * log_1mt2;
    }
    double sign = (l % 2 == 0) ? 1.0 : -1.0;
    if (t_power > 0) {
      if (t == 0.0) continue;
      log_mag += t_power * log_abs_t;
      if (t < 0.0 && t_power % 2 == 1) sign = -sign;
    }
    sum += sign * std::exp(log_mag);
  }
  return sum;
}

double legendre_limit(int s, int r, double w, double eps0) {
  if (s < 0 || r < 0 || r > s) throw std::invalid_argument("legendre_limit: need 0 <= r <= s");
  if (!(eps0 > 0.0)) throw std::domain_error("legendre_limit: eps0 must be positive");
  const int k = s - r;
  const double scale = std::exp(-0.5 * k * std::log(2.0) + log_factorial(s) - log_factorial(k));
  return scale * hermite(k, std::sqrt(3.0 / (4.0 * eps0)) * w);
}

double asymptotic_error(int s, int r, double w, double eps0, int p, long long n_particles) {
  const double n = static_cast<double>(n_particles);
  if (!(n > p / 3.0) || !(n > w * w / (2.0 * eps0))) {
    throw std::domain_error("asymptotic_error: need N > max(p/3, w^2/(2 eps0))");
  }
  const double t = w / std::sqrt(2.0 * n * eps0);
  return std::abs(assoc_legendre_qdim(s, r, t, 3.0 * n - p) - legendre_limit(s, r, w, eps0));
}

}  // namespace kfp
