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

#include <boost/math/special_functions/hermite.hpp>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "kfp/quadrature.hpp"
#include "kfp/rng.hpp"
#include "kfp/specfun.hpp"

using namespace kfp;

TEST_CASE("hermite values") {
  CHECK(hermite(0, 3.7) == 1.0);
  CHECK(hermite(1, 2.0) == 4.0);
  CHECK(hermite(2, 1.0) == 2.0);
  CHECK_THROWS_AS(hermite(-1, 0.0), std::invalid_argument);
  for (int k = 0; k <= 12; ++k)
    for (double x : {-2.5, -0.3, 0.0, 0.7, 3.1})
      CHECK(hermite(k, x) == doctest::Approx(boost::math::hermite(k, x)).epsilon(1e-13));
}

TEST_CASE("hermite ODE") {
  RngStream rng(3, 0);
  for (int i = 0; i < 100; ++i) {
    const double x = 4.0 * rng.uniform() - 2.0;
    const int k = 1 + static_cast<int>(rng.below(10));
    const double h = hermite(k, x);
    const double d1 = 2.0 * k * hermite(k - 1, x);
    const double d2 = k >= 2 ? 4.0 * k * (k - 1) * hermite(k - 2, x) : 0.0;
    CHECK(std::abs(d2 - 2 * x * d1 + 2 * k * h) < 1e-8 * (1 + std::abs(d2)));
  }
}

TEST_CASE("gamma ratio") {
  CHECK(gamma_ratio(3.3, 0.0) == 1.0);
  CHECK(gamma_ratio(7.5, 1.0) == doctest::Approx(1.0 / 7.5).epsilon(1e-14));
  CHECK(std::abs(gamma_ratio(1000.0, 2.0) * 1e6 - 1.0) < 3e-3);
  CHECK(gamma_ratio(1e6, 2.5) == doctest::Approx(std::exp(std::lgamma(1e6) - std::lgamma(1e6 + 2.5))).epsilon(1e-9));
  CHECK_THROWS_AS(gamma_ratio(0.0, 1.0), std::domain_error);
}

TEST_CASE("legendre closed forms") {
  for (double q : {3.0, 5.0, 20.0, 301.0})
    for (double t : {-1.0, -0.4, 0.0, 0.3, 1.0}) {
      CHECK(assoc_legendre_qdim(0, 0, t, q) == doctest::Approx(1.0));
      CHECK(assoc_legendre_qdim(1, 0, t, q) == doctest::Approx(std::sqrt(q) * t));
      CHECK(assoc_legendre_qdim(1, 1, t, q) == doctest::Approx(q / (q - 1) * std::sqrt(1 - t * t)));
    }
  CHECK_THROWS(assoc_legendre_qdim(1, 2, 0.0, 3.0));
  CHECK_THROWS(assoc_legendre_qdim(2, 1, 1.01, 3.0));
}

TEST_CASE("legendre orthogonality on the 2-sphere") {
  const auto rule = gauss_legendre(64);
  const double q = 3.0;
  for (int r = 0; r <= 4; ++r)
    for (int s = r; s <= 8; ++s)
      for (int s2 = s; s2 <= 8; ++s2) {
        double cross = 0.0, d1 = 0.0, d2 = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          const double t = rule.nodes[i];
          const double a = assoc_legendre_qdim(s, r, t, q), b = assoc_legendre_qdim(s2, r, t, q);
          cross += rule.weights[i] * a * b;
          d1 += rule.weights[i] * a * a;
          d2 += rule.weights[i] * b * b;
        }
        if (s != s2) CHECK(std::abs(cross) < 1e-10 * std::sqrt(d1 * d2));
      }
}

TEST_CASE("legendre never overflows") {
  for (int s = 0; s <= 12; ++s)
    for (int r = 0; r <= s; ++r)
      for (double t : {-0.999, -0.01, 0.5, 1.0}) CHECK(std::isfinite(assoc_legendre_qdim(s, r, t, 3e5)));
}

TEST_CASE("hermite limit") {
  CHECK(legendre_limit(1, 1, 1.7, 0.9) == 1.0);
  CHECK(legendre_limit(3, 3, 1.7, 0.9) == doctest::Approx(6.0));
  CHECK(std::abs(assoc_legendre_qdim(3, 3, 1.7 / std::sqrt(2 * 0.9 * 1e5), 3e5 - 3) - 6.0) < 1e-3);
  for (double w : {-1.5, 0.2, 2.0}) {
    CHECK(legendre_limit(1, 0, w, 1.0) == doctest::Approx(std::sqrt(1.5) * w));
    CHECK(legendre_limit(2, 0, w, 1.5) == doctest::Approx(w * w - 1.0));
  }
  const double n = 1e4;
  for (double w : {-1.0, 0.5, 1.9}) {
    const double t = w / std::sqrt(2 * n);
    CHECK(std::abs(assoc_legendre_qdim(1, 0, t, 3 * n - 3) - legendre_limit(1, 0, w, 1.0)) < 3.0 / std::sqrt(n));
    CHECK(std::abs(assoc_legendre_qdim(2, 0, t * std::sqrt(1 / 1.5), 3 * n - 4) - legendre_limit(2, 0, w, 1.5)) <
          3.0 / std::sqrt(n));
  }
}

TEST_CASE("asymptotic error") {
  CHECK(asymptotic_error(0, 0, 1.3, 1.0, 3, 100) == 0.0);
  double prev = INFINITY;
  for (long long n : {100, 1000, 10000}) {
    const double e = asymptotic_error(0, 0, 1.3, 1.0, 4, n);
    CHECK(e <= prev + 1e-14);
    prev = e;
  }
  CHECK_THROWS(asymptotic_error(2, 1, 3.0, 1.0, 3, 4));
  // Errors decay at least as fast as 1/sqrt(N).
  for (int s = 1; s <= 4; ++s)
    for (int r = 0; r <= s; ++r) {
      const double e1 = asymptotic_error(s, r, 1.1, 0.8, 3, 400);
      const double e2 = asymptotic_error(s, r, 1.1, 0.8, 3, 1600);
      CHECK(e2 <= 0.55 * e1);
    }
}
