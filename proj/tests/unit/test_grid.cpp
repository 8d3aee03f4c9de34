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
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "kfp/grid.hpp"

using namespace kfp;

TEST_CASE("gauss hermite axis integrates a gaussian") {
  DensityGrid g({gauss_hermite_axis(0.5, 0.8, 30)}, 1);
  g.fill([](std::span<const double> x) {
    return std::exp(-(x[0] - 1.0) * (x[0] - 1.0) / 2.0) / std::sqrt(2 * std::numbers::pi);
  });
  CHECK(g.mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g.integrate([](std::span<const double> x) { return x[0]; }) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tensor layout") {
  DensityGrid g({bin_axis(0, 1, 2), bin_axis(0, 3, 3)}, 0);
  CHECK(g.size() == 6);
  CHECK(g.stride(0) == 3);
  const auto idx = g.unravel(4);
  CHECK(idx[0] == 1);
  CHECK(idx[1] == 1);
  const auto x = g.point(5);
  CHECK(x[0] == doctest::Approx(0.75));
  CHECK(x[1] == doctest::Approx(2.5));
  CHECK(g.weight(0) == doctest::Approx(0.5));
}

TEST_CASE("csv round trip is exact") {
  DensityGrid g({gauss_hermite_axis(0.1, 1.0 / 3.0, 5), bin_axis(-1, 1, 4)}, 2);
  g.fill([](std::span<const double> x) { return std::exp(-x[0] * x[0]) * (1.0 / 3.0 + x[1]); });
  std::stringstream ss;
  write_csv(g, ss);
  const auto h = read_csv(ss);
  CHECK(h.order() == 2);
  CHECK(h.same_axes(g));
  CHECK(h.values() == g.values());
  CHECK(h.axis(0).gauss_variance.value() == g.axis(0).gauss_variance.value());
  CHECK(h.axis(1).regular);
  std::stringstream again;
  write_csv(h, again);
  std::stringstream first;
  write_csv(g, first);
  CHECK(again.str() == first.str());
}

TEST_CASE("malformed csv is rejected") {
  std::stringstream ss("order,1\naxis,0,regular,0,0,0.5\nweights,0,1\nv1,value\n");
  CHECK_THROWS(read_csv(ss));
}

TEST_CASE("product and distance") {
  DensityGrid a({bin_axis(0, 1, 4)}, 1), b({bin_axis(0, 1, 4)}, 1);
  a.fill([](auto) { return 1.0; });
  b.fill([](std::span<const double> x) { return 2.0 * x[0]; });
  CHECK(a.l1_distance(b) == doctest::Approx(0.5));
  const auto ab = tensor_product(a, b);
  CHECK(ab.order() == 2);
  CHECK(ab.mass() == doctest::Approx(1.0));
}
