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

#include "doctest.h"
#include "kfp/geometry.hpp"
#include "kfp/quadrature.hpp"
#include "kfp/spectral.hpp"
#include "kfp/specfun.hpp"

using namespace kfp;

namespace {

// Integrates h(v) over the ball of one-particle velocities reachable at
// finite N, by Gauss-Legendre on the enclosing cube.
template <class F>
double integrate_ball(const SystemParams& p, F&& h, int nodes = 48) {
  const int N = p.n_particles;
  const double half = std::sqrt(p.radius_squared() * (N - 1) / N);
  const auto r = gauss_legendre(nodes);
  double sum = 0.0;
  std::vector<Vec3> v(1);
  for (int a = 0; a < nodes; ++a)
    for (int b = 0; b < nodes; ++b)
      for (int c = 0; c < nodes; ++c) {
        v[0] = {p.u0[0] + half * r.nodes[a], p.u0[1] + half * r.nodes[b], p.u0[2] + half * r.nodes[c]};
        sum += r.weights[a] * r.weights[b] * r.weights[c] * h(v);
      }
  return sum * half * half * half;
}

}  // namespace

TEST_CASE("eigenvalues and degeneracies") {
  CHECK(eigenvalue(0, 5, 1.3) == 0.0);
  CHECK(eigenvalue(1, 2, 1.0) == doctest::Approx(0.5));
  CHECK(limit_eigenvalue(2, 1.0) == doctest::Approx(3.0));
  CHECK(degeneracy(0, 7) == 1);
  CHECK(degeneracy(1, 2) == 3);
  CHECK(degeneracy(2, 2) == 5);
  CHECK(degeneracy(1, 5) == 12);
  // Harmonics of degree 2 in dimension q: (q+2)(q-1)/2.
  CHECK(degeneracy(2, 4) == (9 + 2) * (9 - 1) / 2);
  double prev = 0.0;
  for (int n = 2; n <= 1000000; n *= 4) {
    const double l = eigenvalue(1, n, 1.0);
    CHECK(l > prev);
    CHECK(l < 1.5);
    prev = l;
  }
}

TEST_CASE("multi index enumeration") {
  const auto zero = multi_index_set(0, 2);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].m == std::vector<int>(6, 0));
  const auto one = multi_index_set(1, 1);
  REQUIRE(one.size() == 3);
  CHECK(one[0].m == std::vector<int>{1, 0, 0});
  CHECK(one[1].m == std::vector<int>{0, 1, 0});
  CHECK(one[2].m == std::vector<int>{0, 0, 1});
  for (int n = 1; n <= 3; ++n)
    for (int j = 0; j <= 6; ++j) {
      const auto set = multi_index_set(j, n);
      const double expected = std::round(std::exp(std::lgamma(j + 3 * n) - std::lgamma(j + 1) - std::lgamma(3 * n)));
      CHECK(static_cast<double>(set.size()) == expected);
      for (const auto& idx : set) {
        int s = 0;
        for (int m : idx.m) s += m;
        CHECK(s == j);
      }
    }
}

TEST_CASE("uniform marginal is a probability density") {
  for (int N : {4, 8, 20}) {
    const auto p = derive_params({0.2, -0.1, 0.4}, 1.3, N);
    // The density is radial in v - u0.
    const double half = std::sqrt(p.radius_squared() * (N - 1) / N);
    const auto r = gauss_legendre(40);
    double mass = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      const double rad = 0.5 * half * (1.0 + r.nodes[i]);
      const std::vector<Vec3> v{{p.u0[0] + rad, p.u0[1], p.u0[2]}};
      mass += 0.5 * half * r.weights[i] * 4.0 * std::numbers::pi * rad * rad * uniform_marginal(1, p, v);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("finite N eigenfunction values") {
  const auto big = derive_params({0.5, 0.0, -1.0}, 2.0, 100000);
  const std::vector<Vec3> at_u{big.u0};
  const double peak = std::pow(3.0 / (4.0 * std::numbers::pi * big.eps0), 1.5);
  CHECK(marginal_eigenfunction_finite_n(make_index({0, 0, 0}), 1, big, at_u) == doctest::Approx(peak).epsilon(1e-4));

  const auto p = derive_params({0, 0, 0}, 1.0, 8);
  const double edge = std::sqrt(p.radius_squared() * 7.0 / 8.0);
  const std::vector<Vec3> boundary{{edge, 0, 0}};
  for (const auto& idx : multi_index_range(3, 1)) CHECK(marginal_eigenfunction_finite_n(idx, 1, p, boundary) == 0.0);
  CHECK_THROWS(marginal_eigenfunction_finite_n(make_index({0, 0, 0}), 1, derive_params({0, 0, 0}, 1, 2), at_u));
}

TEST_CASE("finite N marginal chains are orthogonal") {
  const auto p = derive_params({0.1, 0.0, 0.0}, 1.005, 8);
  const auto idx = multi_index_range(2, 1);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    // Pairing against the ground mode is the integral of the mode itself.
    const double mass = integrate_ball(
        p, [&](const std::vector<Vec3>& v) { return marginal_eigenfunction_finite_n(idx[a], 1, p, v); });
    CHECK(std::abs(mass - (a == 0 ? 1.0 : 0.0)) < 1e-8);
    for (std::size_t b = a; b < idx.size(); ++b) {
      const double ip = integrate_ball(p, [&](const std::vector<Vec3>& v) {
        const double u = uniform_marginal(1, p, v);
        if (u == 0.0) return 0.0;
        return marginal_eigenfunction_finite_n(idx[a], 1, p, v) * marginal_eigenfunction_finite_n(idx[b], 1, p, v) / u;
      });
      const double expected = a == b ? chain_norm(idx[a].m, p) : 0.0;
      CHECK(std::abs(ip - expected) < 1e-7 * (1 + expected));
    }
  }
}

TEST_CASE("finite N eigenfunctions approach the limit") {
  const std::vector<Vec3> v{{0.4, -0.3, 1.0}};
  for (const auto& idx : multi_index_range(3, 1)) {
    double prev = INFINITY;
    for (int N : {100, 1000, 10000}) {
      const auto p = derive_params({0.1, 0.2, 0.3}, 1.2, N);
      const double err =
          std::abs(marginal_eigenfunction_finite_n(idx, 1, p, v) - marginal_eigenfunction_limit(idx, 1, p, v));
      CHECK(err < prev);
      CHECK(err < 20.0 / std::sqrt(N));
      prev = err;
    }
  }
}

TEST_CASE("limit eigenfunctions are Hermite orthogonal") {
  const auto p = derive_params({0.3, 0, 0}, 0.545, 10);
  const double T = p.temperature();
  DensityGrid grid({gauss_hermite_axis(p.u0[0], T, 12), gauss_hermite_axis(p.u0[1], T, 12),
                    gauss_hermite_axis(p.u0[2], T, 12)},
                   1);
  const auto idx = multi_index_range(3, 1);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a; b < idx.size(); ++b) {
      grid.fill([&](std::span<const double> x) {
        const std::vector<Vec3> v{{x[0], x[1], x[2]}};
        const double m = marginal_eigenfunction_limit(make_index({0, 0, 0}), 1, p, v);
        return marginal_eigenfunction_limit(idx[a], 1, p, v) * marginal_eigenfunction_limit(idx[b], 1, p, v) / m;
      });
      double expected = 0.0;
      if (a == b) {
        expected = 1.0;
        for (int m : idx[a].m) expected *= std::tgamma(m + 1.0);
      }
      CHECK(std::abs(grid.mass() - expected) < 1e-8);
    }
  const std::vector<Vec3> v{{0.9, -0.2, 0.5}};
  const double t = 2.0 * p.eps0 / 3.0;
  const double y2 = (0.9 - 0.3) * (0.9 - 0.3) + 0.04 + 0.25;
  CHECK(marginal_eigenfunction_limit(make_index({0, 0, 0}), 1, p, v) ==
        doctest::Approx(std::pow(2 * std::numbers::pi * t, -1.5) * std::exp(-y2 / (2 * t))));
}

TEST_CASE("point mass coefficients") {
  const auto p = derive_params({0, 0, 0}, 1.0, 2);
  const double R = std::sqrt(p.radius_squared());
  const auto pole = rotate_from_w(WState{{{R, 0, 0}}, p}, p);
  for (int j = 0; j <= 6; ++j) {
    const auto idx = make_index({j, 0, 0});
    const double expected = assoc_legendre_qdim(j, 0, 1.0, 3.0) / chain_norm(idx.m, p);
    CHECK(fourier_coefficient_point(idx, pole) == doctest::Approx(expected));
  }
  // Legendre on the 2-sphere: P_j(1) = 1, mean square 1/(2j+1) after scaling.
  for (int j = 0; j <= 6; ++j) {
    const auto idx = make_index({j, 0, 0});
    const double scale = std::pow(3.0, 0.5 * j);
    CHECK(chain_norm(idx.m, p) * (2 * j + 1) == doctest::Approx(std::pow(assoc_legendre_qdim(j, 0, 1.0, 3.0), 2)));
    CHECK(assoc_legendre_qdim(j, 0, 1.0, 3.0) > 0.0);
    (void)scale;
  }
  CHECK(fourier_coefficient_point(make_index({0, 0, 0}), pole) == 1.0);
}

TEST_CASE("exact sphere coefficients recover a known expansion") {
  const auto p = derive_params({0, 0, 0}, 1.0, 2);
  const auto target = make_index({1, 1, 0});
  const auto other = make_index({2, 0, 0});
  const double norm = chain_norm(target.m, p);
  auto density = [&](const Vec3& w) {
    const double x[3] = {w[0], w[1], w[2]};
    return 1.0 + 0.25 * chain_value(target.m, x, p) / std::sqrt(norm);
  };
  CHECK(fourier_coefficient_sphere(density, make_index({0, 0, 0}), p) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fourier_coefficient_sphere(density, target, p) * std::sqrt(norm) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(fourier_coefficient_sphere(density, other, p)) < 1e-12);
  CHECK(std::abs(fourier_coefficient_sphere(density, make_index({0, 1, 1}), p)) < 1e-12);
  CHECK_THROWS(fourier_coefficient_sphere(density, target, derive_params({0, 0, 0}, 1.0, 3)));
}

TEST_CASE("uniform sampler has trivial coefficients") {
  const auto p = derive_params({0.2, 0, 0}, 1.02, 6);
  StateSampler sampler = [p](RngStream& rng) { return sample_uniform(p, rng); };
  const auto e = expansion_from_sampler(sampler, p, 1, 2, 20000, 17);
  CHECK(e.entries[0].coeff == doctest::Approx(1.0));
  for (std::size_t k = 1; k < e.entries.size(); ++k) {
    CHECK(std::isfinite(e.entries[k].coeff));
    CHECK(std::abs(e.entries[k].coeff) < 4.0 * e.entries[k].stderr_);
  }
  const auto single = fourier_coefficient_mc(sampler, make_index({1, 0, 0}), p, 20000, 17);
  CHECK(single.value == doctest::Approx(e.entries[1].coeff));
}

TEST_CASE("series limits in time") {
  const auto p = derive_params({0, 0.1, 0}, 1.005, 8);
  RngStream rng(4, 4);
  const auto start = sample_uniform(p, rng);
  const auto e = expansion_from_point(start, 1, 3);
  const std::vector<Vec3> v{{0.3, -0.2, 0.1}};
  CHECK(evolve_marginal_series(e, 200.0, SeriesMode::FiniteN, v) ==
        doctest::Approx(uniform_marginal(1, p, v)).epsilon(1e-12));
  CHECK(evolve_marginal_series(e, 200.0, SeriesMode::Limit, v) ==
        doctest::Approx(marginal_eigenfunction_limit(make_index({0, 0, 0}), 1, p, v)).epsilon(1e-12));
  double direct = 0.0;
  for (const auto& entry : e.entries) direct += entry.coeff * marginal_eigenfunction_finite_n(entry.idx, 1, p, v);
  CHECK(evolve_marginal_series(e, 0.0, SeriesMode::FiniteN, v) == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("single mode decays exponentially") {
  const auto p = derive_params({0, 0, 0}, 1.5, 8);
  SpectralExpansion e{p, 1, 2, {{make_index({0, 0, 0}), 1.0, 0.0}, {make_index({1, 1, 0}), 0.3, 0.0}}};
  const std::vector<Vec3> v{{0.4, 0.7, -0.1}};
  for (auto mode : {SeriesMode::FiniteN, SeriesMode::Limit}) {
    const double ground = evolve_marginal_series(e, 1e6, mode, v);
    const double d1 = evolve_marginal_series(e, 0.5, mode, v) - ground;
    const double d2 = evolve_marginal_series(e, 1.5, mode, v) - ground;
    const double lambda = mode == SeriesMode::FiniteN ? eigenvalue(2, 8, 1.5) : limit_eigenvalue(2, 1.5);
    CHECK(std::abs(std::log(d2 / d1) / -1.0 - lambda) < 1e-6);
  }
}

TEST_CASE("limit series conserves mass momentum and energy") {
  const auto p = derive_params({0.2, -0.1, 0.3}, 1.5 + 0.5 * (0.04 + 0.01 + 0.09), 50);
  const double T = p.temperature();
  DensityGrid f0({gauss_hermite_axis(p.u0[0], T, 16), gauss_hermite_axis(p.u0[1], T, 16),
                  gauss_hermite_axis(p.u0[2], T, 16)},
                 1);
  auto g = [&](std::vector<int> m, std::span<const double> x) {
    const std::vector<Vec3> v{{x[0], x[1], x[2]}};
    return marginal_eigenfunction_limit(make_index(std::move(m)), 1, p, v);
  };
  f0.fill([&](std::span<const double> x) {
    return g({0, 0, 0}, x) + 0.2 * g({3, 0, 0}, x) + 0.1 * g({1, 1, 0}, x) + 0.05 * g({0, 2, 0}, x) -
           0.05 * g({2, 0, 0}, x);
  });
  const auto e = expansion_from_grid(f0, p, 1, 4);
  for (const auto& entry : e.entries) {
    double expected = 0.0;
    if (entry.idx.m == std::vector<int>{0, 0, 0}) expected = 1.0;
    if (entry.idx.m == std::vector<int>{3, 0, 0}) expected = 0.2;
    if (entry.idx.m == std::vector<int>{1, 1, 0}) expected = 0.1;
    if (entry.idx.m == std::vector<int>{0, 2, 0}) expected = 0.05;
    if (entry.idx.m == std::vector<int>{2, 0, 0}) expected = -0.05;
    CHECK(std::abs(entry.coeff - expected) < 1e-10);
  }
  for (double tau : {0.0, 0.3, 2.0}) {
    DensityGrid ft = f0;
    ft.fill([&](std::span<const double> x) {
      const std::vector<Vec3> v{{x[0], x[1], x[2]}};
      return evolve_marginal_series(e, tau, SeriesMode::Limit, v);
    });
    CHECK(std::abs(ft.mass() - 1.0) < 1e-8);
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(ft.integrate([k](std::span<const double> x) { return x[k]; }) - p.u0[k]) < 1e-8);
    const double energy =
        ft.integrate([](std::span<const double> x) { return 0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); });
    CHECK(std::abs(energy - p.e0) < 1e-8);
  }
}

TEST_CASE("expansion json round trip") {
  const auto p = derive_params({0.1, 0.2, 0.3}, 2.0, 5);
  RngStream rng(1, 1);
  const auto e = expansion_from_point(sample_uniform(p, rng), 1, 2);
  const auto back = SpectralExpansion::from_json(e.to_json());
  CHECK(back.n == 1);
  CHECK(back.J == 2);
  CHECK(back.params.n_particles == 5);
  REQUIRE(back.entries.size() == e.entries.size());
  for (std::size_t k = 0; k < e.entries.size(); ++k) {
    CHECK(back.entries[k].idx == e.entries[k].idx);
    CHECK(back.entries[k].coeff == e.entries[k].coeff);
  }
  CHECK(back.to_json() == e.to_json());
}

TEST_CASE("axis density from a pole") {
  const auto p = derive_params({0, 0, 0}, 1.0, 2);
  const double R = std::sqrt(p.radius_squared());
  const auto pole = rotate_from_w(WState{{{R, 0, 0}}, p}, p);
  const double half = R / std::sqrt(2.0);
  CHECK(axis_probability_from_point(pole, 0.2, 20, -half, half) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(axis_density_from_point(pole, 50.0, 20, 0.3) == doctest::Approx(1.0 / (2 * half)).epsilon(1e-10));
  // Mean of v_11 relaxes with the first eigenvalue.
  const auto r = gauss_legendre(40);
  for (double tau : {0.2, 1.0}) {
    double mean = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      mean += r.weights[i] * half * half * r.nodes[i] * axis_density_from_point(pole, tau, 20, half * r.nodes[i]);
    CHECK(mean == doctest::Approx(pole.v[0][0] * std::exp(-eigenvalue(1, 2, 1.0) * tau)).epsilon(1e-10));
  }
}

TEST_CASE("marginal consistency") {
  const auto p = derive_params({0.1, 0, -0.2}, 1.0 + 0.025, 10);
  for (const auto& idx : multi_index_range(2, 1)) {
    CHECK(marginal_consistency_check(idx, {0, 0, 0}, 1, p) < 1e-8);
    CHECK(marginal_consistency_check(idx, {1, 0, 1}, 1, p) < 1e-8);
  }
}

TEST_CASE("admissible indices match the degeneracy at N = 2") {
  for (int j = 0; j <= 10; ++j) {
    std::size_t count = 0;
    for (const auto& idx : multi_index_set(j, 1)) count += admissible(idx, 2) ? 1 : 0;
    CHECK(count == static_cast<std::size_t>(2 * j + 1));
    CHECK(multi_index_set(j, 1).size() == static_cast<std::size_t>((j + 1) * (j + 2) / 2));
  }
  for (const auto& idx : multi_index_range(6, 2)) CHECK(admissible(idx, 4));
  const auto p = derive_params({0, 0, 0}, 1.0, 2);
  CHECK_NOTHROW(expansion_from_point(pole_state(p), 1, 8));
}
