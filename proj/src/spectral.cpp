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

#include "kfp/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "kfp/geometry.hpp"
#include "kfp/io.hpp"
#include "kfp/quadrature.hpp"
#include "kfp/specfun.hpp"

namespace kfp {

double eigenvalue(int j, int n_particles, double eps0) {
  if (j < 0 || n_particles < 2) throw std::invalid_argument("eigenvalue: need j >= 0, N >= 2");
  return static_cast<double>(j) * (j + 3.0 * n_particles - 5.0) / (2.0 * n_particles * eps0);
}

double limit_eigenvalue(int j, double eps0) {
  if (j < 0) throw std::invalid_argument("limit_eigenvalue: need j >= 0");
  return 3.0 * j / (2.0 * eps0);
}

boost::multiprecision::cpp_int degeneracy(int j, int n_particles) {
  if (j < 0 || n_particles < 2) throw std::invalid_argument("degeneracy: need j >= 0, N >= 2");
  using boost::multiprecision::cpp_int;
  const int a = 3 * n_particles - 5;
  // (a + 2j) * C(a - 1 + j, j) / a, exact; for a = 1 this is 2j + 1.
  cpp_int binom = 1;
  for (int i = 1; i <= j; ++i) {
    binom *= (a - 1 + i);
    binom /= i;
  }
  return cpp_int(a + 2 * j) * binom / a;
}

MultiIndex make_index(std::vector<int> m) {
  MultiIndex idx;
  for (int x : m) {
    if (x < 0) throw std::invalid_argument("make_index: negative degree");
    idx.j += x;
  }
  idx.m = std::move(m);
  return idx;
}

namespace {

void compositions(int remaining, std::size_t pos, std::vector<int>& cur, std::vector<MultiIndex>& out, int j) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.push_back(MultiIndex{j, cur});
    return;
  }
  for (int x = remaining; x >= 0; --x) {
    cur[pos] = x;
    compositions(remaining - x, pos + 1, cur, out, j);
  }
}

}  // namespace

std::vector<MultiIndex> multi_index_set(int j, int n) {
  if (j < 0 || n < 1) throw std::invalid_argument("multi_index_set: need j >= 0, n >= 1");
  std::vector<MultiIndex> out;
  std::vector<int> cur(3 * n, 0);
  compositions(j, 0, cur, out, j);
  return out;
}

std::vector<MultiIndex> multi_index_range(int J, int n) {
  std::vector<MultiIndex> out;
  for (int j = 0; j <= J; ++j) {
    auto part = multi_index_set(j, n);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

bool admissible(const MultiIndex& idx, int n_particles) {
  const int coords = static_cast<int>(idx.m.size());
  if (coords > 3 * n_particles - 3) return false;
  // q reaches one only on coordinate 3N-4; the degree left there is its own entry.
  if (coords == 3 * n_particles - 3) return idx.m.back() <= 1;
  return true;
}

std::vector<MultiIndex> multi_index_range(int J, int n, int n_particles) {
  auto all = multi_index_range(J, n);
  std::erase_if(all, [&](const MultiIndex& idx) { return !admissible(idx, n_particles); });
  return all;
}

namespace {

// log(k_prev! / m!)
double log_chain_scale(int k_prev, int m) { return log_factorial(k_prev) - log_factorial(m); }

// Mean square of P_s^r(t; q) under the density proportional to (1-t^2)^{(q-3)/2}.
double factor_norm_uncached(int s, int r, int q) {
  if (q == 1) return 1.0;
  const double alpha = r + 0.5 * (q - 3);
  const auto rule = gauss_gegenbauer(s - r + 1, alpha);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double p = assoc_legendre_qdim(s, r, t, q);
    sum += rule.weights[i] * p * p / std::pow((1.0 - t) * (1.0 + t), r);
  }
  // Normalise by the integral of (1-t^2)^{(q-3)/2}, sqrt(pi) Gamma((q-1)/2)/Gamma(q/2).
  const double log_mass = 0.5 * std::log(std::numbers::pi) + std::lgamma(0.5 * (q - 1)) - std::lgamma(0.5 * q);
  return sum * std::exp(-log_mass);
}

double factor_norm(int s, int r, int q) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, double> cache;
  const auto key = std::make_tuple(s, r, q);
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const double value = factor_norm_uncached(s, r, q);
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, value);
  return value;
}

// Degree s factor on a zero-dimensional sphere {-1, 1}.
double circle_end_factor(int s, double t) {
  if (s == 0) return 1.0;
  if (s == 1) return t >= 0.0 ? 1.0 : -1.0;
  throw std::invalid_argument("chain: degree above one on the last circle coordinate");
}

}  // namespace

double chain_value(std::span<const int> m, std::span<const double> x, const SystemParams& params) {
  if (x.size() < m.size()) throw std::invalid_argument("chain_value: too few coordinates");
  int k = 0;
  for (int mi : m) k += mi;
  double rho2 = params.radius_squared();
  int q = 3 * params.n_particles - 3;
  double value = 1.0;
  for (std::size_t a = 0; a < m.size(); ++a) {
    const int k_prev = k;
    k -= m[a];
    if (k_prev == 0) break;
    if (q < 1) throw std::invalid_argument("chain_value: more coordinates than the sphere has");
    if (!(rho2 > 0.0)) return 0.0;
    const double rho = std::sqrt(rho2);
    double t = x[a] / rho;
    if (t > 1.0) t = 1.0;
    if (t < -1.0) t = -1.0;
    const double factor = q == 1 ? circle_end_factor(k_prev, t) : assoc_legendre_qdim(k_prev, k, t, q);
    value *= factor * std::exp(-log_chain_scale(k_prev, m[a]));
    rho2 -= x[a] * x[a];
    --q;
  }
  return value;
}

double chain_norm(std::span<const int> m, const SystemParams& params) {
  int k = 0;
  for (int mi : m) k += mi;
  int q = 3 * params.n_particles - 3;
  double norm = 1.0;
  for (std::size_t a = 0; a < m.size() && k > 0; ++a) {
    const int k_prev = k;
    k -= m[a];
    if (q < 1) throw std::invalid_argument("chain_norm: more coordinates than the sphere has");
    if (q == 1 && k_prev > 1) throw std::invalid_argument("chain_norm: degree above one on the last circle coordinate");
    norm *= factor_norm(k_prev, k, q) * std::exp(-2.0 * log_chain_scale(k_prev, m[a]));
    --q;
  }
  return norm;
}

double leading_density(std::span<const double> x, const SystemParams& params) {
  const double q = 3.0 * params.n_particles - 3.0;
  const double d = static_cast<double>(x.size());
  if (!(q > d)) throw std::invalid_argument("leading_density: need fewer coordinates than 3(N-1)");
  const double r2 = params.radius_squared();
  double s = 0.0;
  for (double c : x) s += c * c;
  const double u = 1.0 - s / r2;
  if (!(u > 0.0)) return 0.0;
  const double log_c = std::lgamma(0.5 * q) - 0.5 * d * std::log(std::numbers::pi) - std::lgamma(0.5 * (q - d)) -
                       0.5 * d * std::log(r2);
  return std::exp(log_c + 0.5 * (q - d - 2.0) * std::log(u));
}

namespace {

std::vector<double> flatten(const std::vector<Vec3>& w) {
  std::vector<double> x;
  x.reserve(3 * w.size());
  for (const auto& v : w) x.insert(x.end(), v.begin(), v.end());
  return x;
}

void check_block(const MultiIndex& idx, int n, std::span<const Vec3> v_block) {
  if (n < 1) throw std::invalid_argument("marginal eigenfunction: n must be positive");
  if (static_cast<int>(idx.m.size()) != 3 * n) throw std::invalid_argument("marginal eigenfunction: index length != 3n");
  if (static_cast<int>(v_block.size()) < n) throw std::invalid_argument("marginal eigenfunction: too few velocities");
}

}  // namespace

double uniform_marginal(int n, const SystemParams& params, std::span<const Vec3> v_block) {
  const int N = params.n_particles;
  if (N <= n + 1) throw std::invalid_argument("uniform_marginal: need N > n + 1");
  const auto x = flatten(leading_w(v_block.first(n), params));
  const double jac = std::pow(static_cast<double>(N) / (N - n), 1.5 * n);
  return leading_density(x, params) * jac;
}

double marginal_eigenfunction_finite_n(const MultiIndex& idx, int n, const SystemParams& params,
                                       std::span<const Vec3> v_block) {
  check_block(idx, n, v_block);
  const int N = params.n_particles;
  if (N <= n + 1) throw std::invalid_argument("marginal_eigenfunction_finite_n: need N > n + 1");
  const auto x = flatten(leading_w(v_block.first(n), params));
  const double weight = leading_density(x, params);
  if (weight == 0.0) return 0.0;
  const double jac = std::pow(static_cast<double>(N) / (N - n), 1.5 * n);
  return chain_value(idx.m, x, params) * weight * jac;
}

double marginal_eigenfunction_limit(const MultiIndex& idx, int n, const SystemParams& params,
                                    std::span<const Vec3> v_block) {
  check_block(idx, n, v_block);
  const double T = params.temperature();
  const double scale = 1.0 / std::sqrt(2.0 * T);
  double r2 = 0.0, poly = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < 3; ++l) {
      const double y = v_block[i][l] - params.u0[l];
      r2 += y * y;
      poly *= hermite(idx.m[3 * i + l], scale * y);
    }
  }
  const double log_m = -1.5 * n * std::log(2.0 * std::numbers::pi * T) - r2 / (2.0 * T);
  return std::exp(log_m - 0.5 * idx.j * std::log(2.0)) * poly;
}

double harmonic_value(const MultiIndex& idx, const VelocityState& state) {
  const int n = static_cast<int>(idx.m.size()) / 3;
  if (n < 1 || 3 * n != static_cast<int>(idx.m.size())) throw std::invalid_argument("harmonic_value: bad index");
  if (n > state.params.n_particles - 1) throw std::invalid_argument("harmonic_value: index longer than the state");
  const auto x = flatten(leading_w(std::span<const Vec3>(state.v).first(n), state.params));
  return chain_value(idx.m, x, state.params);
}

double fourier_coefficient_point(const MultiIndex& idx, const VelocityState& state) {
  return harmonic_value(idx, state) / chain_norm(idx.m, state.params);
}

CoefficientEstimate fourier_coefficient_mc(const StateSampler& sampler, const MultiIndex& idx,
                                           const SystemParams& params, std::int64_t samples,
                                           std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("fourier_coefficient_mc: need at least two samples");
  RngStream rng(seed, 0);
  double mean = 0.0, m2 = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    const double y = harmonic_value(idx, sampler(rng));
    const double delta = y - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (y - mean);
  }
  const double norm = chain_norm(idx.m, params);
  const double var = m2 / static_cast<double>(samples - 1);
  return {mean / norm, std::sqrt(var / static_cast<double>(samples)) / norm};
}

double fourier_coefficient_sphere(const std::function<double(const Vec3&)>& density, const MultiIndex& idx,
                                  const SystemParams& params, int nodes) {
  if (params.n_particles != 2) throw std::invalid_argument("fourier_coefficient_sphere: exact mode needs N = 2");
  if (idx.m.size() != 3) throw std::invalid_argument("fourier_coefficient_sphere: index must have three parts");
  const double R = std::sqrt(params.radius_squared());
  const auto rule = gauss_legendre(nodes);
  const int n_phi = 2 * nodes;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const double rho = R * std::sqrt((1.0 - t) * (1.0 + t));
    for (int k = 0; k < n_phi; ++k) {
      const double phi = 2.0 * std::numbers::pi * (k + 0.5) / n_phi;
      const Vec3 w{R * t, rho * std::cos(phi), rho * std::sin(phi)};
      const double x[3] = {w[0], w[1], w[2]};
      sum += 0.5 * rule.weights[i] / n_phi * density(w) * chain_value(idx.m, x, params);
    }
  }
  return sum / chain_norm(idx.m, params);
}

double fourier_coefficient_limit(const DensityGrid& f0, const MultiIndex& idx, const SystemParams& params) {
  const std::size_t d = idx.m.size();
  if (f0.dims() != d) throw std::invalid_argument("fourier_coefficient_limit: grid dimension != index length");
  const double scale = 1.0 / std::sqrt(2.0 * params.temperature());
  double log_fact = 0.0;
  for (int m : idx.m) log_fact += log_factorial(m);
  const double integral = f0.integrate([&](std::span<const double> v) {
    double p = 1.0;
    for (std::size_t a = 0; a < d; ++a) p *= hermite(idx.m[a], scale * (v[a] - params.u0[a % 3]));
    return p;
  });
  return integral * std::exp(-0.5 * idx.j * std::log(2.0) - log_fact);
}

// ---------------------------------------------------------------------------

std::string SpectralExpansion::to_json() const {
  Json doc;
  doc["params"] = {{"n_particles", params.n_particles},
                   {"u0", {params.u0[0], params.u0[1], params.u0[2]}},
                   {"e0", params.e0},
                   {"eps0", params.eps0}};
  doc["n"] = n;
  doc["J"] = J;
  Json list = Json::array();
  for (const auto& e : entries) {
    list.push_back({{"m", e.idx.m}, {"coeff", e.coeff}});
  }
  doc["entries"] = std::move(list);
  return dump_json(doc);
}

SpectralExpansion SpectralExpansion::from_json(const std::string& text) {
  const auto doc = Json::parse(text);
  SpectralExpansion out;
  const auto& p = doc.at("params");
  const auto u = p.at("u0").get<std::vector<double>>();
  if (u.size() != 3) throw std::runtime_error("expansion JSON: u0 must have three components");
  out.params = derive_params({u[0], u[1], u[2]}, p.at("e0").get<double>(), p.at("n_particles").get<int>());
  out.n = doc.at("n").get<int>();
  out.J = doc.at("J").get<int>();
  for (const auto& e : doc.at("entries")) {
    SpectralEntry entry;
    entry.idx = make_index(e.at("m").get<std::vector<int>>());
    if (static_cast<int>(entry.idx.m.size()) != 3 * out.n) throw std::runtime_error("expansion JSON: bad index length");
    entry.coeff = e.at("coeff").get<double>();
    out.entries.push_back(std::move(entry));
  }
  return out;
}

SpectralExpansion expansion_from_point(const VelocityState& state, int n, int J) {
  SpectralExpansion out{state.params, n, J, {}};
  for (auto& idx : multi_index_range(J, n, state.params.n_particles)) {
    const double c = fourier_coefficient_point(idx, state);
    out.entries.push_back({std::move(idx), c, 0.0});
  }
  return out;
}

SpectralExpansion expansion_from_sampler(const StateSampler& sampler, const SystemParams& params, int n, int J,
                                         std::int64_t samples, std::uint64_t seed) {
  SpectralExpansion out{params, n, J, {}};
  const auto indices = multi_index_range(J, n, params.n_particles);
  std::vector<double> mean(indices.size(), 0.0), m2(indices.size(), 0.0);
  std::vector<double> norm(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) norm[k] = chain_norm(indices[k].m, params);
  RngStream rng(seed, 0);
  for (std::int64_t i = 0; i < samples; ++i) {
    const auto state = sampler(rng);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const double y = harmonic_value(indices[k], state);
      const double delta = y - mean[k];
      mean[k] += delta / static_cast<double>(i + 1);
      m2[k] += delta * (y - mean[k]);
    }
  }
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const double se = samples > 1 ? std::sqrt(m2[k] / static_cast<double>(samples - 1) / samples) : 0.0;
    out.entries.push_back({indices[k], mean[k] / norm[k], se / norm[k]});
  }
  return out;
}

SpectralExpansion expansion_from_grid(const DensityGrid& f0, const SystemParams& params, int n, int J) {
  SpectralExpansion out{params, n, J, {}};
  for (auto& idx : multi_index_range(J, n)) {
    const double c = fourier_coefficient_limit(f0, idx, params);
    out.entries.push_back({std::move(idx), c, 0.0});
  }
  return out;
}

namespace {

double series(const SpectralExpansion& e, double tau, SeriesMode mode, std::span<const Vec3> v_block, bool rate) {
  double sum = 0.0;
  for (const auto& entry : e.entries) {
    if (entry.idx.j > e.J) continue;
    const double lambda = mode == SeriesMode::FiniteN ? eigenvalue(entry.idx.j, e.params.n_particles, e.params.eps0)
                                                      : limit_eigenvalue(entry.idx.j, e.params.eps0);
    const double g = mode == SeriesMode::FiniteN ? marginal_eigenfunction_finite_n(entry.idx, e.n, e.params, v_block)
                                                 : marginal_eigenfunction_limit(entry.idx, e.n, e.params, v_block);
    const double decay = std::exp(-lambda * tau);
    sum += entry.coeff * g * (rate ? -lambda * decay : decay);
  }
  return sum;
}

}  // namespace

double evolve_marginal_series(const SpectralExpansion& expansion, double tau, SeriesMode mode,
                              std::span<const Vec3> v_block) {
  return series(expansion, tau, mode, v_block, false);
}

double evolve_marginal_series_rate(const SpectralExpansion& expansion, double tau, SeriesMode mode,
                                   std::span<const Vec3> v_block) {
  return series(expansion, tau, mode, v_block, true);
}

double axis_density_from_point(const VelocityState& source, double tau, int J, double v11) {
  const auto& p = source.params;
  const int N = p.n_particles;
  const double c = std::sqrt(static_cast<double>(N) / (N - 1));
  const double x = c * (v11 - p.u0[0]);
  const double x_arr[1] = {x};
  const double weight = leading_density(x_arr, p);
  if (weight == 0.0) return 0.0;
  const auto w1 = leading_w(std::span<const Vec3>(source.v).first(1), p);
  const double xs[1] = {w1[0][0]};
  double sum = 0.0;
  for (int j = 0; j <= J; ++j) {
    const int m[1] = {j};
    const double coeff = chain_value(m, xs, p) / chain_norm(m, p);
    sum += coeff * chain_value(m, x_arr, p) * std::exp(-eigenvalue(j, N, p.eps0) * tau);
  }
  return c * sum * weight;
}

double axis_probability_from_point(const VelocityState& source, double tau, int J, double a, double b) {
  const auto& p = source.params;
  const int N = p.n_particles;
  const double half = std::sqrt(p.radius_squared() * (N - 1) / N);
  a = std::max(a, p.u0[0] - half);
  b = std::min(b, p.u0[0] + half);
  if (!(b > a)) return 0.0;
  static const GaussRule rule = gauss_legendre(32);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
    sum += rule.weights[i] * axis_density_from_point(source, tau, J, v);
  }
  return 0.5 * (b - a) * sum;
}

double marginal_consistency_check(const MultiIndex& idx, const std::array<int, 3>& tail, int n,
                                  const SystemParams& params) {
  if (n < 1 || static_cast<int>(idx.m.size()) != 3 * n) throw std::invalid_argument("marginal_consistency_check: bad index");
  const double T = params.temperature();
  const auto rule = gauss_hermite(40);
  // Plain dv weights for the Maxwellian-matched Gauss-Hermite nodes.
  std::vector<double> nodes(40), weights(40);
  const double s = std::sqrt(2.0 * T);
  for (int i = 0; i < 40; ++i) {
    nodes[i] = s * rule.nodes[i];
    weights[i] = s * std::exp(std::log(rule.weights[i]) + rule.nodes[i] * rule.nodes[i]);
  }
  std::vector<int> m_ext = idx.m;
  m_ext.insert(m_ext.end(), tail.begin(), tail.end());
  const MultiIndex ext = make_index(m_ext);
  const bool delta = tail[0] == 0 && tail[1] == 0 && tail[2] == 0;

  const double sigma = std::sqrt(T);
  const std::array<Vec3, 3> offsets{Vec3{0.0, 0.0, 0.0}, Vec3{0.7, -0.4, 1.1}, Vec3{-1.3, 0.2, -0.5}};
  double defect = 0.0;
  std::vector<Vec3> block(n + 1);
  for (const auto& off : offsets) {
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < 3; ++l) block[i][l] = params.u0[l] + sigma * off[(l + i) % 3];
    double integral = 0.0;
    for (int a = 0; a < 40; ++a)
      for (int b = 0; b < 40; ++b)
        for (int c = 0; c < 40; ++c) {
          block[n] = {params.u0[0] + nodes[a], params.u0[1] + nodes[b], params.u0[2] + nodes[c]};
          integral += weights[a] * weights[b] * weights[c] * marginal_eigenfunction_limit(ext, n + 1, params, block);
        }
    const double expected = delta ? marginal_eigenfunction_limit(idx, n, params, block) : 0.0;
    defect = std::max(defect, std::abs(integral - expected));
  }
  return defect;
}

}  // namespace kfp
