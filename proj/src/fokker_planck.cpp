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

#include "kfp/fokker_planck.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kfp/quadrature.hpp"

namespace kfp {

namespace {

double normal_pdf(double x, double mean, double var) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

using Matrix = std::vector<double>;  // row-major, square

// Operator on one Gauss-Hermite axis.
Matrix hermite_axis_operator(const GridAxis& axis, double u, double T, double a) {
  const int K = static_cast<int>(axis.size());
  const double ug = *axis.gauss_center;
  const double Tg = *axis.gauss_variance;
  const double s2 = T * (1.0 - a * a);
  const double D = s2 + a * a * Tg;
  const double sigma_star = std::sqrt(s2 * Tg / D);
  const auto inner = gauss_normal(K);

  // psi_k(z) = He_k(z) / sqrt(k!) at the grid nodes.
  std::vector<double> psi_nodes(static_cast<std::size_t>(K) * K);
  auto fill_psi = [K](double z, double* out) {
    out[0] = 1.0;
    if (K > 1) out[1] = z;
    for (int k = 1; k + 1 < K; ++k) out[k + 1] = (z * out[k] - std::sqrt(static_cast<double>(k)) * out[k - 1]) /
                                                 std::sqrt(static_cast<double>(k + 1));
  };
  for (int i = 0; i < K; ++i) fill_psi((axis.nodes[i] - ug) / std::sqrt(Tg), &psi_nodes[i * K]);

  Matrix A(static_cast<std::size_t>(K) * K, 0.0);
  std::vector<double> psi(K), kernel(K);
  for (int o = 0; o < K; ++o) {
    const double v = axis.nodes[o];
    const double prefactor = normal_pdf(v, u + a * (ug - u), D);
    const double mu_star = (a * (a * u + v - u) * Tg + ug * s2) / D;
    std::fill(kernel.begin(), kernel.end(), 0.0);
    for (int l = 0; l < K; ++l) {
      const double x = mu_star + sigma_star * inner.nodes[l];
      fill_psi((x - ug) / std::sqrt(Tg), psi.data());
      for (int i = 0; i < K; ++i) {
        double s = 0.0;
        for (int k = 0; k < K; ++k) s += psi[k] * psi_nodes[i * K + k];
        kernel[i] += inner.weights[l] * s;
      }
    }
    for (int i = 0; i < K; ++i) A[o * K + i] = prefactor * kernel[i] * axis.weights[i];
  }
  return A;
}

// Operator on any other axis: the axis quadrature applied to the kernel.
Matrix direct_axis_operator(const GridAxis& axis, double u, double T, double a) {
  const std::size_t K = axis.size();
  const double s2 = T * (1.0 - a * a);
  Matrix A(K * K);
  for (std::size_t o = 0; o < K; ++o)
    for (std::size_t i = 0; i < K; ++i)
      A[o * K + i] = axis.weights[i] * normal_pdf(axis.nodes[o], u + a * (axis.nodes[i] - u), s2);
  return A;
}

void apply_axis(DensityGrid& g, std::size_t k, const Matrix& A) {
  const std::size_t K = g.axis(k).size();
  const std::size_t stride = g.stride(k);
  const std::size_t block = stride * K;
  auto& vals = g.values();
  std::vector<double> line(K), out(K);
  for (std::size_t base = 0; base < vals.size(); base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      for (std::size_t i = 0; i < K; ++i) line[i] = vals[base + off + i * stride];
      for (std::size_t o = 0; o < K; ++o) {
        double s = 0.0;
        for (std::size_t i = 0; i < K; ++i) s += A[o * K + i] * line[i];
        out[o] = s;
      }
      for (std::size_t o = 0; o < K; ++o) vals[base + off + o * stride] = out[o];
    }
  }
}

void require_three_axes(const DensityGrid& f, const char* who) {
  if (f.dims() != 3) throw std::invalid_argument(std::string(who) + ": expected a one-particle grid");
}

void require_regular(const DensityGrid& f, const char* who) {
  for (const auto& a : f.axes())
    if (!a.regular || a.size() < 3) throw std::invalid_argument(std::string(who) + ": needs regular axes");
}

}  // namespace

double mehler_kernel(const Vec3& w, const Vec3& v, const Vec3& u, double T, double t) {
  if (!(t > 0.0)) throw std::domain_error("mehler_kernel: t must be positive");
  if (!(T > 0.0)) throw std::domain_error("mehler_kernel: T must be positive");
  const double a = std::exp(-t);
  const double var = T * (1.0 - a * a);
  double r2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double d = v[k] - u[k] - (w[k] - u[k]) * a;
    r2 += d * d;
  }
  return std::exp(-0.5 * r2 / var) * std::pow(2.0 * std::numbers::pi * var, -1.5);
}

DensityGrid propagate(const DensityGrid& f0, double t, const Vec3& u, double T) {
  if (!(t > 0.0)) throw std::domain_error("propagate: t must be positive");
  if (!(T > 0.0)) throw std::domain_error("propagate: T must be positive");
  const double a = std::exp(-t);
  DensityGrid f = f0;
  for (std::size_t k = 0; k < f.dims(); ++k) {
    const auto& axis = f.axis(k);
    const double uk = u[k % 3];
    const Matrix A = axis.gauss_center ? hermite_axis_operator(axis, uk, T, a) : direct_axis_operator(axis, uk, T, a);
    apply_axis(f, k, A);
  }
  return f;
}

DensityGrid propagate_master(const DensityGrid& f0, double tau, const SystemParams& params) {
  return propagate(f0, 1.5 * tau / params.eps0, params.u0, params.temperature());
}

MomentState functionals(const DensityGrid& f) {
  require_three_axes(f, "functionals");
  MomentState s;
  std::vector<double> x(3);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.point(i, x);
    const double wf = f.weight(i) * f[i];
    s.m += wf;
    for (int k = 0; k < 3; ++k) s.p[k] += wf * x[k];
    s.e += 0.5 * wf * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  }
  return s;
}

MomentState moment_flow(const MomentState& initial, const Vec3& u, double T, double t) {
  if (t < 0.0) throw std::domain_error("moment_flow: t must be nonnegative");
  const double a = std::exp(-t);
  MomentState s;
  s.m = initial.m;
  Vec3 dp{};
  for (int k = 0; k < 3; ++k) {
    dp[k] = initial.p[k] - initial.m * u[k];
    s.p[k] = initial.m * u[k] + dp[k] * a;
  }
  const double e_inf = 0.5 * (3.0 * T * initial.m + initial.m * dot(u, u));
  const double c = dot(u, dp);
  s.e = e_inf + (initial.e - e_inf - c) * a * a + c * a;
  return s;
}

namespace {

// div(D grad f + (m v - p) f) with wide centred differences, zero padding.
DensityGrid flux_rhs(const DensityGrid& f, double D, double m, const Vec3& p) {
  DensityGrid out = f;
  std::fill(out.values().begin(), out.values().end(), 0.0);
  const auto& vals = f.values();
  std::vector<double> flux(f.size());
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& axis = f.axis(k);
    const double h = axis.spacing();
    const std::size_t K = axis.size();
    const std::size_t stride = f.stride(k);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::size_t ik = (i / stride) % K;
      const double fp = ik + 1 < K ? vals[i + stride] : 0.0;
      const double fm = ik > 0 ? vals[i - stride] : 0.0;
      flux[i] = D * (fp - fm) / (2.0 * h) + (m * axis.nodes[ik] - p[k]) * vals[i];
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::size_t ik = (i / stride) % K;
      const double jp = ik + 1 < K ? flux[i + stride] : 0.0;
      const double jm = ik > 0 ? flux[i - stride] : 0.0;
      out[i] += (jp - jm) / (2.0 * h);
    }
  }
  return out;
}

}  // namespace

DensityGrid nonlinear_rhs(const DensityGrid& f) {
  require_three_axes(f, "nonlinear_rhs");
  require_regular(f, "nonlinear_rhs");
  const auto s = functionals(f);
  const double D = (2.0 * s.e * s.m - dot(s.p, s.p)) / 3.0;
  return flux_rhs(f, D, s.m, s.p);
}

DensityGrid linear_rhs(const DensityGrid& f, const Vec3& u, double eps0) {
  require_three_axes(f, "linear_rhs");
  require_regular(f, "linear_rhs");
  return flux_rhs(f, 2.0 * eps0 / 3.0, 1.0, u);
}

double maxwellian(const SystemParams& params, const Vec3& v) {
  const double T = params.temperature();
  double r2 = 0.0;
  for (int k = 0; k < 3; ++k) r2 += (v[k] - params.u0[k]) * (v[k] - params.u0[k]);
  return std::exp(-0.5 * r2 / T) * std::pow(2.0 * std::numbers::pi * T, -1.5);
}

namespace {

double log_maxwellian(const SystemParams& params, std::span<const double> x) {
  const double T = params.temperature();
  double r2 = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    const double d = x[a] - params.u0[a % 3];
    r2 += d * d;
  }
  return -0.5 * r2 / T - 0.5 * static_cast<double>(x.size()) * std::log(2.0 * std::numbers::pi * T);
}

}  // namespace

DensityGrid maxwellian_grid(const SystemParams& params, std::vector<GridAxis> axes) {
  if (axes.size() % 3 != 0 || axes.empty()) throw std::invalid_argument("maxwellian_grid: need 3n axes");
  const int n = static_cast<int>(axes.size() / 3);
  DensityGrid g(std::move(axes), n);
  g.fill([&](std::span<const double> x) { return std::exp(log_maxwellian(params, x)); });
  return g;
}

double relative_entropy(const DensityGrid& f, const SystemParams& params) {
  if (f.dims() % 3 != 0 || f.dims() == 0) throw std::invalid_argument("relative_entropy: need 3n axes");
  std::vector<double> x(f.dims());
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = f[i];
    if (v < -1e-12) throw std::domain_error("relative_entropy: negative density value");
    if (v <= 0.0) continue;
    f.point(i, x);
    sum += f.weight(i) * v * (std::log(std::max(v, 1e-300)) - log_maxwellian(params, x));
  }
  return -sum;
}

DensityGrid hierarchy_rhs(const DensityGrid& f, HierarchyMode mode, const SystemParams& params) {
  require_regular(f, "hierarchy_rhs");
  const std::size_t d = f.dims();
  if (d % 3 != 0 || d == 0) throw std::invalid_argument("hierarchy_rhs: need 3n axes");
  const int n = static_cast<int>(d / 3);
  const int N = params.n_particles;
  if (mode == HierarchyMode::FiniteN && N <= n + 1) throw std::invalid_argument("hierarchy_rhs: need N > n + 1");
  const double eps = params.eps0;
  const double two_n_eps = 2.0 * N * eps;

  std::vector<double> h(d);
  std::vector<std::size_t> stride(d), size(d);
  for (std::size_t a = 0; a < d; ++a) {
    h[a] = f.axis(a).spacing();
    stride[a] = f.stride(a);
    size[a] = f.axis(a).size();
  }
  DensityGrid out = f;
  std::fill(out.values().begin(), out.values().end(), 0.0);
  const auto& F = f.values();
  std::vector<double> grad(d), hess(d * d), y(d);
  for (std::size_t i = 0; i < f.size(); ++i) {
    bool interior = true;
    for (std::size_t a = 0; a < d && interior; ++a) {
      const std::size_t ia = (i / stride[a]) % size[a];
      interior = ia > 0 && ia + 1 < size[a];
      y[a] = f.axis(a).nodes[ia] - params.u0[a % 3];
    }
    if (!interior) continue;
    for (std::size_t a = 0; a < d; ++a) {
      const double fp = F[i + stride[a]], fm = F[i - stride[a]];
      grad[a] = (fp - fm) / (2.0 * h[a]);
      hess[a * d + a] = (fp - 2.0 * F[i] + fm) / (h[a] * h[a]);
      for (std::size_t b = a + 1; b < d; ++b) {
        const double fpp = F[i + stride[a] + stride[b]], fpm = F[i + stride[a] - stride[b]];
        const double fmp = F[i - stride[a] + stride[b]], fmm = F[i - stride[a] - stride[b]];
        hess[a * d + b] = hess[b * d + a] = (fpp - fpm - fmp + fmm) / (4.0 * h[a] * h[b]);
      }
    }
    double lap = 0.0, y_grad = 0.0, yhy = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      lap += hess[a * d + a];
      y_grad += y[a] * grad[a];
      for (std::size_t b = 0; b < d; ++b) yhy += y[a] * y[b] * hess[a * d + b];
    }
    double rhs = 0.0;
    if (mode == HierarchyMode::Limit) {
      rhs = lap + 1.5 / eps * (static_cast<double>(d) * F[i] + y_grad);
    } else {
      // Same-component second derivatives summed over particle pairs.
      double momentum_term = 0.0;
      for (int k = 0; k < 3; ++k)
        for (int p1 = 0; p1 < n; ++p1)
          for (int p2 = 0; p2 < n; ++p2) momentum_term += hess[(3 * p1 + k) * d + (3 * p2 + k)];
      const double a_n = (3.0 * (N - n) - 5.0) / two_n_eps;
      rhs = lap - momentum_term / N - ((static_cast<double>(d) + 1.0) * y_grad + yhy) / two_n_eps +
            a_n * (static_cast<double>(d) * F[i] + y_grad);
    }
    out[i] = rhs;
  }
  return out;
}

double generator_residual(const DensityGrid& f, const DensityGrid& dfdtau, HierarchyMode mode,
                          const SystemParams& params) {
  if (!f.same_axes(dfdtau)) throw std::invalid_argument("generator_residual: grids differ");
  require_regular(f, "generator_residual");
  const double h_max = 0.1 * std::sqrt(2.0 * params.eps0 / 3.0);
  for (const auto& a : f.axes())
    if (a.spacing() > h_max * (1.0 + 1e-12)) throw std::invalid_argument("generator_residual: grid too coarse");
  const auto rhs = hierarchy_rhs(f, mode, params);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    bool interior = true;
    for (std::size_t a = 0; a < f.dims() && interior; ++a) {
      const std::size_t ia = (i / f.stride(a)) % f.axis(a).size();
      interior = ia > 0 && ia + 1 < f.axis(a).size();
    }
    if (interior) worst = std::max(worst, std::abs(dfdtau[i] - rhs[i]));
  }
  return worst;
}

}  // namespace kfp
