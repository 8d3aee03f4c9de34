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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "app.hpp"
#include "kfp/diagnostics.hpp"
#include "kfp/fokker_planck.hpp"
#include "kfp/geometry.hpp"
#include "kfp/markov.hpp"
#include "kfp/specfun.hpp"
#include "kfp/spectral.hpp"

namespace py = pybind11;
using namespace kfp;

namespace {

py::array_t<double> to_array(const std::vector<Vec3>& v) {
  py::array_t<double> out({static_cast<py::ssize_t>(v.size()), py::ssize_t{3}});
  auto a = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (int k = 0; k < 3; ++k) a(i, k) = v[i][k];
  return out;
}

VelocityState to_state(py::array_t<double> v, const SystemParams& p) {
  auto a = v.unchecked<2>();
  if (a.shape(1) != 3 || a.shape(0) != p.n_particles) throw std::invalid_argument("velocities must have shape (N, 3)");
  VelocityState s{std::vector<Vec3>(a.shape(0)), p};
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (int k = 0; k < 3; ++k) s.v[i][k] = a(i, k);
  return s;
}

py::dict grid_dict(const DensityGrid& g) {
  py::dict d;
  py::list nodes, weights;
  for (std::size_t k = 0; k < g.dims(); ++k) {
    nodes.append(py::cast(g.axis(k).nodes));
    weights.append(py::cast(g.axis(k).weights));
  }
  d["nodes"] = nodes;
  d["weights"] = weights;
  d["values"] = py::cast(g.values());
  return d;
}

py::dict stats_dict(const EnsembleStats& s) {
  py::dict d;
  d["tau"] = s.tau;
  d["samples"] = s.sample_count;
  d["mean"] = s.mean;
  d["mean_stderr"] = s.mean_stderr;
  d["var"] = s.var;
  d["var_stderr"] = s.var_stderr;
  d["pair_cov"] = s.pair_cov;
  d["pair_cov_stderr"] = s.pair_cov_stderr;
  d["hist_v11"] = grid_dict(s.hist_v11);
  d["hist_pair"] = grid_dict(s.hist_pair);
  d["max_momentum_residual"] = s.max_momentum_residual;
  d["max_energy_residual"] = s.max_energy_residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_kfp, m) {
  m.doc() = "Brownian motion on the energy/momentum sphere and its kinetic limit.";

  py::class_<SystemParams>(m, "SystemParams")
      .def_readonly("n_particles", &SystemParams::n_particles)
      .def_readonly("u0", &SystemParams::u0)
      .def_readonly("e0", &SystemParams::e0)
      .def_readonly("eps0", &SystemParams::eps0)
      .def_property_readonly("temperature", &SystemParams::temperature)
      .def_property_readonly("radius_squared", &SystemParams::radius_squared)
      .def("__repr__", [](const SystemParams& p) {
        return "SystemParams(n_particles=" + std::to_string(p.n_particles) + ", eps0=" + format_double(p.eps0) + ")";
      });

  m.def("derive_params", &derive_params, py::arg("u0"), py::arg("e0"), py::arg("n_particles"));

  m.def(
      "sample_uniform",
      [](const SystemParams& p, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return to_array(sample_uniform(p, rng).v);
      },
      py::arg("params"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "pole_state", [](const SystemParams& p) { return to_array(pole_state(p).v); }, py::arg("params"));
  m.def(
      "manifold_residuals",
      [](py::array_t<double> v, const SystemParams& p) {
        const auto r = manifold_residuals(to_state(v, p));
        return py::make_tuple(r.momentum_norm(), r.energy);
      },
      py::arg("velocities"), py::arg("params"));

  m.def("eigenvalue", &eigenvalue, py::arg("j"), py::arg("n_particles"), py::arg("eps0"));
  m.def("limit_eigenvalue", &limit_eigenvalue, py::arg("j"), py::arg("eps0"));
  m.def(
      "degeneracy", [](int j, int n) { return py::int_(py::str(degeneracy(j, n).str())); }, py::arg("j"),
      py::arg("n_particles"));

  m.def("hermite", &hermite, py::arg("k"), py::arg("x"));
  m.def("assoc_legendre_qdim", &assoc_legendre_qdim, py::arg("s"), py::arg("r"), py::arg("t"), py::arg("q"));
  m.def("legendre_limit", &legendre_limit, py::arg("s"), py::arg("r"), py::arg("w"), py::arg("eps0"));
  m.def("asymptotic_error", &asymptotic_error, py::arg("s"), py::arg("r"), py::arg("w"), py::arg("eps0"), py::arg("p"),
        py::arg("n_particles"));

  m.def(
      "axis_density",
      [](py::array_t<double> source, const SystemParams& p, double tau, int J, double v11) {
        return axis_density_from_point(to_state(source, p), tau, J, v11);
      },
      py::arg("source"), py::arg("params"), py::arg("tau"), py::arg("J"), py::arg("v11"));

  m.def("mehler_kernel", &mehler_kernel, py::arg("w"), py::arg("v"), py::arg("u"), py::arg("T"), py::arg("t"));
  m.def(
      "moment_flow",
      [](double mass, const Vec3& p, double e, const Vec3& u, double T, double t) {
        const auto r = moment_flow({mass, p, e}, u, T, t);
        return py::make_tuple(r.m, r.p, r.e);
      },
      py::arg("m"), py::arg("p"), py::arg("e"), py::arg("u"), py::arg("T"), py::arg("t"));

  m.def(
      "simulate",
      [](const SystemParams& p, std::vector<double> checkpoints, std::int64_t n_traj, const std::string& scheme,
         double dtau, std::uint64_t seed, std::optional<py::array_t<double>> start, int bins, int threads) {
        EnsembleConfig cfg;
        cfg.params = p;
        cfg.checkpoints = std::move(checkpoints);
        cfg.n_traj = n_traj;
        if (scheme == "projected_em") {
          cfg.scheme = Scheme::ProjectedEM;
        } else if (scheme == "pair_rotation") {
          cfg.scheme = Scheme::PairRotation;
        } else {
          throw std::invalid_argument("scheme must be projected_em or pair_rotation");
        }
        cfg.dtau = dtau;
        cfg.seed = seed;
        if (start) cfg.initial = InitialCondition::at(to_state(*start, p));
        cfg.bins = bins;
        cfg.histogram3d = false;
        cfg.threads = threads;
        EnsembleResult res;
        {
          py::gil_scoped_release release;
          res = simulate_ensemble(cfg);
        }
        py::list out;
        for (const auto& s : res.stats) out.append(stats_dict(s));
        return out;
      },
      py::arg("params"), py::arg("checkpoints"), py::arg("n_traj") = 1000, py::arg("scheme") = "projected_em",
      py::arg("dtau") = 0.0, py::arg("seed") = 1, py::arg("start") = py::none(), py::arg("bins") = 64,
      py::arg("threads") = 0);

  m.def(
      "gap_estimate",
      [](std::vector<double> tau, std::vector<double> value, double limit, double expected_rate,
         std::vector<double> stderr_) {
        const auto f = gap_estimate(tau, value, limit, expected_rate, stderr_);
        return py::make_tuple(f.value, f.stderr_);
      },
      py::arg("tau"), py::arg("value"), py::arg("limit"), py::arg("expected_rate"),
      py::arg("stderr") = std::vector<double>{});
  m.def(
      "convergence_order",
      [](std::vector<double> scale, std::vector<double> error, double allowance) {
        const auto f = convergence_order(scale, error, allowance);
        return py::make_tuple(f.value, f.stderr_);
      },
      py::arg("scale"), py::arg("error"), py::arg("allowance") = 0.0);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "kfp");
        py::gil_scoped_release release;
        return cli::run_main(args);
      },
      py::arg("args"));

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    }
  });

  m.attr("__version__") = KFP_VERSION;
}
