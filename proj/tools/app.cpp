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

#include "app.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "kfp/diagnostics.hpp"
#include "kfp/fokker_planck.hpp"
#include "kfp/geometry.hpp"
#include "kfp/markov.hpp"
#include "kfp/specfun.hpp"
#include "kfp/spectral.hpp"

#ifndef KFP_VERSION
#define KFP_VERSION "0.0.0"
#endif

namespace kfp::cli {

namespace fs = std::filesystem;

namespace {

struct Run {
  Json config;
  fs::path out;
  std::vector<Report> checks;
  Json outputs = Json::array();

  void check(std::string metric, double value, double stderr_, double tolerance, bool pass) {
    checks.push_back({std::move(metric), value, stderr_, tolerance, pass && std::isfinite(value)});
  }

  void check_below(std::string metric, double value, double tolerance) {
    check(std::move(metric), value, 0.0, tolerance, value <= tolerance);
  }

  std::ofstream open(const std::string& name, std::vector<std::string> columns) {
    std::ofstream f(out / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (out / name).string());
    Json entry;
    entry["file"] = name;
    entry["columns"] = columns;
    outputs.push_back(entry);
    return f;
  }

  void write_table(const std::string& name, const std::vector<std::string>& columns,
                   const std::vector<std::vector<double>>& rows) {
    auto f = open(name, columns);
    for (std::size_t i = 0; i < columns.size(); ++i) f << (i ? "," : "") << columns[i];
    f << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << format_double(row[i]);
      f << '\n';
    }
  }

  void write_grid(const std::string& name, const DensityGrid& g) {
    auto f = open(name, {"grid"});
    write_csv(g, f);
  }

  void write_text(const std::string& name, const std::string& text) {
    auto f = open(name, {});
    f << text << '\n';
  }
};

Vec3 vec3(const Json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("config: " + key + " must be a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

SystemParams params_of(const Json& c) {
  const auto& m = c["model"];
  return derive_params(vec3(m["u0"], "model.u0"), m["e0"].get<double>(), m["n_particles"].get<int>());
}

VelocityState point_of(const Json& j, const SystemParams& params, const std::string& key) {
  if (j.empty()) return pole_state(params);
  if (!j.is_array() || static_cast<int>(j.size()) != params.n_particles)
    throw ConfigError("config: " + key + " must list one 3-vector per particle");
  VelocityState s{{}, params};
  for (const auto& v : j) s.v.push_back(vec3(v, key));
  if (!on_manifold(s)) throw ConfigError("config: " + key + " violates the momentum/energy constraints");
  return s;
}

std::vector<double> doubles(const Json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("config: " + key + " must be an array");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError("config: " + key + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::string tag(double x) { return format_double(x); }

// ---------------------------------------------------------------------------

void simulate(Run& run) {
  const auto& c = run.config;
  const auto& mk = c["markov"];
  EnsembleConfig ec;
  ec.params = params_of(c);
  const auto scheme = mk["scheme"].get<std::string>();
  if (scheme == "projected_em") {
    ec.scheme = Scheme::ProjectedEM;
  } else if (scheme == "pair_rotation") {
    ec.scheme = Scheme::PairRotation;
  } else {
    throw ConfigError("config: markov.scheme must be projected_em or pair_rotation");
  }
  ec.n_traj = mk["n_traj"].get<std::int64_t>();
  ec.checkpoints = doubles(mk["checkpoints"], "markov.checkpoints");
  ec.dtau = mk["dtau"].get<double>();
  if (mk["seed"].get<std::int64_t>() < 0) throw ConfigError("config: markov.seed must be non-negative");
  ec.seed = mk["seed"].get<std::uint64_t>();
  const auto initial = mk["initial"].get<std::string>();
  if (initial == "point") {
    ec.initial = InitialCondition::at(point_of(mk["initial_point"], ec.params, "markov.initial_point"));
  } else if (initial != "uniform") {
    throw ConfigError("config: markov.initial must be uniform or point");
  }
  ec.bins = mk["bins"].get<int>();
  ec.pair_bins = mk["pair_bins"].get<int>();
  ec.histogram3d = mk["histogram3d"].get<bool>();
  ec.threads = c["cli"]["threads"].get<int>();
  ec.trace_count = mk["trace_count"].get<int>();
  ec.reproject = mk["reproject"].get<bool>();
  ec.residuals_every_step = mk["residuals_every_step"].get<bool>();
  if (ec.n_traj < 1 || ec.bins < 1 || ec.pair_bins < 1 || ec.trace_count < 0 || ec.dtau < 0.0)
    throw ConfigError("config: markov counts must be positive and dtau non-negative");

  const auto res = simulate_ensemble(ec);

  std::vector<std::vector<double>> rows;
  for (const auto& s : res.stats) {
    std::vector<double> r{s.tau, static_cast<double>(s.sample_count)};
    for (const auto* a : {&s.mean, &s.mean_stderr, &s.var, &s.var_stderr})
      for (int k = 0; k < 3; ++k) r.push_back((*a)[k]);
    for (int k = 0; k < 3; ++k) r.push_back(s.pair_cov[k][k]);
    for (int k = 0; k < 3; ++k) r.push_back(s.pair_cov_stderr[k][k]);
    r.push_back(s.max_momentum_residual);
    r.push_back(s.max_energy_residual);
    rows.push_back(std::move(r));
  }
  run.write_table("moments.csv",
                  {"tau", "samples", "mean_x", "mean_y", "mean_z", "mean_stderr_x", "mean_stderr_y", "mean_stderr_z",
                   "var_x", "var_y", "var_z", "var_stderr_x", "var_stderr_y", "var_stderr_z", "cov_xx", "cov_yy",
                   "cov_zz", "cov_stderr_xx", "cov_stderr_yy", "cov_stderr_zz", "max_momentum_residual",
                   "max_energy_residual"},
                  rows);

  std::vector<std::vector<double>> chaos_rows;
  for (std::size_t i = 0; i < res.stats.size(); ++i) {
    const auto& s = res.stats[i];
    const auto idx = std::to_string(i);
    run.write_grid("marginal_v11_" + idx + ".csv", s.hist_v11);
    run.write_grid("pair_" + idx + ".csv", s.hist_pair);
    if (ec.histogram3d) run.write_grid("marginal_v1_" + idx + ".csv", s.hist_v1);
    const auto m = chaos_metric(s);
    chaos_rows.push_back({s.tau, m.l1_product_defect, m.pair_cov[0][0], m.pair_cov[1][1], m.pair_cov[2][2],
                          static_cast<double>(s.outside_pair)});
  }
  run.write_table("chaos.csv", {"tau", "l1_product_defect", "cov_xx", "cov_yy", "cov_zz", "outside_pair"},
                  chaos_rows);

  Json cons;
  cons["max_momentum_residual"] = res.stats.back().max_momentum_residual;
  cons["max_energy_residual"] = res.stats.back().max_energy_residual;
  cons["dtau"] = res.dtau;
  cons["steps"] = res.total_steps;
  if (!res.traces.empty() && res.traces.front().tau.size() >= 2) {
    const auto cr = conservation_report(res.traces);
    cons["max_momentum_drift"] = cr.max_momentum_drift;
    cons["max_energy_drift"] = cr.max_energy_drift;
    Json per = Json::array();
    for (std::size_t i = 0; i < res.traces.size(); ++i)
      per.push_back({{"trajectory", res.traces[i].index},
                     {"momentum_drift", cr.momentum_drift[i]},
                     {"energy_drift", cr.energy_drift[i]}});
    cons["trajectories"] = per;
  }
  run.write_text("conservation.json", dump_json(cons));

  if (!res.traces.empty()) {
    std::vector<std::vector<double>> trace_rows;
    for (const auto& t : res.traces)
      for (std::size_t i = 0; i < t.tau.size(); ++i)
        trace_rows.push_back({static_cast<double>(t.index), t.tau[i], t.momentum_residual[i], t.energy_residual[i]});
    run.write_table("traces.csv", {"trajectory", "tau", "momentum_residual", "energy_residual"}, trace_rows);
  }

  const double tol = c["diagnostics"]["conservation_tol"].get<double>();
  run.check_below("momentum_residual", res.stats.back().max_momentum_residual, tol);
  run.check_below("energy_residual", res.stats.back().max_energy_residual, tol);
  if (ec.params.n_particles == 2 && ec.initial.kind == InitialCondition::Kind::Point) {
    const int J = c["spectral"]["axis_J"].get<int>();
    const double l1_tol = c["diagnostics"]["l1_tol"].get<double>();
    for (const auto& s : res.stats) {
      if (s.tau <= 0.0) continue;
      run.check_below("oracle_l1[tau=" + tag(s.tau) + "]", axis_oracle_l1(s.hist_v11, ec.initial.point, s.tau, J),
                      l1_tol);
    }
  }
}

// ---------------------------------------------------------------------------

void spectral(Run& run) {
  const auto& c = run.config;
  const auto& sp = c["spectral"];
  const auto params = params_of(c);
  const auto point = point_of(sp["initial_point"], params, "spectral.initial_point");
  const int J = sp["J"].get<int>(), n = sp["n"].get<int>(), axis_J = sp["axis_J"].get<int>();
  const int bins = sp["bins"].get<int>(), j_max = sp["eigen_j_max"].get<int>();
  const int cj = sp["consistency_j"].get<int>();
  if (J < 0 || axis_J < 0 || j_max < 0 || cj < 0 || bins < 1) throw ConfigError("config: spectral degrees must be non-negative");
  if (n < 1 || n >= params.n_particles) throw ConfigError("config: spectral.n must be in [1, N)");

  std::vector<std::vector<double>> eig;
  std::size_t mismatches = 0;
  for (int j = 0; j <= j_max; ++j) {
    const auto d = degeneracy(j, params.n_particles);
    eig.push_back({static_cast<double>(j), eigenvalue(j, params.n_particles, params.eps0),
                   limit_eigenvalue(j, params.eps0), d.convert_to<double>()});
    if (eigenvalue(j, 2, params.eps0) != j * (j + 1.0) / (4.0 * params.eps0)) ++mismatches;
    if (degeneracy(j, 2) != 2 * j + 1) ++mismatches;
  }
  run.write_table("eigenvalues.csv", {"j", "eigenvalue", "limit_eigenvalue", "degeneracy"}, eig);
  run.check_below("two_particle_spectrum_mismatches", static_cast<double>(mismatches), 0.0);

  const auto [lo, hi] = histogram_range(params, 0);
  const double width = (hi - lo) / bins;
  std::vector<std::vector<double>> axis_rows;
  for (double tau : doubles(sp["tau"], "spectral.tau")) {
    if (!(tau > 0.0)) throw ConfigError("config: spectral.tau entries must be positive");
    for (int b = 0; b < bins; ++b) {
      const double a = lo + b * width, z = a + width;
      const double prob = axis_probability_from_point(point, tau, axis_J, a, z);
      axis_rows.push_back({tau, a, z, prob, prob / width});
    }
  }
  run.write_table("axis_density.csv", {"tau", "lo", "hi", "probability", "density"}, axis_rows);

  run.write_text("expansion.json", expansion_from_point(point, n, J).to_json());

  double defect = 0.0;
  for (const auto& idx : multi_index_range(cj, 1)) {
    for (const auto& tail : multi_index_range(cj - idx.j, 1)) {
      const std::array<int, 3> t{tail.m[0], tail.m[1], tail.m[2]};
      defect = std::max(defect, marginal_consistency_check(idx, t, 1, params));
    }
  }
  run.check_below("marginal_consistency_defect", defect, c["diagnostics"]["consistency_tol"].get<double>());
}

// ---------------------------------------------------------------------------

void kinetic(Run& run) {
  const auto& c = run.config;
  const auto& fp = c["fokker_planck"];
  const auto& dg = c["diagnostics"];
  const auto params = params_of(c);
  const double T = params.temperature();
  const Vec3 shift = vec3(fp["shift"], "fokker_planck.shift");
  const double ratio = fp["temperature_ratio"].get<double>();
  const int nodes = fp["nodes"].get<int>();
  const int n_ent = fp["entropy_checkpoints"].get<int>();
  const double t_max = fp["entropy_t_max"].get<double>();
  if (!(ratio > 0.0) || nodes < 2 || n_ent < 10 || !(t_max > 0.0))
    throw ConfigError("config: fokker_planck values out of range");

  Vec3 start, centre;
  for (int k = 0; k < 3; ++k) {
    start[k] = params.u0[k] + shift[k];
    centre[k] = params.u0[k] + 0.5 * shift[k];
  }
  std::vector<GridAxis> axes;
  for (int k = 0; k < 3; ++k) axes.push_back(gauss_hermite_axis(centre[k], T, nodes));
  DensityGrid f0(axes, 1);
  const double var = ratio * T;
  f0.fill([&](std::span<const double> x) {
    double r2 = 0.0;
    for (int k = 0; k < 3; ++k) r2 += (x[k] - start[k]) * (x[k] - start[k]);
    return std::exp(-0.5 * r2 / var) * std::pow(2.0 * M_PI * var, -1.5);
  });
  const auto m0 = functionals(f0);

  std::vector<std::vector<double>> rows;
  double moment_err = 0.0, mass_err = std::abs(m0.m - 1.0);
  for (double t : doubles(fp["t"], "fokker_planck.t")) {
    if (!(t > 0.0)) throw ConfigError("config: fokker_planck.t entries must be positive");
    const auto m = functionals(propagate(f0, t, params.u0, T));
    const auto e = moment_flow(m0, params.u0, T, t);
    rows.push_back({t, m.m, m.p[0], m.p[1], m.p[2], m.e, e.m, e.p[0], e.p[1], e.p[2], e.e});
    for (int k = 0; k < 3; ++k) moment_err = std::max(moment_err, std::abs(m.p[k] - e.p[k]));
    moment_err = std::max(moment_err, std::abs(m.e - e.e));
    mass_err = std::max(mass_err, std::abs(m.m - 1.0));
  }
  run.write_table("kinetic_moments.csv",
                  {"t", "m", "p_x", "p_y", "p_z", "e", "m_exact", "p_x_exact", "p_y_exact", "p_z_exact", "e_exact"},
                  rows);
  run.check_below("moment_flow_error", moment_err, dg["moment_tol"].get<double>());
  run.check_below("mass_defect", mass_err, dg["mass_tol"].get<double>());

  std::vector<double> ts, entropy;
  std::vector<std::vector<double>> ent_rows;
  for (int i = 1; i <= n_ent; ++i) {
    const double t = t_max * i / n_ent;
    ts.push_back(t);
    entropy.push_back(relative_entropy(propagate(f0, t, params.u0, T), params));
    ent_rows.push_back({t, entropy.back()});
  }
  run.write_table("entropy.csv", {"t", "relative_entropy"}, ent_rows);
  double worst_drop = -INFINITY;
  for (std::size_t i = 1; i < entropy.size(); ++i) worst_drop = std::max(worst_drop, entropy[i - 1] - entropy[i]);
  run.check_below("entropy_max_decrease", worst_drop, 0.0);

  const double target = dg["entropy_rate"].get<double>();
  const double rel = dg["entropy_rate_rel_tol"].get<double>();
  const std::size_t half = ts.size() / 2;
  try {
    const auto fit = gap_estimate(std::span(ts).subspan(half), std::span(entropy).subspan(half), 0.0, target);
    run.check("entropy_decay_rate", fit.value, fit.stderr_, rel * target, std::abs(fit.value - target) <= rel * target);
  } catch (const std::exception&) {
    run.check("entropy_decay_rate", NAN, 0.0, rel * target, false);
  }
}

// ---------------------------------------------------------------------------

void asymptotics(Run& run) {
  const auto& c = run.config;
  const auto& sf = c["specfun"];
  const auto& dg = c["diagnostics"];
  const double eps0 = params_of(c).eps0;
  const int s_max = sf["s_max"].get<int>(), w_points = sf["w_points"].get<int>();
  const double w_max = sf["w_max"].get<double>();
  if (s_max < 0 || w_points < 1 || w_max < 0.0) throw ConfigError("config: specfun values out of range");
  std::vector<int> ps;
  for (const auto& p : sf["p"]) ps.push_back(p.get<int>());
  std::vector<double> ns, errs;
  std::vector<std::vector<double>> rows;
  for (const auto& nj : sf["n_particles"]) {
    const long long N = nj.get<long long>();
    double worst = 0.0;
    for (int p : ps)
      for (int s = 0; s <= s_max; ++s)
        for (int r = 0; r <= s; ++r)
          for (int i = 0; i < w_points; ++i) {
            const double w = w_points == 1 ? w_max : -w_max + 2.0 * w_max * i / (w_points - 1);
            worst = std::max(worst, asymptotic_error(s, r, w, eps0, p, N));
          }
    ns.push_back(static_cast<double>(N));
    errs.push_back(worst);
    rows.push_back({static_cast<double>(N), worst});
  }
  run.write_table("asymptotics.csv", {"n_particles", "max_error"}, rows);
  const double target = dg["asymptotic_slope"].get<double>(), tol = dg["asymptotic_slope_tol"].get<double>();
  try {
    const auto fit = convergence_order(ns, errs);
    run.check("asymptotic_slope", fit.value, fit.stderr_, tol, std::abs(fit.value - target) <= tol);
  } catch (const std::exception&) {
    run.check("asymptotic_slope", NAN, 0.0, tol, false);
  }
}

// ---------------------------------------------------------------------------

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("report: missing column " + name);
    const auto k = static_cast<std::size_t>(it - header.begin());
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.at(k));
    return out;
  }
};

Table read_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("report: cannot open " + path.string());
  Table t;
  std::string line, cell;
  if (!std::getline(in, line)) throw ConfigError("report: empty file " + path.string());
  std::stringstream hs(line);
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("report: malformed number in " + path.string());
      }
    }
    if (row.size() != t.header.size()) throw ConfigError("report: ragged row in " + path.string());
    t.rows.push_back(std::move(row));
  }
  return t;
}

void report(Run& run) {
  const auto& c = run.config;
  const auto& dg = c["diagnostics"];
  std::string dir = dg["input_dir"].get<std::string>();
  if (dir.empty()) dir = c["cli"]["output_dir"].get<std::string>();
  // the model of the run that produced the moments takes precedence
  auto params = params_of(c);
  if (std::ifstream mf(fs::path(dir) / "manifest.json"); mf) {
    const auto m = Json::parse(mf, nullptr, false);
    if (!m.is_discarded() && m.contains("config") && m["config"].contains("model"))
      params = params_of(m["config"]);
  }
  const auto table = read_table(fs::path(dir) / "moments.csv");
  const auto tau = table.column("tau");
  const auto mean = table.column("mean_x");
  const auto err = table.column("mean_stderr_x");
  const int N = params.n_particles;
  const double expected = 3.0 * (N - 1) / (2.0 * params.eps0 * N);
  const double tol = dg["gap_rel_tol"].get<double>() * expected;
  Json out = Json::array();
  try {
    const auto fit = gap_estimate(tau, mean, params.u0[0], expected, err);
    run.check("mean_velocity_rate", fit.value, fit.stderr_, tol, std::abs(fit.value - expected) <= tol);
  } catch (const std::exception& e) {
    std::cerr << "report: gap fit failed: " << e.what() << '\n';
    run.check("mean_velocity_rate", NAN, 0.0, tol, false);
  }
  for (const auto& r : run.checks) out.push_back(r.to_json());
  run.write_text("report.json", dump_json(out));
}

}  // namespace

int run_command(const std::string& command, const Json& config, bool check, bool quiet) {
  const auto start = std::chrono::steady_clock::now();
  Run run;
  run.config = config;
  try {
    run.out = fs::path(config["cli"]["output_dir"].get<std::string>());
    fs::create_directories(run.out);
    if (command == "simulate") {
      simulate(run);
    } else if (command == "spectral") {
      spectral(run);
    } else if (command == "kinetic") {
      kinetic(run);
    } else if (command == "asymptotics") {
      asymptotics(run);
    } else if (command == "report") {
      report(run);
    } else {
      throw ConfigError("unknown subcommand " + command);
    }
  } catch (const ConfigError& e) {
    std::cerr << "kfp: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "kfp: invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Json::exception& e) {
    std::cerr << "kfp: invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "kfp: " << e.what() << '\n';
    return kExitRuntime;
  }

  bool all_pass = true;
  Json checks = Json::array();
  for (const auto& r : run.checks) {
    checks.push_back(r.to_json());
    all_pass = all_pass && r.pass;
  }
  Json manifest;
  manifest["version"] = KFP_VERSION;
  manifest["command"] = command;
  manifest["seed"] = config["markov"]["seed"];
  manifest["config"] = config;
  manifest["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest["checks"] = checks;
  manifest["all_pass"] = all_pass;
  manifest["outputs"] = run.outputs;
  std::ofstream(run.out / "manifest.json", std::ios::binary) << dump_json(manifest) << '\n';

  if (!quiet)
    for (const auto& r : run.checks)
      std::cout << (r.pass ? "pass " : "FAIL ") << r.metric << " = " << format_double(r.value) << '\n';
  return check && !all_pass ? kExitCheck : kExitOk;
}

int run_main(int argc, const char* const* argv) {
  CLI::App app{"kinetic-fp batch runner"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> sets;
  bool check = false, quiet = false;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"simulate", "Monte Carlo ensemble on the constraint sphere"},
      {"spectral", "eigenvalues, axis densities and expansions"},
      {"kinetic", "Mehler propagation, moments and entropy"},
      {"asymptotics", "large-N error of the one-axis harmonics"},
      {"report", "diagnostics over saved simulate outputs"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("config", config_path, "JSON config file");
    sub->add_option("--set", sets, "override, e.g. markov.n_traj=100")->allow_extra_args(false);
    sub->add_flag("--check", check, "exit 3 when a check fails");
    sub->add_flag("--quiet", quiet, "do not print check results");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  Json config;
  try {
    config = resolve_config(config_path.empty() ? Json::object() : load_config_file(config_path), sets);
  } catch (const ConfigError& e) {
    std::cerr << "kfp: " << e.what() << '\n';
    return kExitConfig;
  }
  return run_command(command, config, check, quiet);
}

int run_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace kfp::cli
