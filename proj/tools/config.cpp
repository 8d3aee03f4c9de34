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

#include "config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace kfp::cli {

Json default_config() {
  return Json::parse(R"({
  "model": {"n_particles": 2, "u0": [0.0, 0.0, 0.0], "e0": 1.5},
  "markov": {
    "scheme": "projected_em",
    "n_traj": 1000,
    "checkpoints": [0.2, 1.0],
    "dtau": 0.0,
    "seed": 1,
    "initial": "uniform",
    "initial_point": [],
    "bins": 64,
    "pair_bins": 12,
    "histogram3d": false,
    "trace_count": 4,
    "reproject": true,
    "residuals_every_step": true
  },
  "spectral": {
    "J": 8,
    "n": 1,
    "axis_J": 20,
    "tau": [0.2, 1.0],
    "initial_point": [],
    "bins": 48,
    "eigen_j_max": 20,
    "consistency_j": 4
  },
  "fokker_planck": {
    "t": [0.1, 1.0, 5.0],
    "shift": [1.0, -0.5, 0.25],
    "temperature_ratio": 1.0,
    "nodes": 24,
    "entropy_t_max": 5.0,
    "entropy_checkpoints": 50
  },
  "specfun": {
    "n_particles": [400, 1600, 6400],
    "s_max": 4,
    "w_max": 2.0,
    "w_points": 9,
    "p": [3, 4]
  },
  "diagnostics": {
    "input_dir": "",
    "conservation_tol": 1e-10,
    "l1_tol": 0.02,
    "moment_tol": 1e-6,
    "mass_tol": 1e-8,
    "entropy_rate": 2.0,
    "entropy_rate_rel_tol": 0.05,
    "asymptotic_slope": -0.5,
    "asymptotic_slope_tol": 0.1,
    "consistency_tol": 1e-8,
    "gap_rel_tol": 0.05
  },
  "cli": {"output_dir": "kfp_out", "threads": 0}
})");
}

namespace {

bool compatible(const Json& def, const Json& v) {
  if (def.is_number_integer())
    return v.is_number_integer() || (v.is_number_float() && v.get<double>() == std::floor(v.get<double>()) &&
                                     std::abs(v.get<double>()) < 9.0e15);
  if (def.is_number()) return v.is_number();
  if (def.is_string()) return v.is_string();
  if (def.is_boolean()) return v.is_boolean();
  if (def.is_array()) return v.is_array();
  if (def.is_object()) return v.is_object();
  return false;
}

void merge(Json& target, const Json& src, const std::string& path) {
  if (!src.is_object()) throw ConfigError("config: " + (path.empty() ? std::string("document") : path) + " must be an object");
  for (auto it = src.begin(); it != src.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (!target.contains(it.key())) throw ConfigError("config: unknown key '" + key + "'");
    Json& slot = target[it.key()];
    if (slot.is_object()) {
      merge(slot, it.value(), key);
    } else {
      if (!compatible(slot, it.value())) throw ConfigError("config: wrong type for '" + key + "'");
      slot = slot.is_number_integer() ? Json(static_cast<std::int64_t>(it.value().get<double>())) : it.value();
    }
  }
}

void set_path(Json& config, const std::string& dotted, const Json& value) {
  Json patch = value;
  std::string rest = dotted;
  std::vector<std::string> parts;
  for (std::size_t pos; (pos = rest.find('.')) != std::string::npos; rest = rest.substr(pos + 1))
    parts.push_back(rest.substr(0, pos));
  parts.push_back(rest);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (it->empty()) throw ConfigError("config: malformed key '" + dotted + "'");
    Json wrap = Json::object();
    wrap[*it] = std::move(patch);
    patch = std::move(wrap);
  }
  merge(config, patch, "");
}

}  // namespace

Json resolve_config(const Json& user, const std::vector<std::string>& sets) {
  Json config = default_config();
  merge(config, user, "");
  if (const char* t = std::getenv("KFP_THREADS")) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(t, &used);
      if (used != std::string(t).size() || n < 0) throw std::invalid_argument(t);
      config["cli"]["threads"] = n;
    } catch (const std::exception&) {
      throw ConfigError(std::string("config: KFP_THREADS is not a thread count: ") + t);
    }
  }
  if (const char* d = std::getenv("KFP_OUTPUT_DIR")) config["cli"]["output_dir"] = std::string(d);
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + s + "'");
    const std::string key = s.substr(0, eq), text = s.substr(eq + 1);
    Json value = Json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    set_path(config, key, value);
  }
  return config;
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Json j = Json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) throw ConfigError("config: " + path + " is not valid JSON");
  return j;
}

}  // namespace kfp::cli
