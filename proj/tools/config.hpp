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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kfp/io.hpp"

namespace kfp::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Every accepted key with its default value.
Json default_config();

/// Defaults, then the user document, then KFP_THREADS / KFP_OUTPUT_DIR,
/// then each `--set a.b=value` in order. Values in --set are parsed as JSON
/// and fall back to a plain string. Unknown keys and type mismatches throw
/// ConfigError.
Json resolve_config(const Json& user, const std::vector<std::string>& sets);

/// Reads and parses a JSON file; throws ConfigError.
Json load_config_file(const std::string& path);

}  // namespace kfp::cli
