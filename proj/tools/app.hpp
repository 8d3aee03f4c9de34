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

#include <string>
#include <vector>

#include "kfp/io.hpp"

namespace kfp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCheck = 3;

/// Runs one subcommand on a resolved config and writes its artifacts and
/// manifest.json into cli.output_dir. Returns the process exit code.
int run_command(const std::string& command, const Json& config, bool check, bool quiet = false);

/// Full command line entry point: kfp <subcommand> [config.json]
/// [--set key=value]... [--check] [--quiet].
int run_main(int argc, const char* const* argv);
int run_main(const std::vector<std::string>& args);

}  // namespace kfp::cli
