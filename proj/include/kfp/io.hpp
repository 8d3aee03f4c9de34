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

#include <iosfwd>
#include <string>

#include "json.hpp"

namespace kfp {

using Json = nlohmann::ordered_json;

/// Serialises with every floating-point number printed to 17 significant
/// digits. Objects keep insertion order so output is byte-stable.
std::string dump_json(const Json& value, int indent = 2);
void write_json(const Json& value, std::ostream& out, int indent = 2);

/// %.17g
std::string format_double(double x);

}  // namespace kfp
