/*
 * Copyright 2026 The mixsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mixsim/engine.hpp"

// Flat key=value configuration. Blank lines and lines starting with '#' are
// ignored; whitespace around keys and values is trimmed. Every field of
// SimulationConfig has exactly one key (see config_keys()).

namespace mixsim {

/// All recognized keys, in manifest order.
const std::vector<std::string>& config_keys();

/// Sets one key. Throws ConfigError naming the key when it is unknown or the
/// value does not parse.
void apply_setting(SimulationConfig& config, std::string_view key, std::string_view value);

/// Applies every setting of a key=value stream on top of `config`.
void load_config(std::istream& in, SimulationConfig& config);
void load_config_file(const std::string& path, SimulationConfig& config);

/// Writes every effective setting; loading the output reproduces `config`
/// exactly (doubles use round-trip formatting).
void write_manifest(std::ostream& out, const SimulationConfig& config);

}  // namespace mixsim
