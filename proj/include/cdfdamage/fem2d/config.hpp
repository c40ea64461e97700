/*******************************************************************************
 * Copyright 2026 The cdfdamage Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/
#ifndef CDFDAMAGE_FEM2D_CONFIG_HPP
#define CDFDAMAGE_FEM2D_CONFIG_HPP

#include <iosfwd>
#include <string>

#include "cdfdamage/fem2d/solver.hpp"

namespace cdfdamage::fem2d {

// INI-style SENT configuration with sections material, law, mesh, loading,
// solver and output. Missing keys keep their defaults; unknown sections or
// keys and malformed values throw ConfigError naming "section.key".
SentConfig parse_sent_config(std::istream &in, const std::string &source = "<stream>");
SentConfig load_sent_config(const std::string &path);

// Serializes every field; parse_sent_config(to_ini(c)) == c.
std::string to_ini(const SentConfig &cfg);

// Throws ConfigError for out-of-range values.
void validate(const SentConfig &cfg);

} // namespace cdfdamage::fem2d

#endif
