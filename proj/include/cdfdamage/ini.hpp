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

#ifndef CDFDAMAGE_INI_HPP
#define CDFDAMAGE_INI_HPP

#include <string>

namespace cdfdamage::ini {

// Value parsers for key = value config files. Errors are ConfigError
// prefixed with the field path ("section.key").
std::string trim(std::string s);
double to_double(const std::string &field, const std::string &raw);
int to_int(const std::string &field, const std::string &raw);
bool to_bool(const std::string &field, const std::string &raw);

} // namespace cdfdamage::ini

#endif
