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
#ifndef CDFDAMAGE_CSV_HPP
#define CDFDAMAGE_CSV_HPP

#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace cdfdamage {

// Round-trip formatting: 17 significant digits, '.' separator.
std::string format_number(double v);

class CsvWriter {
public:
    // Throws std::runtime_error if the file cannot be opened.
    CsvWriter(const std::string &path, const std::vector<std::string> &columns);

    void row(const std::vector<double> &values);
    void row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

private:
    std::ofstream out_;
    std::size_t columns_;
};

} // namespace cdfdamage

#endif
