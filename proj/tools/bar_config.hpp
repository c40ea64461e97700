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

#ifndef CDFDAMAGE_TOOLS_BAR_CONFIG_HPP
#define CDFDAMAGE_TOOLS_BAR_CONFIG_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "cdfdamage/quasistatic.hpp"

namespace cdfdamage::cli {

// Config for the quasistatic subcommand. Sections: bar, material, program, certify.
struct BarConfig {
    int elements = 4;
    double length = 1.0;
    int steps = 100;
    double jump_cost = 0.2;

    std::string material = "law"; // law | cdf | quadratic
    std::string law = "exponential";
    double n = 1.0;
    double G = 1.0;
    double ell = 1.0;
    double k = 1.0;
    std::string cdf = "exponential";
    double parameter = 1.0;
    double scale = 1.0;

    std::vector<double> times{0.0, 1.0};
    std::vector<double> values{0.0, 2.0};

    int competitors = 200;
    double tolerance = 0.02;

    BarProblem problem() const;
    std::string to_ini() const;
};

BarConfig parse_bar_config(std::istream &in, const std::string &source);
BarConfig load_bar_config(const std::string &path);

} // namespace cdfdamage::cli

#endif
