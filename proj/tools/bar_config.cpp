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

#include "bar_config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "cdfdamage/csv.hpp"
#include "cdfdamage/damage_laws.hpp"
#include "cdfdamage/distributions.hpp"
#include "cdfdamage/errors.hpp"
#include "cdfdamage/ini.hpp"

namespace cdfdamage::cli {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> &schema() {
    static const std::map<std::string, std::set<std::string>> s = {
            {"bar", {"elements", "length", "steps", "jump_cost"}},
            {"material", {"type", "law", "n", "G", "ell", "k", "cdf", "parameter", "scale"}},
            {"program", {"times", "values"}},
            {"certify", {"competitors", "tolerance"}},
    };
    return s;
}

// whitespace or comma separated
std::vector<double> to_list(const std::string &field, const std::string &raw) {
    std::string s = raw;
    for (char &c : s)
        if (c == ',') c = ' ';
    std::istringstream is(s);
    std::vector<double> out;
    std::string tok;
    while (is >> tok)
        out.push_back(ini::to_double(field, tok));
    if (out.empty()) throw ConfigError(field + ": expected a list of numbers");
    return out;
}

std::string join(const std::vector<double> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + format_number(v[i]);
    return s;
}

} // namespace

BarProblem BarConfig::problem() const {
    BarProblem p;
    p.element_count = elements;
    p.bar_length = length;
    p.steps = steps;
    p.jump_cost = jump_cost;
    try {
        if (material == "law")
            p.material = BarMaterial::from_law(DamageLaw::make(law_kind_from_string(law), G, ell, n), k);
        else if (material == "cdf")
            p.material = BarMaterial::from_cdf(
                    Distribution::make(distribution_kind_from_string(cdf), parameter), scale);
        else
            p.material = BarMaterial::quadratic(k);
    } catch (const ConfigError &e) {
        throw ConfigError(std::string("material: ") + e.what());
    }
    try {
        p.program = BoundaryProgram(times, values);
    } catch (const ConfigError &e) {
        throw ConfigError(std::string("program.times: ") + e.what());
    }
    p.validate();
    return p;
}

std::string BarConfig::to_ini() const {
    std::ostringstream os;
    os << "[bar]\nelements = " << elements << "\nlength = " << format_number(length) << "\nsteps = " << steps
       << "\njump_cost = " << format_number(jump_cost) << "\n\n"
       << "[material]\ntype = " << material << "\nlaw = " << law << "\nn = " << format_number(n)
       << "\nG = " << format_number(G) << "\nell = " << format_number(ell) << "\nk = " << format_number(k)
       << "\ncdf = " << cdf << "\nparameter = " << format_number(parameter) << "\nscale = " << format_number(scale)
       << "\n\n"
       << "[program]\ntimes = " << join(times) << "\nvalues = " << join(values) << "\n\n"
       << "[certify]\ncompetitors = " << competitors << "\ntolerance = " << format_number(tolerance) << "\n";
    return os.str();
}

BarConfig parse_bar_config(std::istream &in, const std::string &source) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        throw ConfigError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    BarConfig c;
    for (const auto &[section, body] : tree) {
        const auto it = schema().find(section);
        if (it == schema().end()) {
            if (body.empty()) throw ConfigError(section + ": key outside any section");
            throw ConfigError(section + ": unknown section");
        }
        for (const auto &[key, node] : body) {
            const std::string field = section + "." + key;
            if (!it->second.count(key)) throw ConfigError(field + ": unknown key");
            const std::string v = node.data();
            if (section == "bar") {
                if (key == "elements") c.elements = ini::to_int(field, v);
                else if (key == "steps") c.steps = ini::to_int(field, v);
                else (key == "length" ? c.length : c.jump_cost) = ini::to_double(field, v);
            } else if (section == "material") {
                if (key == "type") c.material = ini::trim(v);
                else if (key == "law") c.law = ini::trim(v);
                else if (key == "cdf") c.cdf = ini::trim(v);
                else if (key == "n") c.n = ini::to_double(field, v);
                else if (key == "G") c.G = ini::to_double(field, v);
                else if (key == "ell") c.ell = ini::to_double(field, v);
                else if (key == "k") c.k = ini::to_double(field, v);
                else if (key == "parameter") c.parameter = ini::to_double(field, v);
                else c.scale = ini::to_double(field, v);
            } else if (section == "program") {
                (key == "times" ? c.times : c.values) = to_list(field, v);
            } else {
                if (key == "competitors") c.competitors = ini::to_int(field, v);
                else c.tolerance = ini::to_double(field, v);
            }
        }
    }
    if (c.material != "law" && c.material != "cdf" && c.material != "quadratic")
        throw ConfigError("material.type: expected law, cdf or quadratic, got '" + c.material + "'");
    try {
        if (c.material == "law") (void)law_kind_from_string(c.law);
        if (c.material == "cdf") (void)distribution_kind_from_string(c.cdf);
    } catch (const ConfigError &e) {
        throw ConfigError(std::string(c.material == "law" ? "material.law: " : "material.cdf: ") + e.what());
    }
    if (c.elements < 1 || c.elements > 62) throw ConfigError("bar.elements: must lie in [1, 62]");
    if (!(c.length > 0.0)) throw ConfigError("bar.length: must be positive");
    if (c.steps < 1) throw ConfigError("bar.steps: must be at least 1");
    if (!(c.jump_cost > 0.0)) throw ConfigError("bar.jump_cost: must be positive");
    if (c.times.size() != c.values.size()) throw ConfigError("program.values: need one value per time");
    if (c.competitors < 0) throw ConfigError("certify.competitors: must be non-negative");
    if (!(c.tolerance > 0.0)) throw ConfigError("certify.tolerance: must be positive");
    return c;
}

BarConfig load_bar_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open '" + path + "'");
    return parse_bar_config(f, path);
}

} // namespace cdfdamage::cli
