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
#include "cdfdamage/fem2d/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "cdfdamage/csv.hpp"
#include "cdfdamage/errors.hpp"
#include "cdfdamage/ini.hpp"

namespace cdfdamage::fem2d {

namespace {

namespace pt = boost::property_tree;
using ini::to_bool;
using ini::to_double;
using ini::to_int;
using ini::trim;

const std::map<std::string, std::set<std::string>> &schema() {
    static const std::map<std::string, std::set<std::string>> s = {
            {"material", {"E", "nu", "Gc"}},
            {"law", {"kind", "n", "ell", "ell_factor", "damage"}},
            {"mesh", {"level"}},
            {"loading", {"increment", "fine_increment", "switch_displacement", "max_displacement", "stop_fraction",
                                "top_ux_fixed"}},
            {"solver", {"tolerance", "max_iterations", "max_halvings", "residual_stiffness"}},
            {"output", {"vtk", "vtk_every"}},
    };
    return s;
}

} // namespace

void validate(const SentConfig &c) {
    auto need = [](bool ok, const char *field, const char *what) {
        if (!ok) throw ConfigError(std::string(field) + ": " + what);
    };
    need(c.E > 0.0, "material.E", "must be positive");
    need(c.nu > -1.0 && c.nu < 0.5, "material.nu", "must lie in (-1, 0.5)");
    need(c.Gc > 0.0, "material.Gc", "must be positive");
    need(c.n > 0.0, "law.n", "must be positive");
    need(c.ell >= 0.0, "law.ell", "must be positive (or 0 for the mesh-based default)");
    need(c.ell_factor >= 0.0, "law.ell_factor", "must be positive (or 0 for the law default)");
    if (c.ell == 0.0 && c.ell_factor == 0.0) {
        try {
            (void)default_ell_factor(c.law);
        } catch (const ConfigError &e) {
            throw ConfigError(std::string("law.ell: ") + e.what());
        }
    }
    const auto &l = c.loading;
    need(l.increment > 0.0, "loading.increment", "must be positive");
    need(l.fine_increment > 0.0, "loading.fine_increment", "must be positive");
    need(l.switch_displacement >= 0.0, "loading.switch_displacement", "must be non-negative");
    need(l.max_displacement > 0.0, "loading.max_displacement", "must be positive");
    need(l.stop_fraction >= 0.0 && l.stop_fraction < 1.0, "loading.stop_fraction", "must lie in [0, 1)");
    const auto &s = c.solver;
    need(s.tolerance > 0.0, "solver.tolerance", "must be positive");
    need(s.max_iterations >= 1, "solver.max_iterations", "must be at least 1");
    need(s.max_halvings >= 0, "solver.max_halvings", "must be non-negative");
    need(s.residual_stiffness >= 0.0 && s.residual_stiffness < 1.0, "solver.residual_stiffness",
            "must lie in [0, 1)");
    need(c.output.vtk_every >= 0, "output.vtk_every", "must be non-negative");
}

SentConfig parse_sent_config(std::istream &in, const std::string &source) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        throw ConfigError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    SentConfig c;
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
            if (section == "material") {
                (key == "E" ? c.E : key == "nu" ? c.nu : c.Gc) = to_double(field, v);
            } else if (section == "law") {
                if (key == "kind") {
                    try {
                        c.law = law_kind_from_string(trim(v));
                    } catch (const Error &e) {
                        throw ConfigError(field + ": " + e.what());
                    }
                } else if (key == "damage") {
                    c.damage = to_bool(field, v);
                } else {
                    (key == "n" ? c.n : key == "ell" ? c.ell : c.ell_factor) = to_double(field, v);
                }
            } else if (section == "mesh") {
                try {
                    c.mesh = mesh_level_from_string(trim(v));
                } catch (const Error &e) {
                    throw ConfigError(field + ": " + e.what());
                }
            } else if (section == "loading") {
                auto &l = c.loading;
                if (key == "top_ux_fixed") c.boundary.top_ux_fixed = to_bool(field, v);
                else if (key == "increment") l.increment = to_double(field, v);
                else if (key == "fine_increment") l.fine_increment = to_double(field, v);
                else if (key == "switch_displacement") l.switch_displacement = to_double(field, v);
                else if (key == "max_displacement") l.max_displacement = to_double(field, v);
                else l.stop_fraction = to_double(field, v);
            } else if (section == "solver") {
                auto &s = c.solver;
                if (key == "tolerance") s.tolerance = to_double(field, v);
                else if (key == "max_iterations") s.max_iterations = to_int(field, v);
                else if (key == "max_halvings") s.max_halvings = to_int(field, v);
                else s.residual_stiffness = to_double(field, v);
            } else {
                if (key == "vtk") c.output.vtk = to_bool(field, v);
                else c.output.vtk_every = to_int(field, v);
            }
        }
    }
    validate(c);
    return c;
}

SentConfig load_sent_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open '" + path + "'");
    return parse_sent_config(f, path);
}

std::string to_ini(const SentConfig &c) {
    auto num = [](double v) { return format_number(v); };
    auto flag = [](bool b) { return b ? "true" : "false"; };
    std::ostringstream os;
    os << "[material]\n"
       << "E = " << num(c.E) << "\n"
       << "nu = " << num(c.nu) << "\n"
       << "Gc = " << num(c.Gc) << "\n\n"
       << "[law]\n"
       << "kind = " << to_string(c.law) << "\n"
       << "n = " << num(c.n) << "\n"
       << "ell = " << num(c.ell) << "\n"
       << "ell_factor = " << num(c.ell_factor) << "\n"
       << "damage = " << flag(c.damage) << "\n\n"
       << "[mesh]\n"
       << "level = " << to_string(c.mesh) << "\n\n"
       << "[loading]\n"
       << "increment = " << num(c.loading.increment) << "\n"
       << "fine_increment = " << num(c.loading.fine_increment) << "\n"
       << "switch_displacement = " << num(c.loading.switch_displacement) << "\n"
       << "max_displacement = " << num(c.loading.max_displacement) << "\n"
       << "stop_fraction = " << num(c.loading.stop_fraction) << "\n"
       << "top_ux_fixed = " << flag(c.boundary.top_ux_fixed) << "\n\n"
       << "[solver]\n"
       << "tolerance = " << num(c.solver.tolerance) << "\n"
       << "max_iterations = " << c.solver.max_iterations << "\n"
       << "max_halvings = " << c.solver.max_halvings << "\n"
       << "residual_stiffness = " << num(c.solver.residual_stiffness) << "\n\n"
       << "[output]\n"
       << "vtk = " << flag(c.output.vtk) << "\n"
       << "vtk_every = " << c.output.vtk_every << "\n";
    return os.str();
}

} // namespace cdfdamage::fem2d
