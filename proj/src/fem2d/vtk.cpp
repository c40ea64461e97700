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
#include "cdfdamage/fem2d/vtk.hpp"

#include <fstream>

#include "cdfdamage/csv.hpp"
#include "cdfdamage/errors.hpp"

namespace cdfdamage::fem2d {

void write_vtk(const std::string &path, const Mesh &mesh, const Eigen::VectorXd &displacement,
        const std::vector<double> &nodal_damage, const std::vector<double> &element_damage,
        const std::string &title) {
    const int nn = mesh.node_count();
    const int ne = mesh.element_count();
    if (displacement.size() != 2 * nn || static_cast<int>(nodal_damage.size()) != nn
            || static_cast<int>(element_damage.size()) != ne)
        throw DomainError("write_vtk: field sizes do not match the mesh");
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path);
    out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << nn << " double\n";
    for (int i = 0; i < nn; ++i)
        out << format_number(mesh.x[i]) << ' ' << format_number(mesh.y[i]) << " 0\n";
    out << "CELLS " << ne << ' ' << 5 * ne << '\n';
    for (const auto &el : mesh.elements)
        out << "4 " << el[0] << ' ' << el[1] << ' ' << el[2] << ' ' << el[3] << '\n';
    out << "CELL_TYPES " << ne << '\n';
    for (int e = 0; e < ne; ++e)
        out << "9\n"; // VTK_QUAD
    out << "CELL_DATA " << ne << "\nSCALARS damage_max double 1\nLOOKUP_TABLE default\n";
    for (double d : element_damage)
        out << format_number(d) << '\n';
    out << "POINT_DATA " << nn << "\nSCALARS damage double 1\nLOOKUP_TABLE default\n";
    for (double d : nodal_damage)
        out << format_number(d) << '\n';
    out << "VECTORS displacement double\n";
    for (int i = 0; i < nn; ++i)
        out << format_number(displacement[2 * i]) << ' ' << format_number(displacement[2 * i + 1]) << " 0\n";
    if (!out) throw Error("write failed for " + path);
}

} // namespace cdfdamage::fem2d
