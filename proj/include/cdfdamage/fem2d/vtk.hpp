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
#ifndef CDFDAMAGE_FEM2D_VTK_HPP
#define CDFDAMAGE_FEM2D_VTK_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "cdfdamage/fem2d/mesh.hpp"

namespace cdfdamage::fem2d {

// Legacy ASCII unstructured grid: POINT_DATA scalars `damage`, vectors
// `displacement`; CELL_DATA scalars `damage_max`. Throws Error on I/O failure.
void write_vtk(const std::string &path, const Mesh &mesh, const Eigen::VectorXd &displacement,
        const std::vector<double> &nodal_damage, const std::vector<double> &element_damage,
        const std::string &title = "cdfdamage");

} // namespace cdfdamage::fem2d

#endif
