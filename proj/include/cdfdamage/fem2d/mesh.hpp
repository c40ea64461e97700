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
#ifndef CDFDAMAGE_FEM2D_MESH_HPP
#define CDFDAMAGE_FEM2D_MESH_HPP

#include <array>
#include <string_view>
#include <utility>
#include <vector>

namespace cdfdamage::fem2d {

enum class MeshLevel { Smoke, Coarse, Refined };

std::string_view to_string(MeshLevel level);
// Throws ConfigError on an unknown name.
MeshLevel mesh_level_from_string(std::string_view name);

struct Mesh {
    std::vector<double> x, y;
    std::vector<std::array<int, 4>> elements; // counter-clockwise
    std::vector<int> bottom, top;
    // (below, above) copies of each notch-face node
    std::vector<std::pair<int, int>> seam;
    double dx = 0.0; // element size in the refinement band

    int node_count() const { return static_cast<int>(x.size()); }
    int element_count() const { return static_cast<int>(elements.size()); }
};

// Layered unit-square mesh, symmetric about y = 0.5.
// widths[i] cells across the width at level i (each 3x the next), with
// rows[i] rows per side at level i; the last level fills the rest.
struct LayerSpec {
    std::vector<int> widths;
    std::vector<int> rows;
    double notch_length = 0.5; // seam along y = 0.5 for x < notch_length
};

LayerSpec sent_layers(MeshLevel level);
Mesh build_layered_mesh(const LayerSpec &spec);
Mesh build_sent_mesh(MeshLevel level);

// Uniform nx x ny grid on [0, w] x [0, h], no seam.
Mesh build_rectangle(int nx, int ny, double w, double h);

// Smallest Jacobian determinant over the 2x2 Gauss points of all elements.
double min_gauss_jacobian(const Mesh &mesh);
double element_area(const Mesh &mesh, int e);
double element_centroid_x(const Mesh &mesh, int e);
double element_centroid_y(const Mesh &mesh, int e);

// True when the elements with value >= threshold contain a node-connected
// cluster touching both the notch tip and the edge x = 1.
bool band_spans_ligament(const Mesh &mesh, const std::vector<double> &element_value, double threshold,
        double notch_tip_x = 0.5, double notch_y = 0.5);

} // namespace cdfdamage::fem2d

#endif
