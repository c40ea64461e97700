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
#include "cdfdamage/fem2d/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cdfdamage/errors.hpp"

namespace cdfdamage::fem2d {

namespace {

struct NodeRow {
    double y = 0.0;
    int nx = 0;
    std::vector<int> ids; // nx + 1 nodes at x = j / nx
};

// One step outward from the centre line.
struct Layer {
    bool transition = false;
    double height = 0.0;
    int nx_inner = 0;
    int nx_outer = 0;
};

std::vector<Layer> outward_layers(const LayerSpec &spec) {
    const auto &w = spec.widths;
    std::vector<Layer> out;
    double used = 0.0;
    const std::size_t L = w.size();
    for (std::size_t i = 0; i < L; ++i) {
        const double h = 1.0 / w[i];
        if (i > 0) {
            // 3:1 transition, as tall as one coarse cell
            out.push_back({true, h, w[i - 1], w[i]});
            used += h;
        }
        int count = 0;
        double rh = h;
        if (i + 1 < L) {
            count = spec.rows[i];
        } else {
            const double rest = 0.5 - used;
            if (rest <= 1e-12) throw ConfigError("mesh: refinement layers exceed the half height");
            count = std::max(1, static_cast<int>(std::lround(rest / h)));
            rh = rest / count;
        }
        for (int r = 0; r < count; ++r)
            out.push_back({false, rh, w[i], w[i]});
        used += count * rh;
    }
    return out;
}

} // namespace

std::string_view to_string(MeshLevel level) {
    switch (level) {
    case MeshLevel::Smoke: return "smoke";
    case MeshLevel::Coarse: return "coarse";
    case MeshLevel::Refined: return "refined";
    }
    return "unknown";
}

MeshLevel mesh_level_from_string(std::string_view name) {
    if (name == "smoke") return MeshLevel::Smoke;
    if (name == "coarse") return MeshLevel::Coarse;
    if (name == "refined") return MeshLevel::Refined;
    throw ConfigError("unknown mesh level '" + std::string(name) + "' (smoke|coarse|refined)");
}

LayerSpec sent_layers(MeshLevel level) {
    switch (level) {
    case MeshLevel::Smoke: return {{48, 16}, {2}, 0.5};
    case MeshLevel::Coarse: return {{120, 40}, {8}, 0.5};
    case MeshLevel::Refined: return {{360, 120, 40}, {7, 7}, 0.5};
    }
    throw ConfigError("unknown mesh level");
}

Mesh build_layered_mesh(const LayerSpec &spec) {
    if (spec.widths.empty() || spec.rows.size() + 1 != spec.widths.size())
        throw ConfigError("mesh: need one row count per level except the last");
    for (std::size_t i = 0; i < spec.widths.size(); ++i) {
        if (spec.widths[i] < 1) throw ConfigError("mesh: widths must be positive");
        if (i > 0 && spec.widths[i - 1] != 3 * spec.widths[i])
            throw ConfigError("mesh: consecutive widths must differ by a factor of 3");
    }
    const int nx0 = spec.widths[0];
    const double tip = spec.notch_length;
    const int tip_j = static_cast<int>(std::lround(tip * nx0));
    if (std::fabs(tip_j - tip * nx0) > 1e-9) throw ConfigError("mesh: notch tip must sit on a band node");

    Mesh m;
    m.dx = 1.0 / nx0;
    auto add_node = [&](double x, double y) {
        m.x.push_back(x);
        m.y.push_back(y);
        return static_cast<int>(m.x.size()) - 1;
    };
    auto add_row = [&](double y, int nx) {
        NodeRow r;
        r.y = y;
        r.nx = nx;
        for (int j = 0; j <= nx; ++j)
            r.ids.push_back(add_node(static_cast<double>(j) / nx, y));
        return r;
    };

    const auto layers = outward_layers(spec);

    // centre line: lower copy first, upper copy shares nodes right of the tip
    NodeRow centre_lo = add_row(0.5, nx0);
    NodeRow centre_hi = centre_lo;
    for (int j = 0; j < tip_j; ++j) {
        centre_hi.ids[j] = add_node(static_cast<double>(j) / nx0, 0.5);
        m.seam.emplace_back(centre_lo.ids[j], centre_hi.ids[j]);
    }

    for (int side = 0; side < 2; ++side) {
        const bool up = side == 1;
        const double dir = up ? 1.0 : -1.0;
        NodeRow inner = up ? centre_hi : centre_lo;
        double y = 0.5;
        for (std::size_t li = 0; li < layers.size(); ++li) {
            const Layer &L = layers[li];
            const bool last = li + 1 == layers.size();
            const double y_out = last ? (up ? 1.0 : 0.0) : y + dir * L.height;
            NodeRow outer = add_row(y_out, L.nx_outer);
            if (!L.transition) {
                for (int j = 0; j < L.nx_inner; ++j) {
                    const int a = inner.ids[j], b = inner.ids[j + 1];
                    const int c = outer.ids[j + 1], d = outer.ids[j];
                    if (up) m.elements.push_back({a, b, c, d});
                    else m.elements.push_back({d, c, b, a});
                }
            } else {
                const double ym = y + dir * L.height / 3.0;
                const double a = 1.0 / L.nx_inner;
                for (int c = 0; c < L.nx_outer; ++c) {
                    const int b0 = inner.ids[3 * c], b1 = inner.ids[3 * c + 1];
                    const int b2 = inner.ids[3 * c + 2], b3 = inner.ids[3 * c + 3];
                    const int m1 = add_node((3 * c + 1) * a, ym);
                    const int m2 = add_node((3 * c + 2) * a, ym);
                    const int t0 = outer.ids[c], t1 = outer.ids[c + 1];
                    const std::array<std::array<int, 4>, 4> quads = {{
                            {b0, b1, m1, t0},
                            {b1, b2, m2, m1},
                            {b2, b3, t1, m2},
                            {m1, m2, t1, t0},
                    }};
                    for (auto q : quads) {
                        if (!up) std::reverse(q.begin(), q.end());
                        m.elements.push_back(q);
                    }
                }
            }
            inner = outer;
            y = y_out;
        }
        if (up) m.top = inner.ids;
        else m.bottom = inner.ids;
    }
    return m;
}

Mesh build_sent_mesh(MeshLevel level) {
    return build_layered_mesh(sent_layers(level));
}

Mesh build_rectangle(int nx, int ny, double w, double h) {
    if (nx < 1 || ny < 1 || !(w > 0.0) || !(h > 0.0)) throw ConfigError("rectangle mesh: bad dimensions");
    Mesh m;
    m.dx = std::min(w / nx, h / ny);
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            m.x.push_back(w * i / nx);
            m.y.push_back(h * j / ny);
        }
    auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            m.elements.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    for (int i = 0; i <= nx; ++i) {
        m.bottom.push_back(id(i, 0));
        m.top.push_back(id(i, ny));
    }
    return m;
}

double min_gauss_jacobian(const Mesh &mesh) {
    const double g = 1.0 / std::sqrt(3.0);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto &el : mesh.elements) {
        for (int q = 0; q < 4; ++q) {
            const double xi = (q == 1 || q == 2) ? g : -g;
            const double et = (q >= 2) ? g : -g;
            const double dxi[4] = {-(1 - et) / 4, (1 - et) / 4, (1 + et) / 4, -(1 + et) / 4};
            const double det[4] = {-(1 - xi) / 4, -(1 + xi) / 4, (1 + xi) / 4, (1 - xi) / 4};
            double j11 = 0, j12 = 0, j21 = 0, j22 = 0;
            for (int a = 0; a < 4; ++a) {
                j11 += dxi[a] * mesh.x[el[a]];
                j12 += dxi[a] * mesh.y[el[a]];
                j21 += det[a] * mesh.x[el[a]];
                j22 += det[a] * mesh.y[el[a]];
            }
            worst = std::min(worst, j11 * j22 - j12 * j21);
        }
    }
    return worst;
}

double element_area(const Mesh &mesh, int e) {
    const auto &el = mesh.elements[e];
    double a = 0.0;
    for (int i = 0; i < 4; ++i) {
        const int p = el[i], q = el[(i + 1) % 4];
        a += mesh.x[p] * mesh.y[q] - mesh.x[q] * mesh.y[p];
    }
    return 0.5 * a;
}

double element_centroid_x(const Mesh &mesh, int e) {
    const auto &el = mesh.elements[e];
    return 0.25 * (mesh.x[el[0]] + mesh.x[el[1]] + mesh.x[el[2]] + mesh.x[el[3]]);
}

double element_centroid_y(const Mesh &mesh, int e) {
    const auto &el = mesh.elements[e];
    return 0.25 * (mesh.y[el[0]] + mesh.y[el[1]] + mesh.y[el[2]] + mesh.y[el[3]]);
}

bool band_spans_ligament(const Mesh &mesh, const std::vector<double> &element_value, double threshold,
        double notch_tip_x, double notch_y) {
    const int ne = mesh.element_count();
    if (static_cast<int>(element_value.size()) != ne) throw DomainError("band check: one value per element");
    // union-find over hot elements joined through shared nodes (the notch faces stay apart)
    std::vector<int> parent(ne);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a)
            a = parent[a] = parent[parent[a]];
        return a;
    };
    std::vector<int> owner(mesh.node_count(), -1);
    for (int e = 0; e < ne; ++e) {
        if (!(element_value[e] >= threshold)) continue;
        for (int n : mesh.elements[e]) {
            if (owner[n] < 0) owner[n] = e;
            else parent[find(e)] = find(owner[n]);
        }
    }
    const double tol = 1e-9;
    std::vector<char> at_tip(ne, 0), at_edge(ne, 0);
    for (int e = 0; e < ne; ++e) {
        if (!(element_value[e] >= threshold)) continue;
        for (int n : mesh.elements[e]) {
            if (std::fabs(mesh.x[n] - notch_tip_x) < tol && std::fabs(mesh.y[n] - notch_y) < tol) at_tip[find(e)] = 1;
            if (std::fabs(mesh.x[n] - 1.0) < tol) at_edge[find(e)] = 1;
        }
    }
    for (int e = 0; e < ne; ++e)
        if (find(e) == e && at_tip[e] && at_edge[e]) return true;
    return false;
}

} // namespace cdfdamage::fem2d
