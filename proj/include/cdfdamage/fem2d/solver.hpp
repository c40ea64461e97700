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
#ifndef CDFDAMAGE_FEM2D_SOLVER_HPP
#define CDFDAMAGE_FEM2D_SOLVER_HPP

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cdfdamage/continuum.hpp"
#include "cdfdamage/damage_laws.hpp"
#include "cdfdamage/fem2d/mesh.hpp"

namespace cdfdamage::fem2d {

struct SolverSettings {
    double tolerance = 1e-6; // on |u_{k+1} - u_k| / |u_{k+1}|
    int max_iterations = 50;
    int max_halvings = 10;
    // fraction of the tensile stiffness kept when g -> 0
    double residual_stiffness = 1e-9;
};

struct BoundarySettings {
    bool top_ux_fixed = true;
};

// Prescribed displacement: value = unit_value * load parameter.
struct Constraint {
    int dof = 0;
    double unit_value = 0.0;
};

// SENT supports: bottom fixed, top uy = 1, top ux = 0 when fixed.
std::vector<Constraint> sent_constraints(const Mesh &mesh, const BoundarySettings &bc);
// y-dofs of the top edge
std::vector<int> top_reaction_dofs(const Mesh &mesh);

struct LoadStepResult {
    int step = 0;
    double u_top = 0.0;
    double reaction = 0.0;
    double max_damage = 0.0;
    int iterations = 0;
    bool converged = false;
    double stored_energy = 0.0;
    double external_work = 0.0; // cumulative
};

// Q4 plane-strain solver with staggered damage updates at the 2x2 Gauss points.
class Solver {
public:
    Solver(Mesh mesh, const Elasticity &elast, const DamageLaw &law, SolverSettings settings = {},
            BoundarySettings bc = {});
    // General constraints; the reaction is the internal force summed over reaction_dofs.
    Solver(Mesh mesh, const Elasticity &elast, const DamageLaw &law, SolverSettings settings,
            std::vector<Constraint> constraints, std::vector<int> reaction_dofs);
    ~Solver();
    Solver(Solver &&) noexcept;
    Solver &operator=(Solver &&) noexcept;

    // Advances to the given load parameter (top displacement for SENT) when the iteration converges;
    // otherwise the previous state is kept and converged is false.
    LoadStepResult solve_step(double u_top);

    // g = 1 everywhere: plain linear elasticity.
    void set_damage_enabled(bool on);

    const Mesh &mesh() const;
    int dof_count() const;
    double u_top() const;
    const Eigen::VectorXd &displacement() const;
    // 4 entries per element, Gauss points in counter-clockwise order
    const std::vector<double> &eta() const;
    std::vector<double> gauss_damage() const;
    // {exx, eyy, exy} per Gauss point of the accepted state, tensor shear
    std::vector<std::array<double, 3>> gauss_strain() const;
    std::vector<double> element_damage_max() const;
    std::vector<double> nodal_damage() const;
    // Top-edge reaction for an arbitrary displacement field with the current damage.
    double reaction_for(const Eigen::VectorXd &u) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct LoadProgram {
    double increment = 1e-4;
    double fine_increment = 1e-5;
    double switch_displacement = 4.4e-3;
    double max_displacement = 2e-2;
    // stop once the reaction falls below this fraction of the peak
    double stop_fraction = 0.1;
};

struct OutputSettings {
    int vtk_every = 0; // 0: peak and final only
    bool vtk = true;
};

struct SentConfig {
    double E = 210.0;
    double nu = 0.3;
    double Gc = 2.7e-3;
    LawKind law = LawKind::Exponential;
    double n = 1.0;
    double ell = 0.0;        // absolute length; 0 means ell_factor * dx
    double ell_factor = 0.0; // 0 means the default for the law
    MeshLevel mesh = MeshLevel::Coarse;
    bool damage = true;
    LoadProgram loading;
    // An unstable crack run has to cross the ligament inside a single step,
    // which takes a few hundred staggered iterations.
    SolverSettings solver{1e-6, 3000, 10, 1e-9};
    BoundarySettings boundary;
    OutputSettings output;
};

// ell / dx for the five benchmark laws; throws ConfigError for other kinds.
double default_ell_factor(LawKind kind);
double resolve_ell(const SentConfig &cfg, double dx);

struct SentResult {
    std::vector<LoadStepResult> steps;
    double peak_reaction = 0.0;
    double peak_u = 0.0;
    int peak_step = 0;
    double ell = 0.0;
    int elements = 0;
    int nodes = 0;
    bool completed = false;
    std::string stop_reason;
    std::vector<double> final_element_damage;
    bool band_spans_ligament = false;
    int reaction_peaks = 0; // local maxima above half the peak
    double final_reaction_fraction = 0.0;
    double seconds = 0.0;
    std::vector<std::string> files;
};

// Runs the displacement program. With a non-empty out_dir, writes
// load_displacement.csv, energy.csv and VTK snapshots there.
SentResult run_sent(const SentConfig &cfg, const std::string &out_dir = "",
        const std::function<void(const LoadStepResult &)> &progress = {});

// Local maxima of the curve that exceed `fraction` of the global peak.
int count_peaks(const std::vector<LoadStepResult> &steps, double fraction = 0.5);

} // namespace cdfdamage::fem2d

#endif
