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
#ifndef CDFDAMAGE_QUASISTATIC_HPP
#define CDFDAMAGE_QUASISTATIC_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cdfdamage/damage_laws.hpp"
#include "cdfdamage/distributions.hpp"

namespace cdfdamage {

// Piecewise-linear displacement program g(t).
class BoundaryProgram {
public:
    // Throws ConfigError unless times strictly increase from 0.
    BoundaryProgram(std::vector<double> times, std::vector<double> values);
    static BoundaryProgram ramp(double T, double g_end);

    double at(double t) const;
    double end_time() const { return times_.back(); }
    const std::vector<double> &times() const { return times_; }
    const std::vector<double> &values() const { return values_; }

private:
    std::vector<double> times_;
    std::vector<double> values_;
};

// Energy density W(eps) of an intact element and its derivative.
struct BarMaterial {
    std::function<double(double)> energy;
    std::function<double(double)> stress;
    std::string description;

    static BarMaterial from_law(const DamageLaw &law, double k);
    // W(eps) = (1 / scale) int_0^{scale eps^2 / 2} (1 - F(s)) ds
    static BarMaterial from_cdf(const Distribution &F, double scale);
    static BarMaterial quadratic(double k);
};

struct BarProblem {
    int element_count = 4;
    double bar_length = 1.0;
    BarMaterial material;
    BoundaryProgram program = BoundaryProgram::ramp(1.0, 0.0);
    int steps = 100;
    double jump_cost = 1.0;

    // Throws ConfigError on invalid fields.
    void validate() const;
    int interface_count() const { return element_count - 1; }
};

struct BarState {
    double time = 0.0;
    double boundary = 0.0;
    std::vector<double> element_strains;
    std::vector<double> nodal_displacements; // left node of each element, then the right end
    std::vector<bool> open_jumps;           // interior interfaces, size element_count - 1
    std::vector<double> jump_heights;
    double stored_energy = 0.0;
    double reaction = 0.0;

    int crack_count() const;
};

struct QuasiStaticTrajectory {
    std::vector<double> times;
    std::vector<BarState> states;
    std::vector<double> dissipation; // per step, dissipation[0] = 0
};

// Minimal intact-bar energy for end displacement g, with the minimizing strains.
double intact_energy(const BarProblem &prob, double g, std::vector<double> *strains = nullptr);

// Energy of an arbitrary competitor: elements strains and crack set.
double state_energy(const BarProblem &prob, const std::vector<double> &strains);

BarState initial_state(const BarProblem &prob);
BarState incremental_step(const BarState &prev, double t, const BarProblem &prob);
// Exhaustive search over every superset of prev's crack set.
BarState brute_force_step(const BarState &prev, double t, const BarProblem &prob);

QuasiStaticTrajectory solve_trajectory(const BarProblem &prob);

struct StabilityCertificate {
    double worst_margin = 0.0;
    int worst_step = -1;
    long long competitors_checked = 0;
    bool passed = true;
};

StabilityCertificate certify_stability(const QuasiStaticTrajectory &traj, const BarProblem &prob,
        int competitors, std::uint64_t seed, int threads = 1);

struct EnergyBalanceCertificate {
    double residual = 0.0;
    double characteristic_energy = 0.0;
    double relative_residual = 0.0;
    double external_work = 0.0;
    double total_dissipation = 0.0;
    bool passed = true;
};

EnergyBalanceCertificate certify_energy_balance(const QuasiStaticTrajectory &traj, const BarProblem &prob,
        double tol);

enum class SaturationReading { Scaled, Unscaled };

struct GammaRow {
    double lambda = 0.0;
    double eps = 0.0;
    double energy = 0.0;
    double bound = 0.0; // G_F eps
};

struct GammaTable {
    std::vector<GammaRow> rows;
    double G_F = 0.0;
    double truncation = 0.0;
    bool monotone_decreasing = true;
    bool within_bound = true;
    std::vector<std::string> warnings;
};

// Energy of a unit step smoothed over width eps(lambda) on the unit interval.
// Scaled: psi_lambda(t) = Psi_F(lambda t) / lambda; unscaled: Psi_F(lambda t).
// F is truncated to 1 beyond the truncation point (auto: 1 - F <= 1e-12).
GammaTable gamma_recovery_table(const Distribution &F, const std::vector<double> &lambdas,
        const std::function<double(double)> &layer_rule, SaturationReading reading = SaturationReading::Scaled,
        std::optional<double> truncation = std::nullopt);

} // namespace cdfdamage

#endif
