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
#ifndef CDFDAMAGE_RESPONSE_HPP
#define CDFDAMAGE_RESPONSE_HPP

#include <vector>

#include "cdfdamage/damage_laws.hpp"

namespace cdfdamage {

struct PathRecord {
    double strain = 0.0;
    double phi_plus = 0.0;
    double eta = 0.0;
    double stress_eff = 0.0;
    double damage = 0.0;
    double dissipation_cum = 0.0;
};

// 1D material point driven through a strain sequence from the virgin state.
std::vector<PathRecord> drive_path(const DamageLaw &law, double k, const std::vector<double> &strains);

// Closed form where available (scaled from the normalized peak),
// numeric maximization otherwise.
PeakResponse peak_response(const DamageLaw &law, double k);

// Integral of the 1D effective stress over [0, inf).
double dissipated_envelope(const DamageLaw &law, double k);

struct ChiSquareCurve {
    double n = 0.0;
    std::vector<double> strain;
    std::vector<double> stress;
    // sigma / (k eps) at eps = 1e-3
    double small_strain_ratio = 0.0;
};

ChiSquareCurve chi_square_demo(double n, double k, double Gl, const std::vector<double> &strains);

// Uniform ramp 0..eps_max with `steps` increments (steps + 1 points).
std::vector<double> ramp_path(double eps_max, int steps);
// Load to eps_peak, unload to eps_valley, reload to eps_final.
std::vector<double> cycle_path(double eps_peak, double eps_valley, double eps_final, int steps_per_leg);

} // namespace cdfdamage

#endif
