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
#ifndef CDFDAMAGE_KERNELS_HPP
#define CDFDAMAGE_KERNELS_HPP

#include <cstddef>

namespace cdfdamage::kernels {

// Batched plane-strain tensile/compressive energies from the in-plane
// strain components (tensor shear exy, not engineering).
void tensile_energy_scalar(const double *exx, const double *eyy, const double *exy, std::size_t n,
        double lambda, double mu, double *phi_plus, double *phi_minus);
void tensile_energy_avx2(const double *exx, const double *eyy, const double *exy, std::size_t n,
        double lambda, double mu, double *phi_plus, double *phi_minus);
void tensile_energy(const double *exx, const double *eyy, const double *exy, std::size_t n,
        double lambda, double mu, double *phi_plus, double *phi_minus);

// eta_out[i] = max(eta_prev[i], phi[i])
void history_update_scalar(const double *eta_prev, const double *phi, std::size_t n, double *eta_out);
void history_update_avx2(const double *eta_prev, const double *phi, std::size_t n, double *eta_out);
void history_update(const double *eta_prev, const double *phi, std::size_t n, double *eta_out);

bool avx2_supported();
// "avx2" or "scalar"; CDFDAMAGE_FORCE_SCALAR=1 pins the scalar path.
const char *active_isa();

} // namespace cdfdamage::kernels

#endif
