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
#include <algorithm>
#include <cmath>

#include "cdfdamage/kernels.hpp"

namespace cdfdamage::kernels {

void tensile_energy_scalar(const double *exx, const double *eyy, const double *exy, std::size_t n,
        double lambda, double mu, double *phi_plus, double *phi_minus) {
    for (std::size_t i = 0; i < n; ++i) {
        const double m = 0.5 * (exx[i] + eyy[i]);
        const double d = 0.5 * (exx[i] - eyy[i]);
        const double r = std::sqrt(d * d + exy[i] * exy[i]);
        const double l1 = m + r;
        const double l2 = m - r;
        const double p1 = std::max(l1, 0.0), p2 = std::max(l2, 0.0);
        const double n1 = std::min(l1, 0.0), n2 = std::min(l2, 0.0);
        const double tp = p1 + p2;
        const double tn = n1 + n2;
        phi_plus[i] = 0.5 * lambda * (tp * tp) + mu * (p1 * p1 + p2 * p2);
        phi_minus[i] = 0.5 * lambda * (tn * tn) + mu * (n1 * n1 + n2 * n2);
    }
}

void history_update_scalar(const double *eta_prev, const double *phi, std::size_t n, double *eta_out) {
    for (std::size_t i = 0; i < n; ++i)
        eta_out[i] = std::max(eta_prev[i], phi[i]);
}

} // namespace cdfdamage::kernels
