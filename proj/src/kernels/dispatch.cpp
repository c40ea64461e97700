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
#include <cstdlib>
#include <cstring>

#include "cdfdamage/kernels.hpp"

namespace cdfdamage::kernels {

namespace {

bool use_avx2() {
    static const bool enabled = [] {
        const char *force = std::getenv("CDFDAMAGE_FORCE_SCALAR");
        if (force && std::strcmp(force, "0") != 0 && force[0] != '\0') return false;
        return avx2_supported();
    }();
    return enabled;
}

} // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const char *active_isa() {
    return use_avx2() ? "avx2" : "scalar";
}

void tensile_energy(const double *exx, const double *eyy, const double *exy, std::size_t n,
        double lambda, double mu, double *phi_plus, double *phi_minus) {
    if (use_avx2())
        tensile_energy_avx2(exx, eyy, exy, n, lambda, mu, phi_plus, phi_minus);
    else
        tensile_energy_scalar(exx, eyy, exy, n, lambda, mu, phi_plus, phi_minus);
}

void history_update(const double *eta_prev, const double *phi, std::size_t n, double *eta_out) {
    if (use_avx2())
        history_update_avx2(eta_prev, phi, n, eta_out);
    else
        history_update_scalar(eta_prev, phi, n, eta_out);
}

} // namespace cdfdamage::kernels
