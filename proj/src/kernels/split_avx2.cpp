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

#include <immintrin.h>

#include "cdfdamage/kernels.hpp"

namespace cdfdamage::kernels {

__attribute__((target("avx2"))) void tensile_energy_avx2(const double *exx, const double *eyy,
        const double *exy, std::size_t n, double lambda, double mu, double *phi_plus,
        double *phi_minus) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d hl = _mm256_set1_pd(0.5 * lambda);
    const __m256d vmu = _mm256_set1_pd(mu);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xx = _mm256_loadu_pd(exx + i);
        const __m256d yy = _mm256_loadu_pd(eyy + i);
        const __m256d xy = _mm256_loadu_pd(exy + i);
        const __m256d m = _mm256_mul_pd(half, _mm256_add_pd(xx, yy));
        const __m256d d = _mm256_mul_pd(half, _mm256_sub_pd(xx, yy));
        const __m256d r = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(d, d), _mm256_mul_pd(xy, xy)));
        const __m256d l1 = _mm256_add_pd(m, r);
        const __m256d l2 = _mm256_sub_pd(m, r);
        const __m256d p1 = _mm256_max_pd(l1, zero);
        const __m256d p2 = _mm256_max_pd(l2, zero);
        const __m256d n1 = _mm256_min_pd(l1, zero);
        const __m256d n2 = _mm256_min_pd(l2, zero);
        const __m256d tp = _mm256_add_pd(p1, p2);
        const __m256d tn = _mm256_add_pd(n1, n2);
        const __m256d sp = _mm256_add_pd(_mm256_mul_pd(p1, p1), _mm256_mul_pd(p2, p2));
        const __m256d sn = _mm256_add_pd(_mm256_mul_pd(n1, n1), _mm256_mul_pd(n2, n2));
        _mm256_storeu_pd(phi_plus + i, _mm256_add_pd(_mm256_mul_pd(hl, _mm256_mul_pd(tp, tp)), _mm256_mul_pd(vmu, sp)));
        _mm256_storeu_pd(phi_minus + i, _mm256_add_pd(_mm256_mul_pd(hl, _mm256_mul_pd(tn, tn)), _mm256_mul_pd(vmu, sn)));
    }
    if (i < n) tensile_energy_scalar(exx + i, eyy + i, exy + i, n - i, lambda, mu, phi_plus + i, phi_minus + i);
}

__attribute__((target("avx2"))) void history_update_avx2(const double *eta_prev, const double *phi,
        std::size_t n, double *eta_out) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(eta_prev + i);
        const __m256d b = _mm256_loadu_pd(phi + i);
        _mm256_storeu_pd(eta_out + i, _mm256_max_pd(a, b));
    }
    if (i < n) history_update_scalar(eta_prev + i, phi + i, n - i, eta_out + i);
}

} // namespace cdfdamage::kernels
