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
#ifndef CDFDAMAGE_QUADRATURE_HPP
#define CDFDAMAGE_QUADRATURE_HPP

#include <functional>

namespace cdfdamage {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (7/15) on a finite interval.
QuadratureResult integrate(const Integrand &f, double a, double b, double rel_tol = 1e-10,
        double abs_tol = 0.0, int max_intervals = 4000);

// Integral over [a, inf), a > 0, through the substitution x = a / u.
QuadratureResult integrate_tail(const Integrand &f, double a, double rel_tol = 1e-10,
        double abs_tol = 0.0, int max_intervals = 4000);

// Integral over [0, inf): [0, split] directly, tail by substitution.
QuadratureResult integrate_half_line(const Integrand &f, double split, double rel_tol = 1e-10,
        double abs_tol = 0.0, int max_intervals = 4000);

} // namespace cdfdamage

#endif
