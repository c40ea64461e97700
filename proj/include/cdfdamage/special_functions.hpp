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
#ifndef CDFDAMAGE_SPECIAL_FUNCTIONS_HPP
#define CDFDAMAGE_SPECIAL_FUNCTIONS_HPP

namespace cdfdamage::special {

inline constexpr double pi = 3.14159265358979323846;

double erf(double x);

// Regularized lower incomplete gamma P(a, x). Throws DomainError for a <= 0.
double regularized_lower_gamma(double a, double x);

// Unregularized lower incomplete gamma, P(a, x) * Gamma(a).
double lower_incomplete_gamma(double a, double x);

double sech(double x);

// (4/pi) * atan(tanh(pi x / 4))
double gd(double x);

// Gauss hypergeometric function 2F1(a, b; c; z) for real arguments.
// Supported: |z| <= 0.5 by direct series, z < -0.5 via the Pfaff
// transformation, 0.5 < z <= 0.97 by slow direct series.
double hyp2f1(double a, double b, double c, double z);

// Hurwitz zeta(s, q) for s > 1, q > 0.
double hurwitz_zeta(double s, double q);

// Integral of sech(t)^n over [0, x].
double sech_power_integral(double n, double x);

// Integral of sech(t)^n over [0, inf), = (2^n / n) 2F1(n/2, n; n/2 + 1; -1).
double sech_power_total(double n);

} // namespace cdfdamage::special

#endif
