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
#ifndef CDFDAMAGE_DAMAGE_LAWS_HPP
#define CDFDAMAGE_DAMAGE_LAWS_HPP

#include <string>
#include <string_view>
#include <vector>

namespace cdfdamage {

enum class LawKind {
    Power,
    Exponential,
    Cauchy,
    Radical,
    ChiSquare,
    Logistic,
    HalfNormal,
    Gudermannian,
    Hypergeometric,
    Piecewise,
    Rational,
    RapidDecay
};

std::string_view to_string(LawKind kind);
LawKind law_kind_from_string(std::string_view name);
const std::vector<LawKind> &all_law_kinds();
bool law_has_shape(LawKind kind);

// Softening law psi(phi) with saturation G / ell.
class DamageLaw {
public:
    // n is ignored by kinds without a shape parameter. Throws ConfigError.
    static DamageLaw make(LawKind kind, double G, double ell, double n = 1.0);

    LawKind kind() const { return kind_; }
    double G() const { return G_; }
    double ell() const { return ell_; }
    double n() const { return n_; }
    double saturation() const { return G_ / ell_; }
    // ChiSquare with n != 2 is the non-admissible counterexample.
    bool admissible() const;
    std::string describe() const;

    double psi(double phi) const;
    double degradation(double phi) const;
    double damage(double phi) const { return 1.0 - degradation(phi); }

private:
    DamageLaw(LawKind kind, double G, double ell, double n) : kind_(kind), G_(G), ell_(ell), n_(n) {}

    LawKind kind_;
    double G_;
    double ell_;
    double n_;
    double hyper_total_ = 0.0;
    double power_gamma_ = 0.0;
};

// Radical law coefficient of sigma+ written literally as
// 1 / (1 + (phi ell / G)^{1/n})^{n+1}, for comparison with degradation().
double radical_coefficient_literal(const DamageLaw &law, double phi);

struct PeakResponse {
    double strain_at_peak = 0.0;
    double sigma_max = 0.0;
    double damage_at_peak = 0.0;
    bool closed_form = false;
};

// Peak of the normalized law (G / ell = 1, k = 1) for kinds with an
// analytic stationarity condition; closed_form is false when none exists.
PeakResponse normalized_peak_closed(LawKind kind, double n);

// 1D effective stress k eps g(k eps^2 / 2) for eps >= 0.
double effective_stress_1d(const DamageLaw &law, double k, double eps);

// Golden-section maximization of the 1D effective stress on
// [0, 10 sqrt(2 G / (ell k))], polished on the derivative root.
PeakResponse peak_stress_numeric(const DamageLaw &law, double k);

struct Calibration {
    double ell = 0.0;
    double constant = 0.0; // C in G / ell = C sigma_max^2 / k
    bool numeric = false;
};

// Calibration constant C for a law kind and shape.
Calibration calibration_constant(LawKind kind, double n);

// ell such that the 1D peak stress equals sigma_max.
Calibration calibrate_length(LawKind kind, double n, double sigma_max, double k, double G);

// Taylor coefficients c_1..c_order of psi at 0, c_j = psi^(j)(0) / j!.
// Throws NoSmoothExpansion for RapidDecay, ChiSquare(n != 2) and
// Power with non-integer n.
std::vector<double> taylor_coefficients(const DamageLaw &law, int order);

} // namespace cdfdamage

#endif
