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
#include "cdfdamage/response.hpp"

#include <algorithm>
#include <cmath>

#include "cdfdamage/errors.hpp"
#include "cdfdamage/quadrature.hpp"

namespace cdfdamage {

std::vector<PathRecord> drive_path(const DamageLaw &law, double k, const std::vector<double> &strains) {
    if (!(k > 0.0)) throw DomainError("drive_path requires k > 0");
    std::vector<PathRecord> out;
    out.reserve(strains.size());
    double eta = 0.0;
    double d_prev = 0.0;
    double diss = 0.0;
    for (double eps : strains) {
        if (!std::isfinite(eps)) throw DomainError("drive_path: non-finite strain");
        PathRecord r;
        r.strain = eps;
        const double ep = std::max(eps, 0.0);
        r.phi_plus = 0.5 * k * ep * ep;
        eta = std::max(eta, r.phi_plus);
        r.eta = eta;
        const double g = law.degradation(eta);
        r.stress_eff = eps >= 0.0 ? g * k * eps : k * eps;
        r.damage = 1.0 - g;
        diss += (r.damage - d_prev) * r.phi_plus;
        d_prev = r.damage;
        r.dissipation_cum = diss;
        out.push_back(r);
    }
    return out;
}

PeakResponse peak_response(const DamageLaw &law, double k) {
    if (!(k > 0.0)) throw DomainError("peak_response requires k > 0");
    PeakResponse p = normalized_peak_closed(law.kind(), law.n());
    if (!p.closed_form) return peak_stress_numeric(law, k);
    const double gl = law.saturation();
    p.strain_at_peak *= std::sqrt(gl / k);
    p.sigma_max *= std::sqrt(gl * k);
    return p;
}

double dissipated_envelope(const DamageLaw &law, double k) {
    if (!(k > 0.0)) throw DomainError("dissipated_envelope requires k > 0");
    auto f = [&](double e) { return effective_stress_1d(law, k, e); };
    const double scale = std::sqrt(2.0 * law.saturation() / k);
    const double tol = 1e-12;
    if (law.kind() == LawKind::Power) {
        const double n = law.n();
        const double top = std::sqrt(2.0 * (n + 1.0) * law.saturation() / (n * k));
        return integrate(f, 0.0, top, tol).value;
    }
    double knee = scale;
    if (law.kind() == LawKind::Piecewise) knee = scale / std::sqrt(law.n() + 1.0);
    const QuadratureResult head = integrate(f, 0.0, knee, tol, 0.0, 20000);
    const QuadratureResult tail = integrate_tail(f, knee, tol, 0.0, 20000);
    return head.value + tail.value;
}

ChiSquareCurve chi_square_demo(double n, double k, double Gl, const std::vector<double> &strains) {
    const DamageLaw law = DamageLaw::make(LawKind::ChiSquare, Gl, 1.0, n);
    ChiSquareCurve c;
    c.n = n;
    c.strain = strains;
    c.stress.reserve(strains.size());
    for (double e : strains)
        c.stress.push_back(effective_stress_1d(law, k, e));
    const double e0 = 1e-3;
    c.small_strain_ratio = effective_stress_1d(law, k, e0) / (k * e0);
    return c;
}

std::vector<double> ramp_path(double eps_max, int steps) {
    if (steps < 1) throw ConfigError("ramp_path: steps must be >= 1");
    std::vector<double> v(steps + 1);
    for (int i = 0; i <= steps; ++i)
        v[i] = eps_max * i / steps;
    return v;
}

std::vector<double> cycle_path(double eps_peak, double eps_valley, double eps_final, int steps_per_leg) {
    if (steps_per_leg < 1) throw ConfigError("cycle_path: steps must be >= 1");
    std::vector<double> v;
    auto leg = [&](double a, double b, bool first) {
        for (int i = first ? 0 : 1; i <= steps_per_leg; ++i)
            v.push_back(a + (b - a) * i / steps_per_leg);
    };
    leg(0.0, eps_peak, true);
    leg(eps_peak, eps_valley, false);
    leg(eps_valley, eps_final, false);
    return v;
}

} // namespace cdfdamage
