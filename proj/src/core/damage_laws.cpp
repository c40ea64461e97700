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
#include "cdfdamage/damage_laws.hpp"

#include <array>
#include <functional>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "cdfdamage/distributions.hpp"
#include "cdfdamage/errors.hpp"
#include "cdfdamage/special_functions.hpp"

namespace cdfdamage {

namespace {

using special::pi;

struct LawName {
    LawKind kind;
    std::string_view name;
};

constexpr std::array<LawName, 12> kLawNames = {{
        {LawKind::Power, "power"},
        {LawKind::Exponential, "exponential"},
        {LawKind::Cauchy, "cauchy"},
        {LawKind::Radical, "radical"},
        {LawKind::ChiSquare, "chisquare"},
        {LawKind::Logistic, "logistic"},
        {LawKind::HalfNormal, "halfnormal"},
        {LawKind::Gudermannian, "gudermannian"},
        {LawKind::Hypergeometric, "hypergeometric"},
        {LawKind::Piecewise, "piecewise"},
        {LawKind::Rational, "rational"},
        {LawKind::RapidDecay, "rapiddecay"},
}};

double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double root(const std::function<double(double)> &f, double lo, double hi) {
    boost::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(52);
    auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    return 0.5 * (r.first + r.second);
}

// Stationary points of the normalized (G/ell = 1, k = 1) peak.
double logistic_peak_x() {
    static const double x = root([](double y) { return y * std::tanh(y) - 0.25; }, 0.1, 2.0);
    return x;
}

double gudermannian_peak_x() {
    static const double x = root([](double y) { return pi * y * std::tanh(0.5 * pi * y) - 1.0; }, 0.1, 2.0);
    return x;
}

bool is_integer(double v) {
    return v == std::floor(v);
}

} // namespace

std::string_view to_string(LawKind kind) {
    for (const auto &kn : kLawNames)
        if (kn.kind == kind) return kn.name;
    return "unknown";
}

LawKind law_kind_from_string(std::string_view name) {
    for (const auto &kn : kLawNames)
        if (kn.name == name) return kn.kind;
    throw ConfigError("unknown damage law '" + std::string(name) + "'");
}

const std::vector<LawKind> &all_law_kinds() {
    static const std::vector<LawKind> kinds = [] {
        std::vector<LawKind> v;
        for (const auto &kn : kLawNames)
            v.push_back(kn.kind);
        return v;
    }();
    return kinds;
}

bool law_has_shape(LawKind kind) {
    switch (kind) {
    case LawKind::Power:
    case LawKind::Radical:
    case LawKind::ChiSquare:
    case LawKind::Hypergeometric:
    case LawKind::Piecewise:
    case LawKind::Rational: return true;
    default: return false;
    }
}

DamageLaw DamageLaw::make(LawKind kind, double G, double ell, double n) {
    if (!std::isfinite(G) || !(G > 0.0)) throw ConfigError("damage law: G must be positive");
    if (!std::isfinite(ell) || !(ell > 0.0)) throw ConfigError("damage law: ell must be positive");
    if (!law_has_shape(kind)) n = 1.0;
    if (!std::isfinite(n) || !(n > 0.0))
        throw ConfigError(std::string(to_string(kind)) + ": shape n must be positive");
    if (kind == LawKind::Rational && (n < 0.5 || n > 2.0))
        throw ConfigError("rational: shape n must lie in [0.5, 2]");
    DamageLaw law(kind, G, ell, n);
    if (kind == LawKind::Hypergeometric) law.hyper_total_ = special::sech_power_total(n);
    if (kind == LawKind::Power) law.power_gamma_ = n * ell / ((n + 1.0) * G);
    return law;
}

bool DamageLaw::admissible() const {
    return !(kind_ == LawKind::ChiSquare && n_ != 2.0);
}

std::string DamageLaw::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << to_string(kind_);
    if (law_has_shape(kind_)) os << "(n=" << n_ << ")";
    os << " G=" << G_ << " ell=" << ell_;
    return os.str();
}

double DamageLaw::psi(double phi) const {
    if (std::isnan(phi) || phi < 0.0) throw DomainError("psi: phi must be >= 0");
    if (phi == 0.0) return 0.0;
    const double gl = saturation();
    const double x = phi / gl;
    const double n = n_;
    switch (kind_) {
    case LawKind::Power: {
        const double t = power_gamma_ * phi;
        if (t >= 1.0) return gl;
        return phi * (1.0 - std::pow(t, n) / (n + 1.0));
    }
    case LawKind::Exponential: return -gl * std::expm1(-x);
    case LawKind::Cauchy: return 2.0 * gl / pi * std::atan(0.5 * pi * x);
    case LawKind::Radical:
        if (std::isinf(x)) return gl;
        return phi * std::exp(-n * softplus(std::log(x) / n));
    case LawKind::ChiSquare: return gl * special::regularized_lower_gamma(0.5 * n, x);
    case LawKind::Logistic: return gl * std::tanh(x);
    case LawKind::HalfNormal: return gl * std::erf(0.5 * std::sqrt(pi) * x);
    case LawKind::Gudermannian: return 4.0 * gl / pi * std::atan(std::tanh(0.25 * pi * x));
    case LawKind::Hypergeometric:
        if (std::isinf(x)) return gl;
        return gl / hyper_total_ * special::sech_power_integral(n, hyper_total_ * x);
    case LawKind::Piecewise:
        if (x <= 1.0 / (n + 1.0)) return phi;
        return gl * (1.0 - n / (n + 1.0) * std::pow((n + 1.0) * x, -1.0 / n));
    case LawKind::Rational:
        if (std::isinf(x)) return gl;
        return phi * (x + n * n) / ((x + n) * (x + n));
    case LawKind::RapidDecay:
        if (std::isinf(x)) return gl;
        if (x <= 1e-12) return phi;
        return -phi * std::expm1(-1.0 / x);
    }
    return 0.0;
}

double DamageLaw::degradation(double phi) const {
    if (std::isnan(phi) || phi < 0.0) throw DomainError("degradation: phi must be >= 0");
    const double x = phi / saturation();
    const double n = n_;
    switch (kind_) {
    case LawKind::Power: return std::max(0.0, 1.0 - std::pow(power_gamma_ * phi, n));
    case LawKind::Exponential: return std::exp(-x);
    case LawKind::Cauchy: {
        const double t = 0.5 * pi * x;
        return 1.0 / (1.0 + t * t);
    }
    case LawKind::Radical:
        if (x == 0.0) return 1.0;
        return std::exp(-(n + 1.0) * softplus(std::log(x) / n));
    case LawKind::ChiSquare: {
        const double a = 0.5 * n;
        if (x == 0.0) {
            if (a < 1.0) return std::numeric_limits<double>::infinity();
            return a == 1.0 ? 1.0 : 0.0;
        }
        return std::exp((a - 1.0) * std::log(x) - x - std::lgamma(a));
    }
    case LawKind::Logistic: {
        const double s = special::sech(x);
        return s * s;
    }
    case LawKind::HalfNormal: return std::exp(-0.25 * pi * x * x);
    case LawKind::Gudermannian: return special::sech(0.5 * pi * x);
    case LawKind::Hypergeometric: return std::pow(special::sech(hyper_total_ * x), n);
    case LawKind::Piecewise:
        if (x <= 1.0 / (n + 1.0)) return 1.0;
        return std::pow((n + 1.0) * x, -(n + 1.0) / n);
    // rounding lifts the quotient a few ulps above 1 near x = 0
    case LawKind::Rational: return std::min(1.0, ((2.0 * n - n * n) * x + n * n * n) / std::pow(x + n, 3));
    case LawKind::RapidDecay: {
        static const Distribution rd = Distribution::make(DistributionKind::RapidDecay);
        return rd.pdf(x);
    }
    }
    return 1.0;
}

double radical_coefficient_literal(const DamageLaw &law, double phi) {
    if (law.kind() != LawKind::Radical) throw ConfigError("radical_coefficient_literal: not a radical law");
    if (phi < 0.0) throw DomainError("phi must be >= 0");
    const double n = law.n();
    return 1.0 / std::pow(1.0 + std::pow(phi * law.ell() / law.G(), 1.0 / n), n + 1.0);
}

double effective_stress_1d(const DamageLaw &law, double k, double eps) {
    if (eps <= 0.0) return k * eps;
    return k * eps * law.degradation(0.5 * k * eps * eps);
}

PeakResponse peak_stress_numeric(const DamageLaw &law, double k) {
    if (!(k > 0.0)) throw DomainError("peak search requires k > 0");
    const double hi = 10.0 * std::sqrt(2.0 * law.saturation() / k);
    auto neg = [&](double e) { return -effective_stress_1d(law, k, e); };
    boost::uintmax_t iters = 500;
    auto best = boost::math::tools::brent_find_minima(neg, 0.0, hi, 52, iters);
    double eps = best.first;
    if (eps >= hi * (1.0 - 1e-6) || eps <= hi * 1e-9 || !std::isfinite(best.second))
        throw DomainError(law.describe() + ": effective stress has no interior maximum");

    // polish on the root of the central-difference slope
    auto slope = [&](double e) {
        const double h = 1e-6 * e;
        return (effective_stress_1d(law, k, e + h) - effective_stress_1d(law, k, e - h)) / (2.0 * h);
    };
    const double lo_b = eps * (1.0 - 1e-4);
    const double hi_b = eps * (1.0 + 1e-4);
    double best_val = effective_stress_1d(law, k, eps);
    auto consider = [&](double e) {
        const double v = effective_stress_1d(law, k, e);
        if (v > best_val) {
            best_val = v;
            eps = e;
        }
    };
    if (slope(lo_b) > 0.0 && slope(hi_b) < 0.0) consider(root(slope, lo_b, hi_b));

    // kinked maxima (piecewise) have no slope root; bisect on the sign of a one-sided step
    double a = lo_b, b = hi_b;
    for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
        const double m = 0.5 * (a + b);
        const double step = 1e-13 * m;
        if (effective_stress_1d(law, k, m + step) > effective_stress_1d(law, k, m)) a = m;
        else b = m;
    }
    consider(a);
    consider(b);

    PeakResponse p;
    p.strain_at_peak = eps;
    p.sigma_max = effective_stress_1d(law, k, eps);
    p.damage_at_peak = law.damage(0.5 * k * eps * eps);
    p.closed_form = false;
    return p;
}

PeakResponse normalized_peak_closed(LawKind kind, double n) {
    PeakResponse p;
    double x = 0.0; // normalized energy phi ell / G at the peak
    double g = 0.0;
    switch (kind) {
    case LawKind::Exponential:
        x = 0.5;
        g = std::exp(-0.5);
        break;
    case LawKind::Cauchy:
        // (pi x / 2)^2 = 1/3
        x = 2.0 / (pi * std::sqrt(3.0));
        g = 0.75;
        break;
    case LawKind::HalfNormal:
        // pi x^2 / 4 = 1/4
        x = 1.0 / std::sqrt(pi);
        g = std::exp(-0.25);
        break;
    case LawKind::Logistic: {
        x = logistic_peak_x();
        const double s = special::sech(x);
        g = s * s;
        break;
    }
    case LawKind::Gudermannian:
        x = gudermannian_peak_x();
        g = special::sech(0.5 * pi * x);
        break;
    case LawKind::Radical: {
        if (!(n > 0.0)) throw DomainError("radical: n must be positive");
        const double s = n / (n + 2.0);
        x = std::pow(s, n);
        g = std::pow(1.0 + s, -(n + 1.0));
        break;
    }
    case LawKind::Piecewise:
        if (!(n > 0.0)) throw DomainError("piecewise: n must be positive");
        x = 1.0 / (n + 1.0);
        g = 1.0;
        break;
    case LawKind::Power:
        if (!(n > 0.0)) throw DomainError("power: n must be positive");
        // (gamma phi)^n = 1 / (2n + 1), gamma = n / (n + 1)
        x = std::pow(1.0 / (2.0 * n + 1.0), 1.0 / n) * (n + 1.0) / n;
        g = 2.0 * n / (2.0 * n + 1.0);
        break;
    default: return p;
    }
    p.strain_at_peak = std::sqrt(2.0 * x);
    p.sigma_max = p.strain_at_peak * g;
    p.damage_at_peak = 1.0 - g;
    p.closed_form = true;
    return p;
}

Calibration calibration_constant(LawKind kind, double n) {
    Calibration c;
    PeakResponse p = normalized_peak_closed(kind, n);
    if (kind == LawKind::Exponential) {
        c.constant = std::exp(1.0);
    } else if (kind == LawKind::Cauchy) {
        c.constant = 4.0 * pi / std::pow(3.0, 1.5);
    } else if (kind == LawKind::HalfNormal) {
        c.constant = 0.5 * std::sqrt(std::exp(1.0) * pi);
    } else if (kind == LawKind::Radical) {
        const double s = n / (n + 2.0);
        c.constant = std::pow(1.0 + s, 2.0 * (n + 1.0)) / (2.0 * std::pow(s, n));
    } else if (kind == LawKind::Piecewise) {
        c.constant = 0.5 * (n + 1.0);
    } else if (p.closed_form) {
        c.constant = 1.0 / (p.sigma_max * p.sigma_max);
    } else {
        const DamageLaw unit = DamageLaw::make(kind, 1.0, 1.0, n);
        p = peak_stress_numeric(unit, 1.0);
        c.constant = 1.0 / (p.sigma_max * p.sigma_max);
        c.numeric = true;
    }
    return c;
}

Calibration calibrate_length(LawKind kind, double n, double sigma_max, double k, double G) {
    if (!(sigma_max > 0.0) || !(k > 0.0) || !(G > 0.0))
        throw DomainError("calibrate_length: sigma_max, k and G must be positive");
    Calibration c = calibration_constant(kind, n);
    c.ell = G * k / (c.constant * sigma_max * sigma_max);
    return c;
}

std::vector<double> taylor_coefficients(const DamageLaw &law, int order) {
    if (order < 1 || order > 3) throw DomainError("taylor_coefficients: order must be 1..3");
    switch (law.kind()) {
    case LawKind::RapidDecay: throw NoSmoothExpansion("rapiddecay: psi is flat beyond all orders at 0");
    case LawKind::ChiSquare:
        if (law.n() != 2.0) throw NoSmoothExpansion("chisquare: psi is not analytic at 0 for n != 2");
        break;
    case LawKind::Power:
        if (!is_integer(law.n())) throw NoSmoothExpansion("power: psi is not analytic at 0 for non-integer n");
        break;
    default: break;
    }
    const double gl = law.saturation();
    double h0 = 0.05 * gl;
    if (law.kind() == LawKind::Piecewise) h0 = 0.2 * gl / (law.n() + 1.0);

    // forward differences of psi at 0 (psi(0) = 0), Richardson in h
    constexpr int levels = 6;
    std::vector<double> coeffs;
    for (int j = 1; j <= order; ++j) {
        double table[levels][levels];
        for (int l = 0; l < levels; ++l) {
            const double h = h0 / std::pow(2.0, l);
            double diff = 0.0;
            double binom = 1.0;
            for (int i = j; i >= 0; --i) {
                const double sign = ((j - i) % 2 == 0) ? 1.0 : -1.0;
                diff += sign * binom * law.psi(i * h);
                binom = binom * i / (j - i + 1);
            }
            table[l][0] = diff / std::pow(h, j);
            for (int m = 1; m <= l; ++m) {
                const double f = std::pow(2.0, m);
                table[l][m] = (f * table[l][m - 1] - table[l - 1][m - 1]) / (f - 1.0);
            }
        }
        double fact = 1.0;
        for (int i = 2; i <= j; ++i)
            fact *= i;
        coeffs.push_back(table[levels - 1][levels - 1] / fact);
    }
    return coeffs;
}

} // namespace cdfdamage
