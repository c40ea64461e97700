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
#include "cdfdamage/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "cdfdamage/errors.hpp"
#include "cdfdamage/quadrature.hpp"
#include "cdfdamage/special_functions.hpp"

namespace cdfdamage {

namespace {

using special::pi;

struct KindName {
    DistributionKind kind;
    std::string_view name;
};

constexpr std::array<KindName, 12> kNames = {{
        {DistributionKind::Exponential, "exponential"},
        {DistributionKind::Cauchy, "cauchy"},
        {DistributionKind::Logistic, "logistic"},
        {DistributionKind::HalfNormal, "halfnormal"},
        {DistributionKind::ChiSquare, "chisquare"},
        {DistributionKind::Radical, "radical"},
        {DistributionKind::Piecewise, "piecewise"},
        {DistributionKind::Rational, "rational"},
        {DistributionKind::Gudermannian, "gudermannian"},
        {DistributionKind::Hypergeometric, "hypergeometric"},
        {DistributionKind::RapidDecay, "rapiddecay"},
        {DistributionKind::Power, "power"},
}};

double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double rapid_decay_pdf(double x) {
    if (x <= 1e-12) return 1.0;
    const double u = 1.0 / x;
    if (u < 0.01) {
        // 1 - e^{-u}(1 + u) = sum_{k>=2} (-1)^k (k-1) u^k / k!
        double term = u * u / 2.0;
        double sum = term;
        for (int k = 3; k < 30; ++k) {
            term *= -u / k;
            const double t = term * (k - 1);
            sum += t;
            if (std::fabs(t) < 1e-18 * sum) break;
        }
        return sum;
    }
    return -std::expm1(-u) - std::exp(-u) * u;
}

// Characteristic scale used to split quadrature ranges.
double quadrature_split(const Distribution &d) {
    switch (d.kind()) {
    case DistributionKind::Exponential: return 1.0 / d.parameter();
    case DistributionKind::Cauchy: return d.parameter();
    case DistributionKind::ChiSquare: return std::max(1.0, d.parameter());
    case DistributionKind::Piecewise: return 1.0 / (d.parameter() + 1.0);
    default: return 1.0;
    }
}

} // namespace

std::string_view to_string(DistributionKind kind) {
    for (const auto &kn : kNames)
        if (kn.kind == kind) return kn.name;
    return "unknown";
}

DistributionKind distribution_kind_from_string(std::string_view name) {
    for (const auto &kn : kNames)
        if (kn.name == name) return kn.kind;
    throw ConfigError("unknown distribution kind '" + std::string(name) + "'");
}

const std::vector<DistributionKind> &all_distribution_kinds() {
    static const std::vector<DistributionKind> kinds = [] {
        std::vector<DistributionKind> v;
        for (const auto &kn : kNames)
            v.push_back(kn.kind);
        return v;
    }();
    return kinds;
}

bool has_shape_parameter(DistributionKind kind) {
    switch (kind) {
    case DistributionKind::Logistic:
    case DistributionKind::HalfNormal:
    case DistributionKind::Gudermannian:
    case DistributionKind::RapidDecay: return false;
    default: return true;
    }
}

Distribution Distribution::make(DistributionKind kind, double parameter) {
    if (!has_shape_parameter(kind)) return Distribution(kind, 1.0);
    if (!std::isfinite(parameter) || !(parameter > 0.0))
        throw ConfigError(std::string(to_string(kind)) + ": parameter must be a positive finite number");
    if (kind == DistributionKind::Rational && (parameter < 0.5 || parameter > 2.0))
        throw ConfigError("rational: parameter n must lie in [0.5, 2]");
    Distribution d(kind, parameter);
    if (kind == DistributionKind::Hypergeometric) d.hyper_total_ = special::sech_power_total(parameter);
    return d;
}

bool Distribution::full_line() const {
    return kind_ == DistributionKind::Cauchy || kind_ == DistributionKind::Logistic;
}

double Distribution::cdf(double x) const {
    if (std::isnan(x)) throw DomainError("cdf: x is NaN");
    const double n = param_;
    switch (kind_) {
    case DistributionKind::Cauchy: return std::atan(x / n) / pi + 0.5;
    case DistributionKind::Logistic: return 1.0 - 1.0 / (1.0 + std::exp(x));
    default: break;
    }
    if (x <= 0.0) return 0.0;
    switch (kind_) {
    case DistributionKind::Exponential: return -std::expm1(-n * x);
    case DistributionKind::HalfNormal: return std::erf(x);
    case DistributionKind::ChiSquare: return special::regularized_lower_gamma(0.5 * n, 0.5 * x);
    case DistributionKind::Radical: {
        if (std::isinf(x)) return 1.0;
        const double lx = std::log(x);
        return std::exp(lx - n * softplus(lx / n));
    }
    case DistributionKind::Piecewise:
        if (x <= 1.0 / (n + 1.0)) return x;
        return 1.0 - (n / (n + 1.0)) * std::pow((n + 1.0) * x, -1.0 / n);
    case DistributionKind::Rational:
        if (std::isinf(x)) return 1.0;
        return x * (x + n * n) / ((x + n) * (x + n));
    case DistributionKind::Gudermannian: return special::gd(x);
    case DistributionKind::Hypergeometric:
        return std::min(1.0, special::sech_power_integral(n, x) / hyper_total_);
    case DistributionKind::RapidDecay:
        if (x <= 1e-12) return 0.0;
        if (std::isinf(x)) return 1.0;
        return -x * std::expm1(-1.0 / x);
    case DistributionKind::Power: return x >= 1.0 ? 1.0 : std::pow(x, n);
    default: break;
    }
    return 0.0;
}

double Distribution::pdf(double x) const {
    if (std::isnan(x)) throw DomainError("pdf: x is NaN");
    const double n = param_;
    switch (kind_) {
    case DistributionKind::Cauchy: return n / (pi * (x * x + n * n));
    case DistributionKind::Logistic: {
        // 2 e^x / (1 + e^x)^2, written in e^{-|x|} to avoid overflow
        const double e = std::exp(-std::fabs(x));
        return 2.0 * e / ((1.0 + e) * (1.0 + e));
    }
    default: break;
    }
    if (x < 0.0) return 0.0;
    switch (kind_) {
    case DistributionKind::Exponential: return n * std::exp(-n * x);
    case DistributionKind::HalfNormal: return 2.0 / std::sqrt(pi) * std::exp(-x * x);
    case DistributionKind::ChiSquare: {
        const double a = 0.5 * n;
        if (x == 0.0) {
            if (a < 1.0) return std::numeric_limits<double>::infinity();
            return a == 1.0 ? 0.5 : 0.0;
        }
        return std::exp((a - 1.0) * std::log(0.5 * x) - 0.5 * x - std::lgamma(a)) / 2.0;
    }
    case DistributionKind::Radical: {
        if (x == 0.0) return 1.0;
        return std::exp(-(n + 1.0) * softplus(std::log(x) / n));
    }
    case DistributionKind::Piecewise:
        if (x <= 1.0 / (n + 1.0)) return 1.0;
        return std::pow((n + 1.0) * x, -(n + 1.0) / n);
    case DistributionKind::Rational: return n * (n * n - n * x + 2.0 * x) / std::pow(n + x, 3);
    case DistributionKind::Gudermannian: return special::sech(0.5 * pi * x);
    case DistributionKind::Hypergeometric: return std::pow(special::sech(x), n) / hyper_total_;
    case DistributionKind::RapidDecay: return rapid_decay_pdf(x);
    case DistributionKind::Power:
        if (x >= 1.0) return 0.0;
        if (x == 0.0) {
            if (n < 1.0) return std::numeric_limits<double>::infinity();
            return n == 1.0 ? 1.0 : 0.0;
        }
        return n * std::pow(x, n - 1.0);
    default: break;
    }
    return 0.0;
}

double Distribution::half_line_cdf(double x) const {
    if (std::isnan(x)) throw DomainError("cdf: x is NaN");
    if (x <= 0.0) return 0.0;
    switch (kind_) {
    case DistributionKind::Cauchy: return 2.0 / pi * std::atan(x / param_);
    case DistributionKind::Logistic: return std::tanh(0.5 * x);
    default: return cdf(x);
    }
}

double Distribution::half_line_pdf(double x) const {
    if (std::isnan(x)) throw DomainError("pdf: x is NaN");
    if (x < 0.0) return 0.0;
    switch (kind_) {
    case DistributionKind::Cauchy: return 2.0 * pdf(x);
    case DistributionKind::Logistic: return pdf(x);
    default: return pdf(x);
    }
}

MomentResult moment_exists(const Distribution &dist, double m) {
    if (!(m >= 0.0)) throw DomainError("moment order m must be >= 0");
    const double n = dist.parameter();
    MomentResult r;
    switch (dist.kind()) {
    case DistributionKind::Cauchy:
        r.condition = "m < 1";
        r.convergent = m < 1.0;
        break;
    case DistributionKind::Radical:
    case DistributionKind::Piecewise:
        r.condition = "mn < 1";
        r.convergent = m * n < 1.0;
        break;
    case DistributionKind::Rational:
        r.condition = "m < 1";
        r.convergent = m < 1.0;
        break;
    case DistributionKind::RapidDecay:
        r.condition = "0 < m < 1";
        r.convergent = m < 1.0;
        break;
    case DistributionKind::ChiSquare:
        r.condition = "m > -n/2";
        r.convergent = true;
        break;
    default:
        r.condition = "m > -1";
        r.convergent = true;
        break;
    }
    r.value = r.convergent ? 0.0 : std::numeric_limits<double>::infinity();
    return r;
}

MomentResult moment_closed(const Distribution &dist, double m) {
    switch (dist.kind()) {
    case DistributionKind::Radical:
    case DistributionKind::Piecewise:
    case DistributionKind::Rational:
    case DistributionKind::HalfNormal:
    case DistributionKind::Gudermannian:
    case DistributionKind::RapidDecay: break;
    default:
        throw NoClosedForm(std::string(to_string(dist.kind())) + ": no closed-form moment");
    }
    MomentResult r = moment_exists(dist, m);
    if (!r.convergent) return r;
    if (m == 0.0) {
        r.value = 1.0;
        return r;
    }
    const double n = dist.parameter();
    switch (dist.kind()) {
    case DistributionKind::Radical:
        r.value = std::exp(std::lgamma(1.0 - m * n) + std::lgamma(n + m * n) - std::lgamma(n));
        break;
    case DistributionKind::Piecewise:
        r.value = std::pow(n + 1.0, -m) / ((m + 1.0) * (1.0 - m * n));
        break;
    case DistributionKind::Rational:
        r.value = pi * m * std::pow(n, m) * (1.0 + m - m * n) / std::sin(pi * m);
        break;
    case DistributionKind::HalfNormal: r.value = std::tgamma(0.5 * (m + 1.0)) / std::sqrt(pi); break;
    case DistributionKind::Gudermannian: {
        // Moment of sech(pi x / 2): Gamma(m+1) 2^{-m} pi^{-m-1} (zeta(m+1,1/4) - zeta(m+1,3/4))
        const double s = m + 1.0;
        r.value = std::tgamma(s) * std::pow(2.0, -m) * std::pow(pi, -s)
                * (special::hurwitz_zeta(s, 0.25) - special::hurwitz_zeta(s, 0.75));
        break;
    }
    case DistributionKind::RapidDecay: r.value = m * std::tgamma(-1.0 - m); break;
    default: break;
    }
    return r;
}

double moment_numeric(const Distribution &dist, double m) {
    const MomentResult ex = moment_exists(dist, m);
    if (!ex.convergent)
        throw DivergenceError(std::string(to_string(dist.kind())) + ": moment diverges (needs "
                + ex.condition + ")");
    auto f = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double p = dist.half_line_pdf(x);
        return p == 0.0 ? 0.0 : p * std::pow(x, m);
    };
    const double tol = 1e-11;
    if (dist.kind() == DistributionKind::Power) return integrate(f, 0.0, 1.0, tol).value;
    const double split = quadrature_split(dist);
    return integrate_half_line(f, split, tol, 0.0, 20000).value;
}

double survival_integral(const Distribution &dist, double x) {
    if (!(x >= 0.0)) throw DomainError("survival_integral requires x >= 0");
    auto f = [&](double s) { return 1.0 - dist.half_line_cdf(s); };
    const double tol = 1e-12;
    if (dist.kind() == DistributionKind::Power) {
        const double top = std::min(x, 1.0);
        return integrate(f, 0.0, top, tol).value;
    }
    const double split = quadrature_split(dist);
    if (std::isinf(x)) {
        const MomentResult ex = moment_exists(dist, 1.0);
        if (!ex.convergent) return std::numeric_limits<double>::infinity();
        return integrate_half_line(f, split, tol, 0.0, 20000).value;
    }
    return integrate(f, 0.0, x, tol, 0.0, 20000).value;
}

} // namespace cdfdamage
