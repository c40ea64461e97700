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
#include "cdfdamage/special_functions.hpp"

#include <cmath>
#include <limits>

#include "cdfdamage/errors.hpp"

namespace cdfdamage::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

double gamma_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 100000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps * 0.5) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x), modified Lentz.
double gamma_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double series_2f1(double a, double b, double c, double z, int max_terms) {
    double term = 1.0;
    double sum = 1.0;
    int small = 0;
    for (int k = 0; k < max_terms; ++k) {
        const double ak = a + k;
        const double bk = b + k;
        if (ak == 0.0 || bk == 0.0) return sum;
        term *= ak * bk / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (std::fabs(term) <= 1e-17 * std::fabs(sum)) {
            if (++small >= 2) return sum;
        } else {
            small = 0;
        }
    }
    throw UnsupportedDomain("hyp2f1: series did not converge");
}

bool nonpositive_integer(double v) {
    return v <= 0.0 && v == std::floor(v);
}

} // namespace

double erf(double x) {
    return std::erf(x);
}

double regularized_lower_gamma(double a, double x) {
    if (!(a > 0.0)) throw DomainError("incomplete gamma requires a > 0");
    if (std::isnan(x)) throw DomainError("incomplete gamma: x is NaN");
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return gamma_series(a, x);
    return 1.0 - gamma_continued_fraction(a, x);
}

double lower_incomplete_gamma(double a, double x) {
    return regularized_lower_gamma(a, x) * std::tgamma(a);
}

double sech(double x) {
    const double ax = std::fabs(x);
    if (ax > 700.0) return 0.0;
    const double e = std::exp(-ax);
    return 2.0 * e / (1.0 + e * e);
}

double gd(double x) {
    return 4.0 / pi * std::atan(std::tanh(pi * x / 4.0));
}

double hyp2f1(double a, double b, double c, double z) {
    if (nonpositive_integer(c)) throw UnsupportedDomain("hyp2f1: c is a non-positive integer");
    if (!std::isfinite(z)) throw UnsupportedDomain("hyp2f1: z not finite");
    if (z == 0.0) return 1.0;
    if (std::fabs(z) <= 0.5) return series_2f1(a, b, c, z, 2000);
    if (z < -0.5) {
        // Pfaff: (1 - z)^{-a} 2F1(a, c - b; c; z / (z - 1))
        const double w = z / (z - 1.0);
        if (w > 0.97 && !nonpositive_integer(a) && !nonpositive_integer(c - b))
            throw UnsupportedDomain("hyp2f1: z too negative for the Pfaff series");
        return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, w, 20000);
    }
    if (z <= 0.97) return series_2f1(a, b, c, z, 20000);
    throw UnsupportedDomain("hyp2f1: z outside the supported range");
}

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0)) throw DomainError("hurwitz_zeta requires s > 1");
    if (!(q > 0.0)) throw DomainError("hurwitz_zeta requires q > 0");

    // Euler-Maclaurin, Bernoulli-number denominators (2k)!/B_2k.
    static const double A[] = {12.0,
                               -720.0,
                               30240.0,
                               -1209600.0,
                               47900160.0,
                               -1.8924375803183791606e9,
                               7.47242496e10,
                               -2.950130727918164224e12,
                               1.1646782814350067249e14,
                               -4.5979787224074726105e15,
                               1.8152105401943546773e17,
                               -7.1661652561756670113e18};

    double sum = std::pow(q, -s);
    double a = q;
    double b = 0.0;
    int i = 0;
    while (i < 9 || a <= 9.0) {
        ++i;
        a += 1.0;
        b = std::pow(a, -s);
        sum += b;
        if (std::fabs(b / sum) < kEps) return sum;
    }
    const double w = a;
    sum += b * w / (s - 1.0);
    sum -= 0.5 * b;
    double fac = 1.0;
    double k = 0.0;
    for (double coeff : A) {
        fac *= s + k;
        b /= w;
        const double t = fac * b / coeff;
        sum += t;
        if (std::fabs(t / sum) < kEps) break;
        k += 1.0;
        fac *= s + k;
        b /= w;
        k += 1.0;
    }
    return sum;
}

double sech_power_total(double n) {
    if (!(n > 0.0)) throw DomainError("sech power requires n > 0");
    return std::pow(2.0, n) / n * hyp2f1(0.5 * n, n, 0.5 * n + 1.0, -1.0);
}

double sech_power_integral(double n, double x) {
    if (!(n > 0.0)) throw DomainError("sech power requires n > 0");
    if (x < 0.0) return -sech_power_integral(n, -x);
    if (x == 0.0) return 0.0;
    if (x <= 1.5) {
        const double sh = std::sinh(x);
        return sh * hyp2f1(0.5, 0.5 * (n + 1.0), 1.5, -sh * sh);
    }
    // C_n minus the tail 2^n sum_k (-1)^k (n)_k / k! e^{-(n+2k)x} / (n+2k)
    double tail = 0.0;
    double coeff = 1.0;
    const double q = std::exp(-2.0 * x);
    double pw = std::exp(-n * x);
    for (int k = 0; k < 400; ++k) {
        const double t = coeff * pw / (n + 2.0 * k);
        tail += t;
        if (std::fabs(t) <= 1e-18 * std::fabs(tail)) break;
        coeff *= -(n + k) / (k + 1.0);
        pw *= q;
    }
    return sech_power_total(n) - std::pow(2.0, n) * tail;
}

} // namespace cdfdamage::special
