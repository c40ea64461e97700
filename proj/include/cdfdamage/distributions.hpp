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
#ifndef CDFDAMAGE_DISTRIBUTIONS_HPP
#define CDFDAMAGE_DISTRIBUTIONS_HPP

#include <string>
#include <string_view>
#include <vector>

namespace cdfdamage {

enum class DistributionKind {
    Exponential,
    Cauchy,
    Logistic,
    HalfNormal,
    ChiSquare,
    Radical,
    Piecewise,
    Rational,
    Gudermannian,
    Hypergeometric,
    RapidDecay,
    Power
};

std::string_view to_string(DistributionKind kind);
// Throws ConfigError on an unknown name.
DistributionKind distribution_kind_from_string(std::string_view name);
const std::vector<DistributionKind> &all_distribution_kinds();
bool has_shape_parameter(DistributionKind kind);

class Distribution {
public:
    // The parameter is the rate (Exponential), scale (Cauchy) or shape n.
    // Kinds without a parameter ignore it. Throws ConfigError when invalid.
    static Distribution make(DistributionKind kind, double parameter = 1.0);

    DistributionKind kind() const { return kind_; }
    double parameter() const { return param_; }
    // True for Cauchy and Logistic, whose raw CDFs live on the real line.
    bool full_line() const;

    double cdf(double x) const;
    double pdf(double x) const;

    // Folded law on [0, inf): 2F - 1 for the full-line kinds, F otherwise.
    double half_line_cdf(double x) const;
    double half_line_pdf(double x) const;

private:
    Distribution(DistributionKind kind, double param) : kind_(kind), param_(param) {}

    DistributionKind kind_;
    double param_;
    double hyper_total_ = 0.0; // C_n for Hypergeometric
};

struct MomentResult {
    double value = 0.0;
    bool convergent = false;
    std::string condition;
};

// Closed-form m-th moment. Throws NoClosedForm for kinds without one,
// DomainError for m < 0.
MomentResult moment_closed(const Distribution &dist, double m);

// Quadrature of x^m times the half-line density. Throws DivergenceError
// when the moment does not exist.
double moment_numeric(const Distribution &dist, double m);

// Whether the m-th moment exists, with the governing condition.
MomentResult moment_exists(const Distribution &dist, double m);

// Integral of 1 - half_line_cdf over [0, x]; x = inf gives the mean.
double survival_integral(const Distribution &dist, double x);

} // namespace cdfdamage

#endif
