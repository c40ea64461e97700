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
#ifndef CDFDAMAGE_CONTINUUM_HPP
#define CDFDAMAGE_CONTINUUM_HPP

#include <array>

#include <Eigen/Dense>

#include "cdfdamage/damage_laws.hpp"

namespace cdfdamage {

enum class Regime { PlaneStrain, ThreeD };

class Elasticity {
public:
    // Throws ConfigError unless E > 0 and -1 < nu < 0.5.
    static Elasticity make(double E, double nu, Regime regime);

    double E() const { return E_; }
    double nu() const { return nu_; }
    Regime regime() const { return regime_; }
    double lame_lambda() const { return lambda_; }
    double shear_modulus() const { return mu_; }

private:
    Elasticity(double E, double nu, Regime regime, double lambda, double mu)
        : E_(E), nu_(nu), regime_(regime), lambda_(lambda), mu_(mu) {}

    double E_, nu_;
    Regime regime_;
    double lambda_, mu_;
};

// Symmetric tensor stored by its upper triangle in Voigt order:
// Dim 2: xx, yy, xy.  Dim 3: xx, yy, zz, yz, xz, xy.
template <int Dim>
struct SymmetricTensor {
    static constexpr int size = Dim * (Dim + 1) / 2;
    std::array<double, size> v{};

    static int index(int i, int j);
    double operator()(int i, int j) const { return v[index(i, j)]; }
    double &operator()(int i, int j) { return v[index(i, j)]; }
    double trace() const;
    // Double contraction a : b.
    double contract(const SymmetricTensor &o) const;
    Eigen::Matrix<double, Dim, Dim> matrix() const;
    static SymmetricTensor from_matrix(const Eigen::Matrix<double, Dim, Dim> &m);
};

using Strain2 = SymmetricTensor<2>;
using Strain3 = SymmetricTensor<3>;
using Stress3 = SymmetricTensor<3>;

template <int Dim>
struct SpectralSplit {
    SymmetricTensor<Dim> eps_plus;
    SymmetricTensor<Dim> eps_minus;
    double phi_plus = 0.0;
    double phi_minus = 0.0;
    // Full 3D stresses; in plane strain zz = lambda tr(eps+-).
    Stress3 sigma0_plus;
    Stress3 sigma0_minus;
};

// Throws DomainError on non-finite entries, ConfigError on a regime mismatch.
SpectralSplit<2> spectral_split(const Strain2 &eps, const Elasticity &elast);
SpectralSplit<3> spectral_split(const Strain3 &eps, const Elasticity &elast);

// Undamaged energy 1/2 eps : D : eps.
double strain_energy(const Strain2 &eps, const Elasticity &elast);
double strain_energy(const Strain3 &eps, const Elasticity &elast);

// phi0 - phi+ - phi- = lambda tr(eps+) tr(eps-): zero only when the
// eigenvalues share a sign or lambda = 0.
template <int Dim>
double additivity_gap(const SpectralSplit<Dim> &split, const Elasticity &elast) {
    return elast.lame_lambda() * split.eps_plus.trace() * split.eps_minus.trace();
}

// g(eta) sigma0+ + sigma0-. Throws DomainError when eta < phi+.
template <int Dim>
Stress3 effective_stress(const DamageLaw &law, const SpectralSplit<Dim> &split, double eta);

// Voigt form with engineering shear: 3x3 in plane strain, 6x6 in 3D.
Eigen::MatrixXd elasticity_tensor(const Elasticity &elast);

// Plane-strain tensile operator T = D : d(eps+)/d(eps) in Voigt form with
// engineering shear, so that T * eps = sigma0+ (in-plane part).
Eigen::Matrix3d tensile_tangent(const Strain2 &eps, const Elasticity &elast);

// Plane-strain stress from W = g phi0 + (1 - g) phi-, g frozen:
// sigma = g D eps + (1 - g) dphi-/deps. Equals g sigma0+ + sigma0- except for
// the term (1 - g) lambda tr(eps-) on the tensile eigendirections, which is
// nonzero only for mixed-sign principal strains with nu != 0. W is convex
// in eps for every g in [0, 1]. Returns {sxx, syy, sxy}.
Eigen::Vector3d variational_stress(const Strain2 &eps, const Elasticity &elast, double g);
// Its Jacobian (Voigt, engineering shear); symmetric, and
// variational_tangent * eps == variational_stress.
Eigen::Matrix3d variational_tangent(const Strain2 &eps, const Elasticity &elast, double g);
// W itself
double variational_energy(const Strain2 &eps, const Elasticity &elast, double g);

} // namespace cdfdamage

#endif
