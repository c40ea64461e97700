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
#include "cdfdamage/continuum.hpp"

#include <cmath>

#include "cdfdamage/errors.hpp"

namespace cdfdamage {

namespace {

double pos(double x) {
    return x > 0.0 ? x : 0.0;
}

double heaviside(double x) {
    return x > 0.0 ? 1.0 : 0.0;
}

template <int Dim>
void check_finite(const SymmetricTensor<Dim> &t) {
    for (double v : t.v)
        if (!std::isfinite(v)) throw DomainError("strain has non-finite entries");
}

template <int Dim>
void fill_energies(SpectralSplit<Dim> &s, const Elasticity &el) {
    const double lam = el.lame_lambda();
    const double mu = el.shear_modulus();
    const double trp = s.eps_plus.trace();
    const double trm = s.eps_minus.trace();
    s.phi_plus = 0.5 * lam * trp * trp + mu * s.eps_plus.contract(s.eps_plus);
    s.phi_minus = 0.5 * lam * trm * trm + mu * s.eps_minus.contract(s.eps_minus);
    s.sigma0_plus = Stress3{};
    s.sigma0_minus = Stress3{};
    for (int i = 0; i < 3; ++i) {
        s.sigma0_plus(i, i) = lam * trp;
        s.sigma0_minus(i, i) = lam * trm;
    }
    for (int i = 0; i < Dim; ++i)
        for (int j = i; j < Dim; ++j) {
            s.sigma0_plus(i, j) += 2.0 * mu * s.eps_plus(i, j);
            s.sigma0_minus(i, j) += 2.0 * mu * s.eps_minus(i, j);
        }
}

} // namespace

Elasticity Elasticity::make(double E, double nu, Regime regime) {
    if (!std::isfinite(E) || !(E > 0.0)) throw ConfigError("elasticity: E must be positive");
    if (!std::isfinite(nu) || !(nu > -1.0 && nu < 0.5))
        throw ConfigError("elasticity: nu must lie in (-1, 0.5)");
    const double lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    const double mu = E / (2.0 * (1.0 + nu));
    return Elasticity(E, nu, regime, lambda, mu);
}

template <>
int SymmetricTensor<2>::index(int i, int j) {
    if (i == j) return i;
    return 2;
}

template <>
int SymmetricTensor<3>::index(int i, int j) {
    if (i == j) return i;
    if (i > j) std::swap(i, j);
    if (i == 1) return 3;          // yz
    return j == 2 ? 4 : 5;         // xz, xy
}

template <int Dim>
double SymmetricTensor<Dim>::trace() const {
    double t = 0.0;
    for (int i = 0; i < Dim; ++i)
        t += v[i];
    return t;
}

template <int Dim>
double SymmetricTensor<Dim>::contract(const SymmetricTensor &o) const {
    double s = 0.0;
    for (int i = 0; i < Dim; ++i)
        s += v[i] * o.v[i];
    for (int i = Dim; i < size; ++i)
        s += 2.0 * v[i] * o.v[i];
    return s;
}

template <int Dim>
Eigen::Matrix<double, Dim, Dim> SymmetricTensor<Dim>::matrix() const {
    Eigen::Matrix<double, Dim, Dim> m;
    for (int i = 0; i < Dim; ++i)
        for (int j = 0; j < Dim; ++j)
            m(i, j) = (*this)(i, j);
    return m;
}

template <int Dim>
SymmetricTensor<Dim> SymmetricTensor<Dim>::from_matrix(const Eigen::Matrix<double, Dim, Dim> &m) {
    SymmetricTensor t;
    for (int i = 0; i < Dim; ++i)
        for (int j = i; j < Dim; ++j)
            t(i, j) = 0.5 * (m(i, j) + m(j, i));
    return t;
}

template struct SymmetricTensor<2>;
template struct SymmetricTensor<3>;

SpectralSplit<2> spectral_split(const Strain2 &eps, const Elasticity &elast) {
    if (elast.regime() != Regime::PlaneStrain)
        throw ConfigError("spectral_split: 2x2 strain requires the plane-strain regime");
    check_finite(eps);
    SpectralSplit<2> s;
    const double m = 0.5 * (eps.v[0] + eps.v[1]);
    const double d = 0.5 * (eps.v[0] - eps.v[1]);
    const double r = std::hypot(d, eps.v[2]);
    const double l1 = m + r;
    const double l2 = m - r;
    if (l2 >= 0.0) {
        s.eps_plus = eps;
    } else if (l1 <= 0.0) {
        s.eps_minus = eps;
    } else {
        // eps+ = l1 (eps - l2 I) / (l1 - l2)
        const double f = l1 / (2.0 * r);
        s.eps_plus.v = {f * (eps.v[0] - l2), f * (eps.v[1] - l2), f * eps.v[2]};
        for (int i = 0; i < 3; ++i)
            s.eps_minus.v[i] = eps.v[i] - s.eps_plus.v[i];
    }
    fill_energies(s, elast);
    return s;
}

SpectralSplit<3> spectral_split(const Strain3 &eps, const Elasticity &elast) {
    if (elast.regime() != Regime::ThreeD)
        throw ConfigError("spectral_split: 3x3 strain requires the 3D regime");
    check_finite(eps);
    SpectralSplit<3> s;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(eps.matrix());
    const Eigen::Vector3d lam = es.eigenvalues();
    if (lam.minCoeff() >= 0.0) {
        s.eps_plus = eps;
    } else if (lam.maxCoeff() <= 0.0) {
        s.eps_minus = eps;
    } else {
        Eigen::Matrix3d ep = Eigen::Matrix3d::Zero();
        for (int i = 0; i < 3; ++i) {
            const Eigen::Vector3d n = es.eigenvectors().col(i);
            ep += pos(lam(i)) * n * n.transpose();
        }
        s.eps_plus = Strain3::from_matrix(ep);
        for (int i = 0; i < 6; ++i)
            s.eps_minus.v[i] = eps.v[i] - s.eps_plus.v[i];
    }
    fill_energies(s, elast);
    return s;
}

double strain_energy(const Strain2 &eps, const Elasticity &elast) {
    const double tr = eps.trace();
    return 0.5 * elast.lame_lambda() * tr * tr + elast.shear_modulus() * eps.contract(eps);
}

double strain_energy(const Strain3 &eps, const Elasticity &elast) {
    const double tr = eps.trace();
    return 0.5 * elast.lame_lambda() * tr * tr + elast.shear_modulus() * eps.contract(eps);
}

template <int Dim>
Stress3 effective_stress(const DamageLaw &law, const SpectralSplit<Dim> &split, double eta) {
    if (std::isnan(eta) || eta < split.phi_plus * (1.0 - 1e-12))
        throw DomainError("effective_stress: eta below the current tensile energy");
    const double g = law.degradation(eta);
    Stress3 out;
    for (int i = 0; i < Stress3::size; ++i)
        out.v[i] = g * split.sigma0_plus.v[i] + split.sigma0_minus.v[i];
    return out;
}

template Stress3 effective_stress<2>(const DamageLaw &, const SpectralSplit<2> &, double);
template Stress3 effective_stress<3>(const DamageLaw &, const SpectralSplit<3> &, double);

Eigen::MatrixXd elasticity_tensor(const Elasticity &elast) {
    const double lam = elast.lame_lambda();
    const double mu = elast.shear_modulus();
    const int nd = elast.regime() == Regime::PlaneStrain ? 2 : 3;
    const int n = nd == 2 ? 3 : 6;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < nd; ++i) {
        for (int j = 0; j < nd; ++j)
            D(i, j) = lam;
        D(i, i) += 2.0 * mu;
    }
    for (int i = nd; i < n; ++i)
        D(i, i) = mu;
    return D;
}

Eigen::Matrix3d tensile_tangent(const Strain2 &eps, const Elasticity &elast) {
    const double lam = elast.lame_lambda();
    const double mu = elast.shear_modulus();
    const double m = 0.5 * (eps.v[0] + eps.v[1]);
    const double d = 0.5 * (eps.v[0] - eps.v[1]);
    const double r = std::hypot(d, eps.v[2]);
    const double l1 = m + r;
    const double l2 = m - r;

    // Q = d(eps+)/d(eps) in Mandel form
    Eigen::Matrix3d Q;
    if (l2 > 0.0) {
        Q.setIdentity();
    } else if (l1 <= 0.0) {
        Q.setZero();
    } else if (r <= 1e-14 * std::fabs(m)) {
        Q = heaviside(m) * Eigen::Matrix3d::Identity();
    } else {
        const double theta = 0.5 * std::atan2(eps.v[2], d);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const double rt2 = std::sqrt(2.0);
        Eigen::Matrix3d R;
        R << c * c, s * s, -rt2 * c * s,
             s * s, c * c, rt2 * c * s,
             rt2 * c * s, -rt2 * c * s, c * c - s * s;
        const double kappa = (pos(l1) - pos(l2)) / (l1 - l2);
        const Eigen::Vector3d diag(heaviside(l1), heaviside(l2), kappa);
        Q = R * diag.asDiagonal() * R.transpose();
    }
    Eigen::Matrix3d D;
    D << lam + 2.0 * mu, lam, 0.0,
         lam, lam + 2.0 * mu, 0.0,
         0.0, 0.0, 2.0 * mu;
    Eigen::Matrix3d C = D * Q;
    // Mandel -> engineering Voigt: sigma_xy = C_M row / sqrt2, gamma = sqrt2 * eps_M
    const double rt2 = std::sqrt(2.0);
    for (int j = 0; j < 3; ++j)
        C(2, j) /= rt2;
    for (int i = 0; i < 3; ++i)
        C(i, 2) /= rt2;
    return C;
}

namespace {

struct Principal {
    double l1, l2, c, s;
    bool distinct;
};

Principal principal_2d(const Strain2 &eps) {
    const double m = 0.5 * (eps.v[0] + eps.v[1]);
    const double d = 0.5 * (eps.v[0] - eps.v[1]);
    const double r = std::hypot(d, eps.v[2]);
    const double theta = 0.5 * std::atan2(eps.v[2], d);
    return {m + r, m - r, std::cos(theta), std::sin(theta), r > 1e-14 * std::fabs(m)};
}

// principal values of dphi-/deps and the eigenvalue Hessian of phi-
void compressive_principal(double l1, double l2, double lam, double mu, double sig[2], double jac[2][2]) {
    const double l[2] = {l1, l2};
    const double tn = std::min(l1, 0.0) + std::min(l2, 0.0);
    for (int i = 0; i < 2; ++i) {
        const double hi = l[i] < 0.0 ? 1.0 : 0.0;
        sig[i] = hi * (lam * tn + 2.0 * mu * l[i]);
        for (int j = 0; j < 2; ++j) {
            const double hj = l[j] < 0.0 ? 1.0 : 0.0;
            jac[i][j] = lam * hi * hj + (i == j ? 2.0 * mu * hi : 0.0);
        }
    }
}

Eigen::Matrix3d mandel_to_voigt(Eigen::Matrix3d C) {
    const double rt2 = std::sqrt(2.0);
    for (int j = 0; j < 3; ++j)
        C(2, j) /= rt2;
    for (int i = 0; i < 3; ++i)
        C(i, 2) /= rt2;
    return C;
}

} // namespace

Eigen::Vector3d variational_stress(const Strain2 &eps, const Elasticity &elast, double g) {
    const Principal p = principal_2d(eps);
    double sig[2], jac[2][2];
    compressive_principal(p.l1, p.l2, elast.lame_lambda(), elast.shear_modulus(), sig, jac);
    const double c2 = p.c * p.c, s2 = p.s * p.s, cs = p.c * p.s;
    const Eigen::Vector3d sm(sig[0] * c2 + sig[1] * s2, sig[0] * s2 + sig[1] * c2, (sig[0] - sig[1]) * cs);
    const double lam = elast.lame_lambda(), mu = elast.shear_modulus();
    const double tr = eps.v[0] + eps.v[1];
    const Eigen::Vector3d s0(lam * tr + 2.0 * mu * eps.v[0], lam * tr + 2.0 * mu * eps.v[1], 2.0 * mu * eps.v[2]);
    return g * s0 + (1.0 - g) * sm;
}

Eigen::Matrix3d variational_tangent(const Strain2 &eps, const Elasticity &elast, double g) {
    const Principal p = principal_2d(eps);
    double sig[2], jac[2][2];
    compressive_principal(p.l1, p.l2, elast.lame_lambda(), elast.shear_modulus(), sig, jac);
    // principal-frame shear stiffness; at l1 == l2 its limit jac11 - jac12
    const double shear = p.distinct ? (sig[0] - sig[1]) / (p.l1 - p.l2) : jac[0][0] - jac[0][1];
    const double c = p.c, s = p.s, rt2 = std::sqrt(2.0);
    Eigen::Matrix3d R;
    R << c * c, s * s, -rt2 * c * s,
         s * s, c * c, rt2 * c * s,
         rt2 * c * s, -rt2 * c * s, c * c - s * s;
    Eigen::Matrix3d A;
    A << jac[0][0], jac[0][1], 0.0,
         jac[1][0], jac[1][1], 0.0,
         0.0, 0.0, shear;
    const Eigen::Matrix3d Hm = mandel_to_voigt(R * A * R.transpose());
    const double lam = elast.lame_lambda(), mu = elast.shear_modulus();
    Eigen::Matrix3d D;
    D << lam + 2.0 * mu, lam, 0.0,
         lam, lam + 2.0 * mu, 0.0,
         0.0, 0.0, mu;
    return g * D + (1.0 - g) * Hm;
}

double variational_energy(const Strain2 &eps, const Elasticity &elast, double g) {
    const Principal p = principal_2d(eps);
    const double lam = elast.lame_lambda(), mu = elast.shear_modulus();
    const double n1 = std::min(p.l1, 0.0), n2 = std::min(p.l2, 0.0);
    const double phim = 0.5 * lam * (n1 + n2) * (n1 + n2) + mu * (n1 * n1 + n2 * n2);
    const double tr = eps.v[0] + eps.v[1];
    const double phi0 = 0.5 * lam * tr * tr
            + mu * (eps.v[0] * eps.v[0] + eps.v[1] * eps.v[1] + 2.0 * eps.v[2] * eps.v[2]);
    return g * phi0 + (1.0 - g) * phim;
}

} // namespace cdfdamage
