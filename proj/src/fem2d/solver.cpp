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
#include "cdfdamage/fem2d/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseCholesky>

#include "cdfdamage/csv.hpp"
#include "cdfdamage/errors.hpp"
#include "cdfdamage/fem2d/vtk.hpp"
#include "cdfdamage/kernels.hpp"

namespace cdfdamage::fem2d {

namespace {

using Mat38 = Eigen::Matrix<double, 3, 8>;
using Mat88 = Eigen::Matrix<double, 8, 8>;
using Vec8 = Eigen::Matrix<double, 8, 1>;

constexpr int kGauss = 4;

struct GaussGeometry {
    Mat38 B; // engineering shear in row 2
    double wdet = 0.0;
};

GaussGeometry gauss_geometry(const Mesh &m, const std::array<int, 4> &el, int q) {
    const double g = 1.0 / std::sqrt(3.0);
    const double xi = (q == 1 || q == 2) ? g : -g;
    const double et = (q >= 2) ? g : -g;
    const double dxi[4] = {-(1 - et) / 4, (1 - et) / 4, (1 + et) / 4, -(1 + et) / 4};
    const double det[4] = {-(1 - xi) / 4, -(1 + xi) / 4, (1 + xi) / 4, (1 - xi) / 4};
    Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
    for (int a = 0; a < 4; ++a) {
        J(0, 0) += dxi[a] * m.x[el[a]];
        J(0, 1) += dxi[a] * m.y[el[a]];
        J(1, 0) += det[a] * m.x[el[a]];
        J(1, 1) += det[a] * m.y[el[a]];
    }
    const double dJ = J.determinant();
    if (!(dJ > 0.0)) throw DomainError("mesh: non-positive Jacobian");
    const Eigen::Matrix2d Ji = J.inverse();
    GaussGeometry gg;
    gg.B.setZero();
    for (int a = 0; a < 4; ++a) {
        const double dx = Ji(0, 0) * dxi[a] + Ji(0, 1) * det[a];
        const double dy = Ji(1, 0) * dxi[a] + Ji(1, 1) * det[a];
        gg.B(0, 2 * a) = dx;
        gg.B(1, 2 * a + 1) = dy;
        gg.B(2, 2 * a) = dy;
        gg.B(2, 2 * a + 1) = dx;
    }
    gg.wdet = dJ; // unit weights
    return gg;
}

} // namespace

struct Solver::Impl {
    Mesh mesh;
    Elasticity elast;
    DamageLaw law;
    SolverSettings settings;
    bool damage = true;

    Eigen::Matrix3d D;
    std::vector<GaussGeometry> geo;     // ne * 4
    std::vector<std::array<int, 8>> dofs;
    Eigen::SparseMatrix<double> K;
    std::vector<int> slot;              // ne * 64 value positions
    std::vector<int> fixed_slots;       // entries in constrained rows or columns
    std::vector<int> diag_slots;        // diagonal of constrained rows
    std::vector<int> fixed_dofs;
    std::vector<char> is_fixed;
    std::vector<double> unit;
    std::vector<int> reaction_dofs;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;

    Eigen::VectorXd u;   // converged
    double u_top = 0.0;
    std::vector<double> eta;   // converged history
    double work = 0.0;
    double last_reaction = 0.0;
    int step = 0;

    // scratch per Gauss point
    std::vector<double> exx, eyy, exy, phi_p, phi_m, eta_trial, g;

    Impl(Mesh m, const Elasticity &e, const DamageLaw &l, SolverSettings s, const std::vector<Constraint> &constraints,
            std::vector<int> rdofs)
        : mesh(std::move(m)), elast(e), law(l), settings(s), reaction_dofs(std::move(rdofs)) {
        if (elast.regime() != Regime::PlaneStrain) throw ConfigError("fem2d requires plane strain");
        D = elasticity_tensor(elast);
        const int ne = mesh.element_count();
        const int nn = mesh.node_count();
        const int ndof = 2 * nn;
        geo.resize(static_cast<std::size_t>(ne) * kGauss);
        dofs.resize(ne);
        for (int e = 0; e < ne; ++e) {
            for (int a = 0; a < 4; ++a) {
                dofs[e][2 * a] = 2 * mesh.elements[e][a];
                dofs[e][2 * a + 1] = 2 * mesh.elements[e][a] + 1;
            }
            for (int q = 0; q < kGauss; ++q)
                geo[e * kGauss + q] = gauss_geometry(mesh, mesh.elements[e], q);
        }
        // sparsity
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<std::size_t>(ne) * 64);
        for (int e = 0; e < ne; ++e)
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    trip.emplace_back(dofs[e][i], dofs[e][j], 1.0);
        K.resize(ndof, ndof);
        K.setFromTriplets(trip.begin(), trip.end());
        K.makeCompressed();
        auto find_slot = [&](int r, int c) {
            const int *inner = K.innerIndexPtr();
            const int b = K.outerIndexPtr()[c], en = K.outerIndexPtr()[c + 1];
            const int *p = std::lower_bound(inner + b, inner + en, r);
            return static_cast<int>(p - inner);
        };
        slot.resize(static_cast<std::size_t>(ne) * 64);
        for (int e = 0; e < ne; ++e)
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    slot[e * 64 + i * 8 + j] = find_slot(dofs[e][i], dofs[e][j]);

        // Dirichlet rows
        is_fixed.assign(ndof, 0);
        unit.assign(ndof, 0.0);
        for (const auto &c : constraints) {
            if (c.dof < 0 || c.dof >= ndof) throw ConfigError("constraint dof out of range");
            is_fixed[c.dof] = 1;
            unit[c.dof] = c.unit_value;
        }
        for (int d : reaction_dofs)
            if (d < 0 || d >= ndof) throw ConfigError("reaction dof out of range");
        for (int d = 0; d < ndof; ++d)
            if (is_fixed[d]) {
                fixed_dofs.push_back(d);
                diag_slots.push_back(find_slot(d, d));
            }
        for (int c = 0; c < ndof; ++c)
            for (int p = K.outerIndexPtr()[c]; p < K.outerIndexPtr()[c + 1]; ++p)
                if (is_fixed[c] || is_fixed[K.innerIndexPtr()[p]]) fixed_slots.push_back(p);
        ldlt.analyzePattern(K);

        u = Eigen::VectorXd::Zero(ndof);
        const std::size_t ng = geo.size();
        eta.assign(ng, 0.0);
        for (auto *v : {&exx, &eyy, &exy, &phi_p, &phi_m, &eta_trial, &g})
            v->assign(ng, 0.0);
    }

    void strains(const Eigen::VectorXd &uu) {
        const int ne = mesh.element_count();
        for (int e = 0; e < ne; ++e) {
            Vec8 ue;
            for (int i = 0; i < 8; ++i)
                ue[i] = uu[dofs[e][i]];
            for (int q = 0; q < kGauss; ++q) {
                const std::size_t k = static_cast<std::size_t>(e) * kGauss + q;
                const Eigen::Vector3d eps = geo[k].B * ue;
                exx[k] = eps[0];
                eyy[k] = eps[1];
                exy[k] = 0.5 * eps[2];
            }
        }
    }

    // phi+, trial history and degradation from the strains in scratch
    void update_damage_fields() {
        const std::size_t ng = geo.size();
        kernels::tensile_energy(exx.data(), eyy.data(), exy.data(), ng, elast.lame_lambda(), elast.shear_modulus(),
                phi_p.data(), phi_m.data());
        kernels::history_update(eta.data(), phi_p.data(), ng, eta_trial.data());
        for (std::size_t k = 0; k < ng; ++k)
            g[k] = damage ? law.degradation(eta_trial[k]) : 1.0;
    }

    // Jacobian of the frozen-g stress; also a secant since the stress is 1-homogeneous
    Eigen::Matrix3d secant_at(double xx, double yy, double xy, double gk) const {
        if (gk >= 1.0) return D;
        Strain2 s;
        s.v = {xx, yy, xy};
        return variational_tangent(s, elast, std::max(gk, settings.residual_stiffness));
    }

    Eigen::Matrix3d secant(std::size_t k) const { return secant_at(exx[k], eyy[k], exy[k], g[k]); }

    // Stiffness with symmetric elimination of the prescribed dofs; b gets
    // -K_fc u_c on free rows and the prescribed values on fixed ones.
    void assemble(const Eigen::VectorXd &prescribed, Eigen::VectorXd &b) {
        double *val = K.valuePtr();
        std::fill(val, val + K.nonZeros(), 0.0);
        const int ne = mesh.element_count();
        for (int e = 0; e < ne; ++e) {
            Mat88 ke = Mat88::Zero();
            for (int q = 0; q < kGauss; ++q) {
                const std::size_t k = static_cast<std::size_t>(e) * kGauss + q;
                const auto &gg = geo[k];
                ke.noalias() += gg.B.transpose() * (secant(k) * gg.B) * gg.wdet;
            }
            const int *s = &slot[static_cast<std::size_t>(e) * 64];
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j)
                    val[s[i * 8 + j]] += ke(i, j);
        }
        b = -(K * prescribed);
        for (int d : fixed_dofs)
            b[d] = prescribed[d];
        for (int p : fixed_slots)
            val[p] = 0.0;
        for (int p : diag_slots)
            val[p] = 1.0;
    }

    Eigen::VectorXd rhs(double ut) const {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(u.size());
        for (int d : fixed_dofs)
            b[d] = unit[d] * ut;
        return b;
    }

    // Top reaction from the stresses of the fields in scratch.
    double reaction_from_scratch(const Eigen::VectorXd &uu) const {
        const int ne = mesh.element_count();
        Eigen::VectorXd f = Eigen::VectorXd::Zero(uu.size());
        for (int e = 0; e < ne; ++e) {
            Vec8 fe = Vec8::Zero();
            for (int q = 0; q < kGauss; ++q) {
                const std::size_t k = static_cast<std::size_t>(e) * kGauss + q;
                const Eigen::Vector3d eps(exx[k], eyy[k], 2.0 * exy[k]);
                fe.noalias() += geo[k].B.transpose() * (secant(k) * eps) * geo[k].wdet;
            }
            for (int i = 0; i < 8; ++i)
                f[dofs[e][i]] += fe[i];
        }
        double r = 0.0;
        for (int d : reaction_dofs)
            r += f[d];
        return r;
    }

    double stored_energy_scratch() const {
        double E = 0.0;
        for (std::size_t k = 0; k < geo.size(); ++k) {
            const Eigen::Vector3d eps(exx[k], eyy[k], 2.0 * exy[k]);
            E += 0.5 * eps.dot(secant(k) * eps) * geo[k].wdet;
        }
        return E;
    }

    LoadStepResult solve(double ut) {
        LoadStepResult res;
        res.u_top = ut;
        const Eigen::VectorXd prescribed = rhs(ut);
        Eigen::VectorXd b;
        Eigen::VectorXd uk = u;
        strains(uk);
        update_damage_fields();
        bool converged = false;
        int it = 0;
        for (it = 1; it <= settings.max_iterations; ++it) {
            assemble(prescribed, b);
            ldlt.factorize(K);
            if (ldlt.info() != Eigen::Success) throw ConvergenceError("sparse factorization failed");
            Eigen::VectorXd un = ldlt.solve(b);
            const double nrm = un.norm();
            const double diff = (un - uk).norm();
            converged = nrm == 0.0 ? diff == 0.0 : diff <= settings.tolerance * nrm;
            uk = std::move(un);
            strains(uk);
            update_damage_fields();
            if (converged) break;
        }
        res.iterations = std::min(it, settings.max_iterations);
        res.converged = converged;
        if (!converged) {
            // restore scratch to the accepted state
            strains(u);
            update_damage_fields();
            return res;
        }
        const double r = reaction_from_scratch(uk);
        work += 0.5 * (last_reaction + r) * (ut - u_top);
        last_reaction = r;
        u = std::move(uk);
        u_top = ut;
        eta = eta_trial;
        ++step;
        res.step = step;
        res.reaction = r;
        double dmax = 0.0;
        for (double gk : g)
            dmax = std::max(dmax, 1.0 - gk);
        res.max_damage = dmax;
        res.stored_energy = stored_energy_scratch();
        res.external_work = work;
        return res;
    }
};

std::vector<Constraint> sent_constraints(const Mesh &mesh, const BoundarySettings &bc) {
    std::vector<Constraint> c;
    for (int n : mesh.bottom) {
        c.push_back({2 * n, 0.0});
        c.push_back({2 * n + 1, 0.0});
    }
    for (int n : mesh.top) {
        if (bc.top_ux_fixed) c.push_back({2 * n, 0.0});
        c.push_back({2 * n + 1, 1.0});
    }
    return c;
}

std::vector<int> top_reaction_dofs(const Mesh &mesh) {
    std::vector<int> d;
    for (int n : mesh.top)
        d.push_back(2 * n + 1);
    return d;
}

Solver::Solver(Mesh mesh, const Elasticity &elast, const DamageLaw &law, SolverSettings settings,
        BoundarySettings bc) {
    auto c = sent_constraints(mesh, bc);
    auto r = top_reaction_dofs(mesh);
    impl_ = std::make_unique<Impl>(std::move(mesh), elast, law, settings, c, std::move(r));
}

Solver::Solver(Mesh mesh, const Elasticity &elast, const DamageLaw &law, SolverSettings settings,
        std::vector<Constraint> constraints, std::vector<int> reaction_dofs)
    : impl_(std::make_unique<Impl>(std::move(mesh), elast, law, settings, constraints, std::move(reaction_dofs))) {}
Solver::~Solver() = default;
Solver::Solver(Solver &&) noexcept = default;
Solver &Solver::operator=(Solver &&) noexcept = default;

LoadStepResult Solver::solve_step(double u_top) {
    if (!std::isfinite(u_top)) throw DomainError("solve_step: non-finite displacement");
    return impl_->solve(u_top);
}

void Solver::set_damage_enabled(bool on) {
    impl_->damage = on;
    impl_->strains(impl_->u);
    impl_->update_damage_fields();
}

const Mesh &Solver::mesh() const { return impl_->mesh; }
int Solver::dof_count() const { return static_cast<int>(impl_->u.size()); }
double Solver::u_top() const { return impl_->u_top; }
const Eigen::VectorXd &Solver::displacement() const { return impl_->u; }
const std::vector<double> &Solver::eta() const { return impl_->eta; }

std::vector<double> Solver::gauss_damage() const {
    std::vector<double> d(impl_->eta.size());
    for (std::size_t k = 0; k < d.size(); ++k)
        d[k] = impl_->damage ? impl_->law.damage(impl_->eta[k]) : 0.0;
    return d;
}

std::vector<std::array<double, 3>> Solver::gauss_strain() const {
    Impl &im = *impl_;
    im.strains(im.u);
    std::vector<std::array<double, 3>> out(im.exx.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = {im.exx[k], im.eyy[k], im.exy[k]};
    return out;
}

std::vector<double> Solver::element_damage_max() const {
    const auto d = gauss_damage();
    std::vector<double> out(impl_->mesh.element_count(), 0.0);
    for (std::size_t k = 0; k < d.size(); ++k)
        out[k / kGauss] = std::max(out[k / kGauss], d[k]);
    return out;
}

std::vector<double> Solver::nodal_damage() const {
    const auto d = gauss_damage();
    const Mesh &m = impl_->mesh;
    std::vector<double> sum(m.node_count(), 0.0), cnt(m.node_count(), 0.0);
    for (int e = 0; e < m.element_count(); ++e) {
        double mean = 0.0;
        for (int q = 0; q < kGauss; ++q)
            mean += 0.25 * d[static_cast<std::size_t>(e) * kGauss + q];
        for (int n : m.elements[e]) {
            sum[n] += mean;
            cnt[n] += 1.0;
        }
    }
    for (std::size_t i = 0; i < sum.size(); ++i)
        sum[i] = cnt[i] > 0.0 ? sum[i] / cnt[i] : 0.0;
    return sum;
}

double Solver::reaction_for(const Eigen::VectorXd &u) const {
    if (u.size() != impl_->u.size()) throw DomainError("reaction_for: wrong vector size");
    Impl &im = *impl_;
    im.strains(u);
    // degradation frozen at the converged history
    const auto g_saved = im.g;
    for (std::size_t k = 0; k < im.g.size(); ++k)
        im.g[k] = im.damage ? im.law.degradation(im.eta[k]) : 1.0;
    const double r = im.reaction_from_scratch(u);
    im.g = g_saved;
    im.strains(im.u);
    im.update_damage_fields();
    return r;
}

double default_ell_factor(LawKind kind) {
    switch (kind) {
    case LawKind::Exponential: return 1.0462;
    case LawKind::Cauchy: return 1.0955;
    case LawKind::Logistic: return 1.4203;
    case LawKind::HalfNormal: return 1.5071;
    case LawKind::Gudermannian: return 1.3505;
    default: break;
    }
    throw ConfigError("no default ell factor for law '" + std::string(to_string(kind))
            + "'; set law.ell or law.ell_factor");
}

double resolve_ell(const SentConfig &cfg, double dx) {
    if (cfg.ell > 0.0) return cfg.ell;
    const double f = cfg.ell_factor > 0.0 ? cfg.ell_factor : default_ell_factor(cfg.law);
    return f * dx;
}

int count_peaks(const std::vector<LoadStepResult> &steps, double fraction) {
    double peak = 0.0;
    for (const auto &s : steps)
        peak = std::max(peak, s.reaction);
    if (peak <= 0.0) return 0;
    // a peak counts once the curve drops 5% of the global peak below it
    const double prominence = 0.05 * peak;
    int count = 0;
    double run_max = -1.0;
    bool armed = false;
    for (const auto &s : steps) {
        if (s.reaction > run_max) {
            run_max = s.reaction;
            armed = run_max >= fraction * peak;
        } else if (armed && s.reaction < run_max - prominence) {
            ++count;
            armed = false;
            run_max = s.reaction;
        } else if (!armed) {
            run_max = std::min(run_max, s.reaction);
        }
    }
    return count;
}

SentResult run_sent(const SentConfig &cfg, const std::string &out_dir,
        const std::function<void(const LoadStepResult &)> &progress) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto &ld = cfg.loading;
    if (!(ld.increment > 0.0) || !(ld.fine_increment > 0.0) || !(ld.max_displacement > 0.0))
        throw ConfigError("loading increments and max_displacement must be positive");
    Mesh mesh = build_sent_mesh(cfg.mesh);
    SentResult out;
    out.elements = mesh.element_count();
    out.nodes = mesh.node_count();
    out.ell = resolve_ell(cfg, mesh.dx);
    const auto elast = Elasticity::make(cfg.E, cfg.nu, Regime::PlaneStrain);
    const auto law = DamageLaw::make(cfg.law, cfg.Gc, out.ell, cfg.n);
    Solver solver(std::move(mesh), elast, law, cfg.solver, cfg.boundary);
    solver.set_damage_enabled(cfg.damage);

    std::unique_ptr<CsvWriter> curve, energy;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::string cpath = out_dir + "/load_displacement.csv";
        const std::string epath = out_dir + "/energy.csv";
        curve = std::make_unique<CsvWriter>(cpath,
                std::vector<std::string>{"step", "u_top_mm", "reaction_kN", "max_damage", "iterations"});
        energy = std::make_unique<CsvWriter>(epath,
                std::vector<std::string>{"step", "u_top_mm", "stored_energy_kNmm", "external_work_kNmm"});
        out.files.push_back(cpath);
        out.files.push_back(epath);
    }
    auto snapshot = [&](const std::string &tag) {
        if (out_dir.empty() || !cfg.output.vtk) return;
        const std::string p = out_dir + "/sent_" + tag + ".vtk";
        write_vtk(p, solver.mesh(), solver.displacement(), solver.nodal_damage(), solver.element_damage_max(),
                "cdfdamage sent " + tag);
        out.files.push_back(p);
    };

    double u = 0.0;
    out.stop_reason = "max_displacement reached";
    Eigen::VectorXd u_at_peak;
    std::vector<double> nodal_at_peak, elem_at_peak;
    while (u < ld.max_displacement - 1e-15) {
        double du = u + 1e-15 < ld.switch_displacement ? ld.increment : ld.fine_increment;
        if (u < ld.switch_displacement && u + du > ld.switch_displacement) du = ld.switch_displacement - u;
        du = std::min(du, ld.max_displacement - u);
        // back onto the increment grid, so u_top does not drift by summation
        const double grid = du;
        auto target = [&](double t) {
            const double k = std::round(t / grid);
            return std::fabs(t - k * grid) < 1e-6 * grid ? k * grid : t;
        };
        LoadStepResult r;
        int halvings = 0;
        while (true) {
            r = solver.solve_step(target(u + du));
            if (r.converged) break;
            if (++halvings > cfg.solver.max_halvings) {
                std::ostringstream os;
                os << "staggered iteration did not converge at u_top=" << u + du << " mm after "
                   << cfg.solver.max_halvings << " halvings of the increment";
                throw ConvergenceError(os.str());
            }
            du *= 0.5;
        }
        u = r.u_top;
        out.steps.push_back(r);
        if (curve) {
            curve->row({double(r.step), r.u_top, r.reaction, r.max_damage, double(r.iterations)});
            energy->row({double(r.step), r.u_top, r.stored_energy, r.external_work});
        }
        if (progress) progress(r);
        if (r.reaction > out.peak_reaction) {
            out.peak_reaction = r.reaction;
            out.peak_u = r.u_top;
            out.peak_step = r.step;
            if (!out_dir.empty() && cfg.output.vtk) {
                u_at_peak = solver.displacement();
                nodal_at_peak = solver.nodal_damage();
                elem_at_peak = solver.element_damage_max();
            }
        }
        if (cfg.output.vtk_every > 0 && r.step % cfg.output.vtk_every == 0) snapshot("step" + std::to_string(r.step));
        if (out.peak_reaction > 0.0 && r.reaction < ld.stop_fraction * out.peak_reaction) {
            out.stop_reason = "softened below stop_fraction of the peak";
            break;
        }
    }
    out.completed = true;
    if (!out_dir.empty() && cfg.output.vtk && u_at_peak.size() > 0) {
        const std::string p = out_dir + "/sent_peak.vtk";
        write_vtk(p, solver.mesh(), u_at_peak, nodal_at_peak, elem_at_peak, "cdfdamage sent peak");
        out.files.push_back(p);
    }
    snapshot("final");
    out.final_element_damage = solver.element_damage_max();
    out.band_spans_ligament = band_spans_ligament(solver.mesh(), out.final_element_damage, 0.9);
    out.reaction_peaks = count_peaks(out.steps);
    out.final_reaction_fraction =
            out.peak_reaction > 0.0 && !out.steps.empty() ? out.steps.back().reaction / out.peak_reaction : 0.0;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace cdfdamage::fem2d
