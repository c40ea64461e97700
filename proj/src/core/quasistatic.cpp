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
#include "cdfdamage/quasistatic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "cdfdamage/errors.hpp"

namespace cdfdamage {

namespace {

using Mask = std::uint64_t;

Mask mask_of(const std::vector<bool> &open) {
    Mask m = 0;
    for (std::size_t i = 0; i < open.size(); ++i)
        if (open[i]) m |= Mask{1} << i;
    return m;
}

// Smaller is better: cost, then crack count, then lowest indices.
bool better(double cost, Mask m, double best_cost, Mask best) {
    if (std::isinf(best_cost)) return cost < best_cost;
    const double tol = 1e-14 * std::max({1.0, std::fabs(cost), std::fabs(best_cost)});
    if (cost < best_cost - tol) return true;
    if (cost > best_cost + tol) return false;
    const int pc = std::popcount(m);
    const int pb = std::popcount(best);
    if (pc != pb) return pc < pb;
    // lowest differing bit set in m wins
    const Mask diff = m ^ best;
    if (diff == 0) return false;
    const Mask low = diff & (~diff + 1);
    return (m & low) != 0;
}

BarState build_state(const BarProblem &prob, double t, double g, Mask cracks) {
    const int N = prob.element_count;
    const double h = prob.bar_length / N;
    BarState s;
    s.time = t;
    s.boundary = g;
    s.open_jumps.assign(std::max(0, N - 1), false);
    s.jump_heights.assign(std::max(0, N - 1), 0.0);
    for (int i = 0; i < N - 1; ++i)
        s.open_jumps[i] = (cracks >> i) & 1;
    s.nodal_displacements.assign(N + 1, 0.0);
    if (cracks == 0) {
        s.stored_energy = intact_energy(prob, g, &s.element_strains);
        for (int i = 0; i < N; ++i)
            s.nodal_displacements[i + 1] = s.nodal_displacements[i] + h * s.element_strains[i];
        s.nodal_displacements[N] = g;
        // stationary strains share one stress; read it from the smallest strain
        const double e = *std::min_element(s.element_strains.begin(), s.element_strains.end());
        s.reaction = g == 0.0 ? 0.0 : prob.material.stress(e);
    } else {
        s.element_strains.assign(N, 0.0);
        const int first = std::countr_zero(cracks);
        s.jump_heights[first] = g;
        for (int i = first + 1; i <= N; ++i)
            s.nodal_displacements[i] = g;
        s.stored_energy = 0.0;
        s.reaction = 0.0;
    }
    return s;
}

double boundary_at(const BarProblem &prob, double t) {
    const double g = prob.program.at(t);
    if (!(g >= 0.0)) throw DomainError("boundary displacement must be >= 0");
    return g;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t step) {
    // splitmix64 of (seed, step)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (step + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

BoundaryProgram::BoundaryProgram(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
    if (times_.size() < 2 || times_.size() != values_.size())
        throw ConfigError("boundary program: need matching times/values with at least two points");
    if (times_.front() != 0.0) throw ConfigError("boundary program: first time must be 0");
    for (std::size_t i = 1; i < times_.size(); ++i)
        if (!(times_[i] > times_[i - 1])) throw ConfigError("boundary program: times must increase");
    for (double v : values_)
        if (!std::isfinite(v)) throw ConfigError("boundary program: values must be finite");
}

BoundaryProgram BoundaryProgram::ramp(double T, double g_end) {
    return BoundaryProgram({0.0, T}, {0.0, g_end});
}

double BoundaryProgram::at(double t) const {
    if (t <= times_.front()) return values_.front();
    if (t >= times_.back()) return values_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times_.begin());
    const double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
    return values_[i - 1] + w * (values_[i] - values_[i - 1]);
}

BarMaterial BarMaterial::from_law(const DamageLaw &law, double k) {
    if (!(k > 0.0)) throw ConfigError("bar material: k must be positive");
    BarMaterial m;
    m.energy = [law, k](double e) { return e >= 0.0 ? law.psi(0.5 * k * e * e) : 0.5 * k * e * e; };
    m.stress = [law, k](double e) { return effective_stress_1d(law, k, e); };
    m.description = law.describe();
    return m;
}

BarMaterial BarMaterial::from_cdf(const Distribution &F, double scale) {
    if (!(scale > 0.0)) throw ConfigError("bar material: cdf scale must be positive");
    BarMaterial m;
    m.energy = [F, scale](double e) { return survival_integral(F, 0.5 * scale * e * e) / scale; };
    m.stress = [F, scale](double e) { return e * (1.0 - F.half_line_cdf(0.5 * scale * e * e)); };
    m.description = std::string("cdf ") + std::string(to_string(F.kind()));
    return m;
}

BarMaterial BarMaterial::quadratic(double k) {
    if (!(k > 0.0)) throw ConfigError("bar material: k must be positive");
    BarMaterial m;
    m.energy = [k](double e) { return 0.5 * k * e * e; };
    m.stress = [k](double e) { return k * e; };
    m.description = "quadratic";
    return m;
}

void BarProblem::validate() const {
    if (element_count < 1 || element_count > 62) throw ConfigError("bar: element_count must lie in [1, 62]");
    if (!(bar_length > 0.0)) throw ConfigError("bar: bar_length must be positive");
    if (steps < 1) throw ConfigError("bar: steps must be >= 1");
    if (!(jump_cost > 0.0)) throw ConfigError("bar: jump_cost must be positive");
    if (!material.energy || !material.stress) throw ConfigError("bar: material not set");
}

int BarState::crack_count() const {
    return static_cast<int>(std::count(open_jumps.begin(), open_jumps.end(), true));
}

double intact_energy(const BarProblem &prob, double g, std::vector<double> *strains) {
    if (!(g >= 0.0)) throw DomainError("boundary displacement must be >= 0");
    const int N = prob.element_count;
    const double L = prob.bar_length;
    const double h = L / N;
    const double ebar = g / L;
    const auto &W = prob.material.energy;
    if (g == 0.0 || N == 1) {
        if (strains) strains->assign(N, ebar);
        return g == 0.0 ? 0.0 : L * W(ebar);
    }
    // N-1 elements at a, one at b = N ebar - (N-1) a, a in [0, ebar]
    auto E = [&](double a) { return h * ((N - 1) * W(a) + W(N * ebar - (N - 1) * a)); };
    const int samples = 256;
    int best_j = samples;
    double best_e = E(ebar);
    const double uniform = best_e;
    for (int j = 0; j < samples; ++j) {
        const double e = E(ebar * j / samples);
        if (e < best_e) {
            best_e = e;
            best_j = j;
        }
    }
    double a = ebar;
    if (best_j < samples) {
        const double lo = ebar * std::max(0, best_j - 1) / samples;
        const double hi = ebar * std::min(samples, best_j + 1) / samples;
        boost::uintmax_t iters = 200;
        auto r = boost::math::tools::brent_find_minima(E, lo, hi, 52, iters);
        a = ebar * best_j / samples;
        if (r.second < best_e) {
            best_e = r.second;
            a = r.first;
        }
    }
    if (best_e >= uniform) {
        if (strains) strains->assign(N, ebar);
        return uniform;
    }
    if (strains) {
        strains->assign(N, a);
        (*strains)[0] = N * ebar - (N - 1) * a;
    }
    return best_e;
}

double state_energy(const BarProblem &prob, const std::vector<double> &strains) {
    const double h = prob.bar_length / prob.element_count;
    double e = 0.0;
    for (double s : strains)
        e += h * prob.material.energy(s);
    return e;
}

BarState initial_state(const BarProblem &prob) {
    BarState virgin = build_state(prob, 0.0, 0.0, 0);
    return incremental_step(virgin, 0.0, prob);
}

BarState incremental_step(const BarState &prev, double t, const BarProblem &prob) {
    const double g = boundary_at(prob, t);
    const Mask base = mask_of(prev.open_jumps);
    const double e_intact = base == 0 ? intact_energy(prob, g) : 0.0;
    Mask best = base;
    double best_cost = e_intact;
    for (int i = 0; i < prob.interface_count(); ++i) {
        if ((base >> i) & 1) continue;
        const Mask m = base | (Mask{1} << i);
        const double cost = prob.jump_cost;
        if (better(cost, m, best_cost, best)) {
            best = m;
            best_cost = cost;
        }
    }
    return build_state(prob, t, g, best);
}

BarState brute_force_step(const BarState &prev, double t, const BarProblem &prob) {
    const double g = boundary_at(prob, t);
    const Mask base = mask_of(prev.open_jumps);
    const int K = prob.interface_count();
    const Mask full = K == 0 ? 0 : ((Mask{1} << K) - 1);
    const Mask free_bits = full & ~base;
    const double e_intact = intact_energy(prob, g);
    Mask best = base;
    double best_cost = std::numeric_limits<double>::infinity();
    // enumerate every subset of the free interfaces
    Mask sub = 0;
    while (true) {
        const Mask m = base | sub;
        const double energy = m == 0 ? e_intact : 0.0;
        const double cost = energy + prob.jump_cost * std::popcount(sub);
        if (better(cost, m, best_cost, best)) {
            best = m;
            best_cost = cost;
        }
        if (sub == free_bits) break;
        sub = (sub - free_bits) & free_bits;
    }
    return build_state(prob, t, g, best);
}

QuasiStaticTrajectory solve_trajectory(const BarProblem &prob) {
    prob.validate();
    QuasiStaticTrajectory traj;
    const double T = prob.program.end_time();
    BarState s = initial_state(prob);
    traj.times.push_back(0.0);
    traj.dissipation.push_back(prob.jump_cost * s.crack_count());
    traj.states.push_back(s);
    for (int k = 1; k <= prob.steps; ++k) {
        const double t = T * k / prob.steps;
        BarState next = incremental_step(traj.states.back(), t, prob);
        const int added = next.crack_count() - traj.states.back().crack_count();
        traj.times.push_back(t);
        traj.dissipation.push_back(prob.jump_cost * added);
        traj.states.push_back(std::move(next));
    }
    return traj;
}

StabilityCertificate certify_stability(const QuasiStaticTrajectory &traj, const BarProblem &prob,
        int competitors, std::uint64_t seed, int threads) {
    const int steps = static_cast<int>(traj.states.size());
    const int N = prob.element_count;
    const double h = prob.bar_length / N;
    std::vector<double> margin(steps, std::numeric_limits<double>::infinity());
    std::vector<long long> checked(steps, 0);

    auto run_step = [&](int k) {
        const BarState &u = traj.states[k];
        const double g = u.boundary;
        const double Eu = state_energy(prob, u.element_strains);
        const Mask base = mask_of(u.open_jumps);
        const int K = prob.interface_count();
        std::mt19937_64 rng(split_seed(seed, static_cast<std::uint64_t>(k)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double worst = std::numeric_limits<double>::infinity();
        long long count = 0;
        auto consider = [&](Mask m, const std::vector<double> &strains) {
            const double Ev = state_energy(prob, strains);
            const double D = prob.jump_cost * std::popcount(m & ~base);
            worst = std::min(worst, Ev + D - Eu);
            ++count;
        };
        // deterministic competitors: relaxed single-crack states and the uniform intact state
        const std::vector<double> zero(N, 0.0);
        for (int i = 0; i < K; ++i)
            if (!((base >> i) & 1)) consider(base | (Mask{1} << i), zero);
        if (base == 0) consider(0, std::vector<double>(N, g / prob.bar_length));
        for (int c = 0; c < competitors; ++c) {
            Mask m = base;
            for (int i = 0; i < K; ++i)
                if (unit(rng) < 0.3) m |= Mask{1} << i;
            const double amp = std::pow(10.0, -6.0 + 5.0 * unit(rng)) * std::max(g / prob.bar_length, 1e-3);
            std::vector<double> strains(N);
            std::vector<double> delta(N);
            double mean = 0.0;
            for (int i = 0; i < N; ++i) {
                delta[i] = amp * (2.0 * unit(rng) - 1.0);
                mean += delta[i] / N;
            }
            if (m == 0) {
                // intact competitor: keep sum h eps = g
                for (int i = 0; i < N; ++i)
                    strains[i] = u.element_strains[i] + delta[i] - mean;
                double s = 0.0;
                for (double e : strains)
                    s += h * e;
                if (std::fabs(s - g) > 1e-12 * std::max(1.0, g)) continue;
            } else {
                for (int i = 0; i < N; ++i)
                    strains[i] = (base == 0 ? 0.0 : u.element_strains[i]) + delta[i];
            }
            consider(m, strains);
        }
        margin[k] = worst;
        checked[k] = count;
    };

    const int nthreads = std::max(1, std::min(threads, steps));
    if (nthreads == 1) {
        for (int k = 0; k < steps; ++k)
            run_step(k);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nthreads; ++w)
            pool.emplace_back([&, w] {
                for (int k = w; k < steps; k += nthreads)
                    run_step(k);
            });
        for (auto &th : pool)
            th.join();
    }
    StabilityCertificate cert;
    cert.worst_margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < steps; ++k) {
        cert.competitors_checked += checked[k];
        if (margin[k] < cert.worst_margin) {
            cert.worst_margin = margin[k];
            cert.worst_step = k;
        }
    }
    cert.passed = cert.worst_margin >= -1e-9;
    return cert;
}

EnergyBalanceCertificate certify_energy_balance(const QuasiStaticTrajectory &traj, const BarProblem &prob,
        double tol) {
    EnergyBalanceCertificate c;
    if (traj.states.empty()) return c;
    double work = 0.0;
    double diss = 0.0;
    double peak = 0.0;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        peak = std::max(peak, traj.states[k].stored_energy);
        if (k == 0) continue;
        const BarState &a = traj.states[k - 1];
        const BarState &b = traj.states[k];
        work += 0.5 * (a.reaction + b.reaction) * (b.boundary - a.boundary);
        diss += traj.dissipation[k];
    }
    c.external_work = work;
    c.total_dissipation = diss;
    c.residual = traj.states.back().stored_energy + diss - traj.states.front().stored_energy - work;
    c.characteristic_energy = peak;
    c.relative_residual = peak > 0.0 ? std::fabs(c.residual) / peak : std::fabs(c.residual);
    c.passed = std::fabs(c.residual) <= tol * peak + 1e-14;
    return c;
}

GammaTable gamma_recovery_table(const Distribution &F, const std::vector<double> &lambdas,
        const std::function<double(double)> &layer_rule, SaturationReading reading,
        std::optional<double> truncation) {
    GammaTable table;
    double sc = 0.0;
    if (truncation) {
        if (!(*truncation > 0.0)) throw ConfigError("gamma table: truncation must be positive");
        sc = *truncation;
        if (1.0 - F.half_line_cdf(sc) > 1e-12)
            table.warnings.push_back("F is not numerically saturated at the truncation point");
    } else if (F.kind() == DistributionKind::Power) {
        sc = 1.0;
    } else {
        double s = 1.0;
        while (1.0 - F.half_line_cdf(s) > 1e-12 && s < 1e8)
            s *= 2.0;
        if (1.0 - F.half_line_cdf(s) > 1e-12) {
            table.warnings.push_back("F is not numerically saturated below s = 1e8; truncated there");
            sc = s;
        } else {
            double lo = s / 2.0, hi = s;
            for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
                const double mid = 0.5 * (lo + hi);
                (1.0 - F.half_line_cdf(mid) > 1e-12 ? lo : hi) = mid;
            }
            sc = hi;
        }
    }
    table.truncation = sc;
    auto Psi = [&](double s) { return survival_integral(F, std::min(s, sc)); };
    table.G_F = Psi(sc);
    double prev = std::numeric_limits<double>::infinity();
    for (double lam : lambdas) {
        if (!(lam > 0.0)) throw ConfigError("gamma table: lambda must be positive");
        GammaRow row;
        row.lambda = lam;
        row.eps = layer_rule(lam);
        if (!(row.eps > 0.0) || row.eps > 1.0) throw ConfigError("gamma table: layer width must lie in (0, 1]");
        const double t = 1.0 / (2.0 * row.eps * row.eps);
        const double psi = reading == SaturationReading::Scaled ? Psi(lam * t) / lam : Psi(lam * t);
        row.energy = row.eps * psi;
        row.bound = table.G_F * row.eps;
        if (row.energy > row.bound + 1e-12) table.within_bound = false;
        if (!(row.energy < prev)) table.monotone_decreasing = false;
        prev = row.energy;
        table.rows.push_back(row);
    }
    return table;
}

} // namespace cdfdamage
