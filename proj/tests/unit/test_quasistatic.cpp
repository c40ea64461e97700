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
#include <chrono>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cdfdamage/errors.hpp"
#include "cdfdamage/quasistatic.hpp"

using namespace cdfdamage;

namespace {

BarProblem make_problem(int N, const DamageLaw &law, double k, double g_end, double gamma, int steps) {
    BarProblem p;
    p.element_count = N;
    p.bar_length = 1.0;
    p.material = BarMaterial::from_law(law, k);
    p.program = BoundaryProgram::ramp(1.0, g_end);
    p.steps = steps;
    p.jump_cost = gamma;
    return p;
}

BarProblem random_problem(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> nel(2, 6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto &kinds = all_law_kinds();
    std::uniform_int_distribution<std::size_t> pick(0, kinds.size() - 1);
    LawKind kind = kinds[pick(rng)];
    if (kind == LawKind::ChiSquare) kind = LawKind::Exponential;
    const double shape = kind == LawKind::Rational ? 0.5 + 1.5 * u(rng) : 0.5 + 2.0 * u(rng);
    const double G = 0.5 + u(rng), ell = 0.5 + u(rng), k = 0.5 + 2.0 * u(rng);
    const auto law = DamageLaw::make(kind, G, ell, std::round(shape * 4.0) / 4.0);
    // a localized intact bar stores at most saturation * L / N, so gamma below that cracks
    const int N = nel(rng);
    const double gamma = (0.2 + 0.7 * u(rng)) * law.saturation() / N;
    const double g_end = (1.0 + 3.0 * u(rng)) * std::sqrt(2.0 * law.saturation() / k);
    return make_problem(N, law, k, g_end, gamma, 40);
}

} // namespace

TEST(BoundaryProgram, Interpolation) {
    const BoundaryProgram p({0.0, 1.0, 3.0}, {0.0, 2.0, 1.0});
    EXPECT_EQ(p.at(-1.0), 0.0);
    EXPECT_DOUBLE_EQ(p.at(0.5), 1.0);
    EXPECT_DOUBLE_EQ(p.at(2.0), 1.5);
    EXPECT_EQ(p.at(10.0), 1.0);
    EXPECT_EQ(p.end_time(), 3.0);
    EXPECT_THROW(BoundaryProgram({0.0, 0.0}, {0.0, 1.0}), ConfigError);
    EXPECT_THROW(BoundaryProgram({0.5, 1.0}, {0.0, 1.0}), ConfigError);
    EXPECT_THROW(BoundaryProgram({0.0}, {0.0}), ConfigError);
}

TEST(BarProblem, Validation) {
    auto p = make_problem(4, DamageLaw::make(LawKind::Exponential, 1.0, 1.0), 1.0, 1.0, 1.0, 10);
    EXPECT_NO_THROW(p.validate());
    p.element_count = 0;
    EXPECT_THROW(p.validate(), ConfigError);
    p.element_count = 63;
    EXPECT_THROW(p.validate(), ConfigError);
    p.element_count = 4;
    p.jump_cost = 0.0;
    EXPECT_THROW(p.validate(), ConfigError);
    p.jump_cost = 1.0;
    p.steps = 0;
    EXPECT_THROW(p.validate(), ConfigError);
}

TEST(BarMaterial, CdfVariantMatchesLaw) {
    // from_cdf with the exponential CDF equals the exponential law with G / ell = 1 / scale
    const auto F = Distribution::make(DistributionKind::Exponential, 1.0);
    const auto m = BarMaterial::from_cdf(F, 2.0);
    const auto l = BarMaterial::from_law(DamageLaw::make(LawKind::Exponential, 0.5, 1.0), 1.0);
    for (double e : {0.1, 0.7, 1.3, 3.0}) {
        EXPECT_NEAR(m.energy(e), l.energy(e), 1e-11);
        EXPECT_NEAR(m.stress(e), l.stress(e), 1e-14);
    }
    const auto q = BarMaterial::quadratic(3.0);
    EXPECT_EQ(q.energy(2.0), 6.0);
    EXPECT_EQ(q.stress(2.0), 6.0);
}

TEST(IntactEnergy, UniformBeforePeakLocalizedAfter) {
    const auto law = DamageLaw::make(LawKind::Exponential, 1.0, 1.0);
    const auto p = make_problem(4, law, 1.0, 1.0, 10.0, 10);
    std::vector<double> s;
    const double e1 = intact_energy(p, 0.5, &s);
    EXPECT_NEAR(e1, law.psi(0.125), 1e-14);
    for (double x : s)
        EXPECT_DOUBLE_EQ(x, 0.5);
    // far past the peak one element takes the stretch
    const double e2 = intact_energy(p, 3.0, &s);
    EXPECT_LT(e2, law.psi(4.5) - 1e-3);
    EXPECT_GT(s[0], 3.0);
    EXPECT_NEAR(0.25 * (s[0] + s[1] + s[2] + s[3]), 3.0, 1e-12);
    EXPECT_NEAR(e2, state_energy(p, s), 1e-14);
    EXPECT_THROW(intact_energy(p, -1.0), DomainError);
}

TEST(Trajectory, ZeroLoadStaysVirgin) {
    const auto p = make_problem(4, DamageLaw::make(LawKind::Cauchy, 1.0, 1.0), 1.0, 0.0, 1.0, 20);
    const auto t = solve_trajectory(p);
    ASSERT_EQ(t.states.size(), 21u);
    for (std::size_t k = 0; k < t.states.size(); ++k) {
        EXPECT_EQ(t.states[k].stored_energy, 0.0);
        EXPECT_EQ(t.states[k].crack_count(), 0);
        EXPECT_EQ(t.dissipation[k], 0.0);
    }
    const auto sc = certify_stability(t, p, 50, 1);
    EXPECT_TRUE(sc.passed);
    EXPECT_GE(sc.worst_margin, 0.0);
    const auto eb = certify_energy_balance(t, p, 1e-12);
    EXPECT_EQ(eb.residual, 0.0);
    EXPECT_TRUE(eb.passed);
}

TEST(Trajectory, SingleElementNeverCracks) {
    const auto law = DamageLaw::make(LawKind::Logistic, 1.0, 1.0);
    const auto p = make_problem(1, law, 2.0, 3.0, 1e6, 30);
    const auto t = solve_trajectory(p);
    for (const auto &s : t.states) {
        EXPECT_EQ(s.crack_count(), 0);
        EXPECT_NEAR(s.stored_energy, law.psi(0.5 * 2.0 * s.boundary * s.boundary), 1e-14);
    }
}

TEST(Trajectory, FourElementsCrackOnceWhenElasticEnergyExceedsCost) {
    const auto law = DamageLaw::make(LawKind::Exponential, 1.0, 1.0);
    const double gamma = 0.2;
    const auto p = make_problem(4, law, 1.0, 2.0, gamma, 100);
    const auto t = solve_trajectory(p);
    int first = -1;
    for (std::size_t k = 0; k < t.states.size(); ++k) {
        if (t.states[k].crack_count() > 0 && first < 0) first = static_cast<int>(k);
    }
    ASSERT_GT(first, 0);
    EXPECT_LT(intact_energy(p, t.states[first - 1].boundary), gamma);
    EXPECT_GE(intact_energy(p, t.states[first].boundary), gamma);
    for (std::size_t k = first; k < t.states.size(); ++k) {
        EXPECT_EQ(t.states[k].crack_count(), 1);
        EXPECT_EQ(t.states[k].stored_energy, 0.0);
        EXPECT_EQ(t.states[k].reaction, 0.0);
    }
    // lowest index on ties
    EXPECT_TRUE(t.states.back().open_jumps[0]);
    EXPECT_NEAR(t.states.back().jump_heights[0], 2.0, 1e-15);
    double total = 0.0;
    for (double d : t.dissipation)
        total += d;
    EXPECT_DOUBLE_EQ(total, gamma * t.states.back().crack_count());

    // brute force agrees at every step
    BarState prev = t.states.front();
    for (std::size_t k = 1; k < t.states.size(); ++k) {
        const auto b = brute_force_step(prev, t.times[k], p);
        EXPECT_EQ(b.open_jumps, t.states[k].open_jumps);
        EXPECT_NEAR(b.stored_energy, t.states[k].stored_energy, 1e-14);
        prev = t.states[k];
    }
    const auto sc = certify_stability(t, p, 200, 99);
    EXPECT_TRUE(sc.passed) << sc.worst_margin;
}

TEST(Trajectory, RandomProblemsMatchBruteForce) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(12345);
    int cracked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_problem(rng);
        SCOPED_TRACE("trial " + std::to_string(trial) + " " + p.material.description);
        const auto t = solve_trajectory(p);
        BarState prev = t.states.front();
        BarState brute = brute_force_step(initial_state(p), 0.0, p);
        ASSERT_EQ(brute.open_jumps, prev.open_jumps);
        for (std::size_t k = 1; k < t.states.size(); ++k) {
            const auto b = brute_force_step(prev, t.times[k], p);
            ASSERT_EQ(b.open_jumps, t.states[k].open_jumps) << "step " << k;
            ASSERT_NEAR(b.stored_energy, t.states[k].stored_energy, 1e-12);
            // an independent brute-force trajectory reaches the same states
            brute = brute_force_step(brute, t.times[k], p);
            ASSERT_EQ(brute.open_jumps, t.states[k].open_jumps);
            ASSERT_GE(t.states[k].crack_count(), t.states[k - 1].crack_count());
            for (std::size_t i = 0; i < prev.open_jumps.size(); ++i)
                if (prev.open_jumps[i]) ASSERT_TRUE(t.states[k].open_jumps[i]);
            prev = t.states[k];
        }
        if (t.states.back().crack_count() > 0) ++cracked;
        double total = 0.0;
        for (double d : t.dissipation) {
            ASSERT_GE(d, 0.0);
            total += d;
        }
        ASSERT_NEAR(total, p.jump_cost * t.states.back().crack_count(), 1e-14);
        const auto sc = certify_stability(t, p, 200, 7 + trial);
        ASSERT_TRUE(sc.passed) << sc.worst_margin << " at step " << sc.worst_step;
        ASSERT_GE(sc.worst_margin, -1e-9);
    }
    EXPECT_GT(cracked, 10);
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 60.0);
}

TEST(Stability, CorruptedTrajectoryIsFlagged) {
    const auto law = DamageLaw::make(LawKind::Exponential, 1.0, 1.0);
    const auto p = make_problem(4, law, 1.0, 2.0, 0.2, 50);
    auto t = solve_trajectory(p);
    ASSERT_GT(t.states.back().crack_count(), 0);
    // heal the crack and put the bar back into uniform stretch
    auto &s = t.states.back();
    std::fill(s.open_jumps.begin(), s.open_jumps.end(), false);
    s.element_strains.assign(4, s.boundary / p.bar_length);
    s.stored_energy = state_energy(p, s.element_strains);
    const auto sc = certify_stability(t, p, 200, 3);
    EXPECT_FALSE(sc.passed);
    EXPECT_LT(sc.worst_margin, -1e-3);
    EXPECT_EQ(sc.worst_step, static_cast<int>(t.states.size()) - 1);
}

TEST(Stability, ThreadCountDoesNotChangeResult) {
    const auto law = DamageLaw::make(LawKind::Gudermannian, 1.0, 1.0);
    const auto p = make_problem(5, law, 1.0, 2.5, 0.5, 30);
    const auto t = solve_trajectory(p);
    const auto a = certify_stability(t, p, 100, 42, 1);
    const auto b = certify_stability(t, p, 100, 42, 3);
    EXPECT_EQ(a.worst_margin, b.worst_margin);
    EXPECT_EQ(a.competitors_checked, b.competitors_checked);
}

TEST(EnergyBalance, ElasticRampConvergesQuadratically) {
    const auto law = DamageLaw::make(LawKind::Exponential, 1.0, 1.0);
    std::vector<double> res;
    for (int steps : {10, 20, 40, 80}) {
        const auto p = make_problem(3, law, 1.0, 0.8, 1e6, steps);
        const auto t = solve_trajectory(p);
        ASSERT_EQ(t.states.back().crack_count(), 0);
        res.push_back(std::fabs(certify_energy_balance(t, p, 1.0).residual));
    }
    for (std::size_t i = 1; i < res.size(); ++i) {
        const double ratio = res[i - 1] / res[i];
        EXPECT_GE(ratio, 3.5) << i;
        EXPECT_LE(ratio, 4.5) << i;
    }
}

TEST(EnergyBalance, CrackingScenarioWithinTwoPercent) {
    const auto law = DamageLaw::make(LawKind::Exponential, 1.0, 1.0);
    const auto p = make_problem(4, law, 1.0, 2.0, 0.2, 1000);
    const auto t = solve_trajectory(p);
    ASSERT_EQ(t.states.back().crack_count(), 1);
    const auto c = certify_energy_balance(t, p, 0.02);
    EXPECT_TRUE(c.passed) << c.relative_residual;
    EXPECT_NEAR(c.total_dissipation, 0.2, 1e-15);
}

TEST(GammaTable, PowerAndExponentialRecoverySequence) {
    const std::vector<double> lambdas = {1.0, 10.0, 100.0, 1000.0, 10000.0};
    auto rule = [](double lam) { return 1.0 / std::sqrt(lam); };
    const auto pw = gamma_recovery_table(Distribution::make(DistributionKind::Power, 1.0), lambdas, rule);
    EXPECT_TRUE(pw.monotone_decreasing);
    EXPECT_TRUE(pw.within_bound);
    EXPECT_TRUE(pw.warnings.empty());
    EXPECT_NEAR(pw.G_F, 0.5, 1e-14);
    const double want_pw[] = {0.375, 0.015811388300841897, 0.0005, 1.5811388300841897e-5, 5.0e-7};
    for (int i = 0; i < 5; ++i)
        EXPECT_NEAR(pw.rows[i].energy, want_pw[i], 1e-12 * want_pw[i] + 1e-16);

    const auto ex = gamma_recovery_table(Distribution::make(DistributionKind::Exponential, 1.0), lambdas, rule);
    EXPECT_TRUE(ex.monotone_decreasing);
    EXPECT_TRUE(ex.within_bound);
    // 1 - F is resolved to ~1e-16 absolute near the 1e-12 cutoff
    EXPECT_NEAR(ex.truncation, -std::log(1e-12), 1e-3);
    const double want_ex[] = {0.39346934028736658, 0.031622776601652171, 0.000999999999999, 3.1622776601652171e-5,
            9.99999999999e-7};
    for (int i = 0; i < 5; ++i)
        EXPECT_NEAR(ex.rows[i].energy, want_ex[i], 1e-9 * want_ex[i]);
    for (const auto &r : ex.rows)
        EXPECT_LE(r.energy, ex.G_F * r.eps + 1e-12);
}

TEST(GammaTable, UnscaledReadingAndWarnings) {
    const std::vector<double> lambdas = {1.0, 10.0, 100.0};
    auto rule = [](double lam) { return 1.0 / std::sqrt(lam); };
    const auto pw = gamma_recovery_table(Distribution::make(DistributionKind::Power, 1.0), lambdas, rule,
            SaturationReading::Unscaled);
    // each layer costs about G_F eps
    EXPECT_NEAR(pw.rows[1].energy, 0.5 / std::sqrt(10.0), 1e-14);
    EXPECT_TRUE(pw.within_bound);
    EXPECT_TRUE(pw.monotone_decreasing);

    const auto c = gamma_recovery_table(Distribution::make(DistributionKind::Cauchy, 1.0), lambdas, rule);
    EXPECT_FALSE(c.warnings.empty());
    const auto tr = gamma_recovery_table(Distribution::make(DistributionKind::Cauchy, 1.0), lambdas, rule,
            SaturationReading::Scaled, 5.0);
    EXPECT_FALSE(tr.warnings.empty());
    EXPECT_EQ(tr.truncation, 5.0);
    EXPECT_THROW(gamma_recovery_table(Distribution::make(DistributionKind::Power, 1.0), {0.0}, rule),
            ConfigError);
    EXPECT_THROW(gamma_recovery_table(Distribution::make(DistributionKind::Power, 1.0), {0.25}, rule),
            ConfigError);
}
