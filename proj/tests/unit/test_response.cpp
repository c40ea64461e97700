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
#include "cdfdamage/response.hpp"

using namespace cdfdamage;

namespace {

void expect_rel(double got, double want, double tol) {
    EXPECT_LE(std::fabs(got - want), tol * std::fabs(want)) << "got " << got << " want " << want;
}

std::vector<DamageLaw> laws_for(double G, double ell) {
    std::vector<DamageLaw> out;
    for (auto k : all_law_kinds()) {
        if (k == LawKind::ChiSquare) {
            out.push_back(DamageLaw::make(k, G, ell, 2.0));
            continue;
        }
        if (!law_has_shape(k)) {
            out.push_back(DamageLaw::make(k, G, ell));
            continue;
        }
        for (double n : {0.5, 1.0, 2.0})
            out.push_back(DamageLaw::make(k, G, ell, n));
    }
    out.push_back(DamageLaw::make(LawKind::Hypergeometric, G, ell, 3.0));
    return out;
}

} // namespace

TEST(DrivePath, ZeroStrainIsInert) {
    const auto law = DamageLaw::make(LawKind::Exponential, 1.0, 1.0);
    for (const auto &r : drive_path(law, 1.0, std::vector<double>(5, 0.0))) {
        EXPECT_EQ(r.stress_eff, 0.0);
        EXPECT_EQ(r.damage, 0.0);
        EXPECT_EQ(r.eta, 0.0);
        EXPECT_EQ(r.dissipation_cum, 0.0);
    }
}

TEST(DrivePath, MonotoneRampFollowsEnvelope) {
    const auto law = DamageLaw::make(LawKind::Exponential, 1.0, 1.0);
    const auto recs = drive_path(law, 1.0, ramp_path(3.0, 300));
    double best = 0.0, at = 0.0;
    for (const auto &r : recs) {
        EXPECT_NEAR(r.stress_eff, r.strain * std::exp(-0.5 * r.strain * r.strain), 1e-15);
        if (r.stress_eff > best) best = r.stress_eff, at = r.strain;
    }
    EXPECT_NEAR(at, 1.0, 1e-12);
}

TEST(DrivePath, UnloadFreezesDamage) {
    const auto law = DamageLaw::make(LawKind::Exponential, 1.0, 1.0);
    const auto recs = drive_path(law, 1.0, cycle_path(1.5, 0.5, 1.5, 10));
    const double g = std::exp(-0.5 * 1.5 * 1.5);
    for (std::size_t i = 10; i < recs.size(); ++i) {
        EXPECT_NEAR(recs[i].damage, 1.0 - g, 1e-15);
        EXPECT_NEAR(recs[i].stress_eff, g * recs[i].strain, 1e-15);
        EXPECT_EQ(recs[i].eta, 0.5 * 1.5 * 1.5);
    }
}

TEST(DrivePath, CompressionIsUndamaged) {
    const auto law = DamageLaw::make(LawKind::Cauchy, 1.0, 1.0);
    const auto recs = drive_path(law, 2.0, {1.0, -0.5});
    EXPECT_EQ(recs[1].stress_eff, -1.0);
    EXPECT_EQ(recs[1].phi_plus, 0.0);
    EXPECT_THROW(drive_path(law, 0.0, {1.0}), DomainError);
    EXPECT_THROW(drive_path(law, 1.0, {std::nan("")}), DomainError);
}

TEST(DrivePath, UnloadReloadClosure) {
    for (const auto &law : laws_for(1.0, 1.0)) {
        SCOPED_TRACE(law.describe());
        const double e1 = 1.2;
        // ramp to e1, unload to 0, reload to e1 and beyond on the same grid
        std::vector<double> path;
        for (int i = 0; i <= 12; ++i)
            path.push_back(0.1 * i);
        for (int i = 11; i >= 0; --i)
            path.push_back(0.1 * i);
        for (int i = 1; i <= 20; ++i)
            path.push_back(0.1 * i);
        const auto recs = drive_path(law, 1.0, path);
        const double g1 = law.degradation(0.5 * e1 * e1);
        for (std::size_t i = 12; i < 12 + 12 + 12; ++i)
            ASSERT_NEAR(recs[i].stress_eff, g1 * recs[i].strain, 1e-14);
        for (std::size_t i = 12 + 12 + 13; i < recs.size(); ++i)
            ASSERT_NEAR(recs[i].stress_eff, effective_stress_1d(law, 1.0, recs[i].strain), 1e-10);
    }
}

TEST(DrivePath, RandomCyclesAreDissipative) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    for (const auto &law : laws_for(1.0, 1.0)) {
        SCOPED_TRACE(law.describe());
        std::uniform_real_distribution<double> u(-1.0, 4.0);
        for (int p = 0; p < 1000; ++p) {
            // load, unload, reload with random turning points
            const double a = std::fabs(u(rng)), b = u(rng) * 0.5, c = std::fabs(u(rng)) * 1.2;
            const auto recs = drive_path(law, 1.0, cycle_path(a, b, c, 8));
            for (std::size_t i = 1; i < recs.size(); ++i) {
                ASSERT_GE(recs[i].eta, recs[i - 1].eta);
                ASSERT_GE(recs[i].dissipation_cum - recs[i - 1].dissipation_cum, -1e-12);
                ASSERT_GE(recs[i].damage, recs[i - 1].damage - 1e-15);
            }
        }
    }
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 30.0);
}

TEST(PeakResponse, ScaledClosedForms) {
    const auto e = peak_response(DamageLaw::make(LawKind::Exponential, 1.0, 1.0), 1.0);
    expect_rel(e.strain_at_peak, 1.0, 1e-12);
    expect_rel(e.sigma_max, 1.0 / std::sqrt(std::exp(1.0)), 1e-12);
    EXPECT_TRUE(e.closed_form);
    // sigma_max = sqrt(G k / (e ell))
    const auto s = peak_response(DamageLaw::make(LawKind::Exponential, 2.7e-3, 0.0075), 210.0);
    expect_rel(s.sigma_max, std::sqrt(2.7e-3 * 210.0 / (std::exp(1.0) * 0.0075)), 1e-12);
    const auto c = peak_response(DamageLaw::make(LawKind::Cauchy, 3.0, 2.0), 5.0);
    expect_rel(c.sigma_max, std::pow(3.0, 0.75) / 2.0 * std::sqrt(3.0 * 5.0 / (M_PI * 2.0)), 1e-12);
}

TEST(PeakResponse, ClosedAgreesWithNumeric) {
    for (auto k : {LawKind::Exponential, LawKind::Cauchy, LawKind::Logistic, LawKind::HalfNormal,
                 LawKind::Gudermannian}) {
        const auto law = DamageLaw::make(k, 1.7, 0.3);
        const auto a = peak_response(law, 4.0);
        const auto b = peak_stress_numeric(law, 4.0);
        expect_rel(a.sigma_max, b.sigma_max, 1e-8);
        expect_rel(a.strain_at_peak, b.strain_at_peak, 1e-6);
        expect_rel(a.damage_at_peak, b.damage_at_peak, 1e-6);
    }
    const auto r = peak_response(DamageLaw::make(LawKind::Rational, 1.0, 1.0, 1.0), 1.0);
    EXPECT_FALSE(r.closed_form);
    expect_rel(r.sigma_max, 0.45927932677184589, 1e-12);
}

TEST(PeakResponse, CalibrationRoundTripRecoversLength) {
    const double G = 2.7e-3, ell = 0.0123, k = 210.0;
    for (auto kind : {LawKind::Exponential, LawKind::Cauchy, LawKind::Logistic, LawKind::HalfNormal,
                 LawKind::Gudermannian, LawKind::Radical, LawKind::Piecewise}) {
        for (double n : {0.5, 1.0, 2.0}) {
            if (!law_has_shape(kind) && n != 1.0) continue;
            const auto law = DamageLaw::make(kind, G, ell, n);
            const auto p = peak_response(law, k);
            expect_rel(calibrate_length(kind, n, p.sigma_max, k, G).ell, ell, 1e-6);
        }
    }
}

TEST(Envelope, EqualsSaturationForEveryAdmissibleLaw) {
    const auto t0 = std::chrono::steady_clock::now();
    const double pairs[][2] = {{1.0, 1.0}, {2.0, 1.0}, {1.0, 3.0}};
    for (const auto &gk : pairs) {
        for (const auto &law : laws_for(gk[0], 1.0)) {
            SCOPED_TRACE(law.describe() + " k=" + std::to_string(gk[1]));
            expect_rel(dissipated_envelope(law, gk[1]), gk[0], 1e-5);
        }
    }
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 30.0);
}

TEST(Envelope, Examples) {
    EXPECT_NEAR(dissipated_envelope(DamageLaw::make(LawKind::Exponential, 1.0, 1.0), 1.0), 1.0, 1e-5);
    EXPECT_NEAR(dissipated_envelope(DamageLaw::make(LawKind::Cauchy, 2.0, 1.0), 1.0), 2.0, 2e-5);
    EXPECT_NEAR(dissipated_envelope(DamageLaw::make(LawKind::Power, 1.0, 1.0, 1.0), 1.0), 1.0, 1e-12);
    EXPECT_EQ(effective_stress_1d(DamageLaw::make(LawKind::Power, 1.0, 1.0, 1.0), 1.0, 2.0), 0.0);
}

TEST(ChiSquareDemo, CounterexampleRatios) {
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i)
        grid.push_back(0.01 * i);
    const auto c2 = chi_square_demo(2.0, 1.0, 1.0, grid);
    const auto ex = DamageLaw::make(LawKind::Exponential, 1.0, 1.0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        EXPECT_NEAR(c2.stress[i], effective_stress_1d(ex, 1.0, grid[i]), 1e-10);
    EXPECT_NEAR(c2.small_strain_ratio, 1.0, 1e-6);

    const auto c4 = chi_square_demo(4.0, 1.0, 1.0, grid);
    EXPECT_LT(c4.small_strain_ratio, 1e-3);
    expect_rel(c4.small_strain_ratio, 4.999997500000625e-7, 1e-10);
    for (double n : {5.0, 6.0, 8.0})
        EXPECT_LT(chi_square_demo(n, 1.0, 1.0, grid).small_strain_ratio, 1e-6);
    EXPECT_GT(chi_square_demo(1.0, 1.0, 1.0, grid).small_strain_ratio, 10.0);

    const auto far = chi_square_demo(2.0, 1.0, 1.0, {50.0});
    EXPECT_LT(far.stress[0], 1e-100);
}

TEST(Paths, Builders) {
    EXPECT_EQ(ramp_path(1.0, 4), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_EQ(cycle_path(2.0, 0.0, 1.0, 2), (std::vector<double>{0.0, 1.0, 2.0, 1.0, 0.0, 0.5, 1.0}));
    EXPECT_THROW(ramp_path(1.0, 0), ConfigError);
}
