// Copyright 2026 The starqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "starqed/code422.h"
#include "starqed/shadows.h"

namespace starqed {
namespace {

CMatrix density_of(const StateVector& s) { return s.amplitudes() * s.amplitudes().adjoint(); }

ShadowOptions quick(std::size_t bootstrap = 100) {
    ShadowOptions o;
    o.bootstrap = bootstrap;
    return o;
}

TEST(ShadowFactor, Entries) {
    const CMatrix z0 = shadow_factor(Basis::Z, false);
    EXPECT_NEAR(z0(0, 0).real(), 2.0, 1e-12);
    EXPECT_NEAR(z0(1, 1).real(), -1.0, 1e-12);
    const CMatrix x1 = shadow_factor(Basis::X, true);
    EXPECT_NEAR(x1(0, 0).real(), 0.5, 1e-12);
    EXPECT_NEAR(x1(0, 1).real(), -1.5, 1e-12);
    for (auto b : {Basis::X, Basis::Y, Basis::Z}) {
        for (bool d : {false, true}) {
            const CMatrix f = shadow_factor(b, d);
            EXPECT_NEAR(f.trace().real(), 1.0, 1e-12);
            EXPECT_TRUE(f.isApprox(f.adjoint()));
        }
    }
}

TEST(ShadowFromSetting, AllZeros) {
    TomographySetting s;
    const std::vector<uint8_t> outcomes{0};
    const CMatrix m = shadow_from_setting(s, outcomes);
    ASSERT_EQ(m.rows(), 16);
    EXPECT_NEAR(m(0, 0).real(), 16.0, 1e-12);
    EXPECT_NEAR(m.trace().real(), 1.0, 1e-12);
    EXPECT_THROW(shadow_from_setting(s, std::vector<uint8_t>{}), std::exception);
}

TEST(ShadowFromSetting, HermitianUnitTrace) {
    const auto settings = sample_settings(SettingMode::Uniform, 20, 4);
    for (const auto& s : settings) {
        const std::vector<uint8_t> outcomes{0, 3, 5, 15, 9};
        const CMatrix m = shadow_from_setting(s, outcomes);
        EXPECT_NEAR(m.trace().real(), 1.0, 1e-12);
        EXPECT_TRUE(m.isApprox(m.adjoint(), 1e-12));
    }
}

TEST(Settings, ExhaustiveCoversAll) {
    const auto s = sample_settings(SettingMode::Exhaustive81, 0, 1);
    ASSERT_EQ(s.size(), 81u);
    std::set<std::string> labels;
    for (const auto& x : s) labels.insert(x.label());
    EXPECT_EQ(labels.size(), 81u);
    EXPECT_EQ(s.front().label(), "ZZZZ");
    EXPECT_EQ(s.back().label(), "YYYY");
}

TEST(Settings, UniformFrequencies) {
    const auto s = sample_settings(SettingMode::Uniform, 20000, 9);
    std::array<double, 3> count{};
    for (const auto& x : s) {
        for (Basis b : x.bases) count[static_cast<int>(b)] += 1;
    }
    for (double c : count) EXPECT_NEAR(c / 80000.0, 1.0 / 3.0, 0.01);
}

TEST(Settings, SeedDeterminismAndArguments) {
    EXPECT_EQ(sample_settings(SettingMode::Uniform, 50, 3), sample_settings(SettingMode::Uniform, 50, 3));
    EXPECT_NE(sample_settings(SettingMode::Uniform, 50, 3), sample_settings(SettingMode::Uniform, 50, 4));
    EXPECT_THROW(sample_settings(SettingMode::Uniform, 1, 3), std::invalid_argument);
}

TEST(Estimators, LogicalFidelityOfCodeword) {
    const CMatrix rho = density_of(codeword("00"));
    const auto settings = sample_settings(SettingMode::Exhaustive81, 0, 1);
    const auto data = sample_dataset(rho, settings, 200, 11);
    CVector target = CVector::Zero(4);
    target(0) = 1.0;
    auto opt = quick(200);
    opt.scheme = BootstrapScheme::Outcomes;
    const auto f = logical_fidelity_estimate(data, target, opt);
    EXPECT_GE(f.error, 0.0);
    EXPECT_LE(std::abs(f.value - 1.0), 3 * f.error + 1e-9);
    const auto fp = fidelity_estimate(data, codeword("00"), opt);
    EXPECT_LT(std::abs(fp.value - 1.0), 3 * fp.error + 1e-9);
    const auto d = estimate_density(data, opt);
    EXPECT_NEAR(d.logical.trace().real(), 1.0, 1e-9);
    EXPECT_EQ(d.settings_used, 81u);
}

TEST(Estimators, PurityPureState) {
    const CMatrix rho = density_of(product_state("0+10"));
    const auto data = sample_dataset(rho, sample_settings(SettingMode::Uniform, 1000, 2), 100, 3);
    const auto p = purity_estimate(data, quick(200));
    EXPECT_LT(std::abs(p.value - 1.0), 4 * p.error);
    EXPECT_LT(p.error, 0.3);
}

ShadowOptions fixed_design() {
    auto o = quick(50);
    o.scheme = BootstrapScheme::Outcomes;
    return o;
}

TEST(Estimators, PurityPureStateFixedDesign) {
    const CMatrix rho = density_of(product_state("0+10"));
    const auto data = sample_dataset(rho, sample_settings(SettingMode::Exhaustive81, 0, 1), 200, 3);
    EXPECT_NEAR(purity_estimate(data, fixed_design()).value, 1.0, 0.05);
}

TEST(Estimators, PurityMixedQubit) {
    CMatrix rho = density_of(product_state("0000"));
    rho = 0.5 * (rho + density_of(product_state("1000")));
    const auto data = sample_dataset(rho, sample_settings(SettingMode::Exhaustive81, 0, 1), 200, 6);
    EXPECT_NEAR(purity_estimate(data, fixed_design()).value, 0.5, 0.05);
}

TEST(Estimators, LogicalPurityOfCodeword) {
    const CMatrix rho = density_of(codeword("+-", CodewordBasis::X));
    const auto data = sample_dataset(rho, sample_settings(SettingMode::Exhaustive81, 0, 1), 200, 8);
    EXPECT_NEAR(logical_purity_estimate(data, fixed_design()).value, 1.0, 0.05);
    // Each stabilizer term is seen in exactly one setting of the list.
    EXPECT_NEAR(logical_population_estimate(data, fixed_design()).value, 1.0, 1e-9);
}

TEST(Estimators, PermutationInvariant) {
    const CMatrix rho = density_of(codeword("01"));
    auto data = sample_dataset(rho, sample_settings(SettingMode::Uniform, 60, 1), 50, 2);
    const auto a = purity_estimate(data, quick(10));
    const auto fa = fidelity_estimate(data, codeword("01"), quick(10));
    std::reverse(data.entries.begin(), data.entries.end());
    for (auto& e : data.entries) std::reverse(e.outcomes.begin(), e.outcomes.end());
    EXPECT_NEAR(purity_estimate(data, quick(10)).value, a.value, 1e-10);
    EXPECT_NEAR(fidelity_estimate(data, codeword("01"), quick(10)).value, fa.value, 1e-10);
}

TEST(Estimators, NeedTwoSettings) {
    const auto data = sample_dataset(density_of(product_state("0000")),
                                     sample_settings(SettingMode::Uniform, 2, 1), 10, 1);
    ShadowDataset one;
    one.entries.push_back(data.entries[0]);
    EXPECT_ANY_THROW(purity_estimate(one, quick(10)));
}

// A fixed setting list has no setting-sampling noise; redrawing outcomes
// gives a smaller spread than redrawing settings.
TEST(Bootstrap, OutcomeSchemeOnFixedSettings) {
    const CMatrix rho = density_of(codeword("00"));
    const auto data = sample_dataset(rho, sample_settings(SettingMode::Exhaustive81, 0, 1), 200, 4);
    CVector target = CVector::Zero(4);
    target(0) = 1.0;
    auto o = quick(200);
    o.scheme = BootstrapScheme::Outcomes;
    auto s = quick(200);
    s.scheme = BootstrapScheme::Settings;
    const auto fo = logical_fidelity_estimate(data, target, o);
    const auto fs = logical_fidelity_estimate(data, target, s);
    EXPECT_DOUBLE_EQ(fo.value, fs.value);
    EXPECT_LT(fo.error, fs.error);
    EXPECT_DOUBLE_EQ(logical_fidelity_estimate(data, target, o).error, fo.error);
}

TEST(Dataset, WriteReadRoundTrip) {
    const auto data = sample_dataset(density_of(codeword("11")), sample_settings(SettingMode::Uniform, 12, 3), 7, 5);
    std::stringstream ss;
    write_dataset(ss, data);
    const auto back = read_dataset(ss);
    ASSERT_EQ(back.entries.size(), data.entries.size());
    for (std::size_t i = 0; i < data.entries.size(); ++i) {
        EXPECT_EQ(back.entries[i].setting, data.entries[i].setting);
        EXPECT_EQ(back.entries[i].outcomes, data.entries[i].outcomes);
        EXPECT_EQ(back.entries[i].raw_count, data.entries[i].raw_count);
    }
    std::stringstream bad("not a dataset\n");
    EXPECT_ANY_THROW(read_dataset(bad));
}

TEST(Cleanup, PositiveUnitTrace) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1.2;
    m(1, 1) = -0.2;
    const CMatrix c = eigen_cleanup(m);
    EXPECT_NEAR(c.trace().real(), 1.0, 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(c);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
}

}  // namespace
}  // namespace starqed
