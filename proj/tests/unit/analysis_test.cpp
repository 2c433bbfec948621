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
#include <random>
#include <vector>

#include "starqed/analysis.h"
#include "starqed/builders.h"
#include "starqed/engine.h"

namespace starqed {
namespace {

TEST(Syndromes, ChangeOfAncillaBit) {
    const std::vector<uint8_t> d{0, 0, 1, 1, 0};
    EXPECT_EQ(syndrome_signs(d), (std::vector<int>{1, 1, -1, 1, -1}));
    EXPECT_EQ(detection_events(d), (std::vector<uint8_t>{0, 0, 1, 1, 1}));
    EXPECT_EQ(detection_events(d, SigmaDefinition::AncillaChange), (std::vector<uint8_t>{0, 0, 1, 0, 1}));
}

TEST(Syndromes, FirstBitAgainstZero) {
    const std::vector<uint8_t> d{1, 1};
    EXPECT_EQ(syndrome_signs(d).front(), -1);
    EXPECT_EQ(detection_events(d).front(), 1);
}

TEST(Syndromes, SigmaNames) {
    for (auto def : {SigmaDefinition::SyndromeChange, SigmaDefinition::AncillaChange}) {
        EXPECT_EQ(sigma_definition_from_name(sigma_definition_name(def)), def);
    }
    EXPECT_ANY_THROW(sigma_definition_from_name("bogus"));
}

// Random bit strings: s is a product of consecutive changes, so the
// product of all s equals (-1)^(last bit).
TEST(Syndromes, TelescopingProperty) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        std::vector<uint8_t> d(1 + rng() % 12);
        for (auto& b : d) b = rng() & 1;
        auto s = syndrome_signs(d);
        int prod = 1;
        for (int v : s) prod *= v;
        EXPECT_EQ(prod, d.back() ? -1 : 1);
        auto sig = detection_events(d);
        int prev = 1;
        for (std::size_t n = 0; n < s.size(); ++n) {
            EXPECT_EQ(sig[n], s[n] != prev ? 1 : 0);
            prev = s[n];
        }
    }
}

CircuitProgram noisy_lifetime(const std::string& psi, int cycles) {
    const DeviceModel dev = device_preset("A");
    ExperimentSpec spec;
    spec.psi_in = psi;
    spec.cycles = cycles;
    return compile_noise(build_experiment(spec, dev), dev);
}

TEST(Postselect, MatchesTrace) {
    const ShotBatch b = run_shots(noisy_lifetime("0000", 4), 4000, 3);
    const auto stab = postselect(b, PostselectRule::AllSPlusOne);
    const auto full = postselect(b, PostselectRule::WithFinalSubspace);
    EXPECT_LE(full.accepted.size(), stab.accepted.size());
    EXPECT_TRUE(std::is_sorted(stab.accepted.begin(), stab.accepted.end()));
    std::size_t i = 0;
    for (std::size_t s = 0; s < b.shots(); ++s) {
        const auto rec = b.record(s);
        const auto tr = syndromes(rec);
        bool ok = std::all_of(tr.s_x.begin(), tr.s_x.end(), [](int v) { return v == 1; }) &&
                  std::all_of(tr.s_z.begin(), tr.s_z.end(), [](int v) { return v == 1; });
        const bool in = i < stab.accepted.size() && stab.accepted[i] == s;
        EXPECT_EQ(ok, in) << "shot " << s;
        if (in) ++i;
    }
    EXPECT_EQ(stab.acceptance.total, b.shots());
    EXPECT_EQ(stab.acceptance.hits, stab.accepted.size());
}

TEST(Postselect, FinalParityIsEven) {
    const ShotBatch b = run_shots(noisy_lifetime("0000", 2), 4000, 4);
    for (std::size_t s : postselect(b, PostselectRule::WithFinalSubspace).accepted) {
        EXPECT_EQ(__builtin_popcount(b.data_bits(s)) % 2, 0);
    }
}

TEST(AcceptanceFit, RecoversParameters) {
    std::vector<AcceptancePoint> pts;
    for (int n = 1; n <= 10; ++n) {
        const double eta = std::pow(0.67, n) * 0.87 / 2;
        pts.push_back({n, Proportion{static_cast<std::size_t>(std::llround(eta * 1e12)), 1000000000000ULL}});
    }
    const auto c = acceptance_fit(pts);
    EXPECT_NEAR(c.p_s, 0.67, 1e-9);
    EXPECT_NEAR(c.p_l, 0.87, 1e-9);
    EXPECT_NEAR(c.r2, 1.0, 1e-9);
}

TEST(AcceptanceFit, ConstantDeterministic) {
    std::vector<AcceptancePoint> pts;
    for (int n = 1; n <= 5; ++n) pts.push_back({n, Proportion{1000, 1000}});
    const auto c = acceptance_fit(pts, true);
    EXPECT_NEAR(c.p_s, 1.0, 1e-12);
    EXPECT_NEAR(c.p_l, 1.0, 1e-12);
}

TEST(AcceptanceFit, DropsZerosAndNeedsTwoPoints) {
    std::vector<AcceptancePoint> pts{{1, {500, 1000}}, {2, {0, 1000}}, {3, {125, 1000}}};
    const auto c = acceptance_fit(pts);
    EXPECT_EQ(c.dropped, 1u);
    EXPECT_NEAR(c.p_s, 0.5, 1e-9);
    EXPECT_THROW(acceptance_fit({{1, {5, 10}}}), std::invalid_argument);
}

TEST(FitDecay, RoundTrip) {
    std::vector<DecayPoint> pts;
    for (int n = 1; n <= 12; ++n) pts.push_back({n, 0.8 * std::exp(-0.05 * n), 1.0});
    const auto f = fit_decay(pts, 2.05);
    EXPECT_NEAR(f.a, 0.8, 1e-12);
    EXPECT_NEAR(f.b, 0.05, 1e-12);
    EXPECT_NEAR(f.epsilon, 0.024385287749642992, 1e-12);
    EXPECT_NEAR(f.tau_us, 41.0, 1e-9);
    EXPECT_FALSE(f.degenerate);
    EXPECT_EQ(f.used, 12u);
}

TEST(FitDecay, DegenerateWhenGrowing) {
    std::vector<DecayPoint> pts;
    for (int n = 1; n <= 5; ++n) pts.push_back({n, 0.5 * std::exp(0.01 * n), 1.0});
    const auto f = fit_decay(pts, 2.05);
    EXPECT_TRUE(f.degenerate);
    EXPECT_TRUE(std::isinf(f.tau_us));
}

TEST(FitDecay, ConstantWeightsMatchUnweighted) {
    std::vector<DecayPoint> a, b;
    std::mt19937_64 rng(2);
    std::normal_distribution<double> noise(0, 0.01);
    for (int n = 1; n <= 8; ++n) {
        const double v = 0.9 * std::exp(-0.03 * n) * (1 + noise(rng));
        a.push_back({n, v, 1.0});
        b.push_back({n, v, 7.5});
    }
    const auto fa = fit_decay(a, 2.05), fb = fit_decay(b, 2.05);
    EXPECT_NEAR(fa.b, fb.b, 1e-12);
    EXPECT_NEAR(fa.a, fb.a, 1e-12);
    EXPECT_NEAR(fa.b_error, fb.b_error, 1e-12);
}

TEST(FitDecay, SkipsNonPositive) {
    std::vector<DecayPoint> pts{{1, 0.9, 1}, {2, -0.1, 1}, {3, 0.8, 1}, {4, 0.75, 0}, {5, 0.7, 1}};
    const auto f = fit_decay(pts, 2.05);
    EXPECT_EQ(f.dropped, 2u);
    EXPECT_EQ(f.used, 3u);
    EXPECT_THROW(fit_decay(std::vector<DecayPoint>{{1, 0.9, 1}, {2, 0.8, 1}}, 2.05), std::invalid_argument);
}

TEST(StabilizerFidelity, Limits) {
    const std::vector<double> ideal{1, -1, 1, -1};
    EXPECT_DOUBLE_EQ(stabilizer_fidelity(ideal, ideal), 1.0);
    const std::vector<double> zero(4, 0.0);
    EXPECT_DOUBLE_EQ(stabilizer_fidelity(zero, ideal), 0.5);
    const std::vector<double> flipped{-1, 1, -1, 1};
    EXPECT_DOUBLE_EQ(stabilizer_fidelity(flipped, ideal), 0.0);
}

TEST(Proportion, BinomialError) {
    Proportion p{25, 100};
    EXPECT_DOUBLE_EQ(p.value(), 0.25);
    EXPECT_NEAR(p.error(), std::sqrt(0.25 * 0.75 / 100), 1e-12);
    EXPECT_EQ(Proportion{}.value(), 0.0);
}

TEST(BellProbs, OrderInvariantAndNormalized) {
    const DeviceModel dev = device_preset("B");
    ExperimentSpec spec;
    spec.kind = ExperimentKind::BellLifetime;
    spec.cycles = 2;
    const auto b = run_shots(compile_noise(build_experiment(spec, dev), dev), 3000, 8);
    auto acc = postselect(b, PostselectRule::WithFinalSubspace).accepted;
    const auto p1 = bell_probs(b, acc);
    std::reverse(acc.begin(), acc.end());
    const auto p2 = bell_probs(b, acc);
    double sum = 0;
    for (int k = 0; k < 4; ++k) {
        EXPECT_DOUBLE_EQ(p1.p[k], p2.p[k]);
        sum += p1.p[k];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_NEAR(p1.p_phi, p1.p[0] + p1.p[3], 1e-12);
    EXPECT_GT(p1.p_phi, 0.8);
}

TEST(Detection, NoiselessBell) {
    const DeviceModel dev = device_preset("ideal");
    ExperimentSpec spec;
    spec.kind = ExperimentKind::BellLifetime;
    spec.cycles = 4;
    const auto b = run_shots(build_experiment(spec, dev), 500, 1);
    const auto row = detection_fractions(b);
    ASSERT_EQ(row.sigma_x.size(), 4u);
    for (double v : row.sigma_x) EXPECT_EQ(v, 0.0);
    for (double v : row.sigma_z) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(row.shots, 500u);
}

// Noiseless product input in Z: the first X round is a coin, later rounds
// repeat it, so sigma_x is 1/2 on cycle 1 and zero afterwards.
TEST(Detection, NoiselessProductInput) {
    const DeviceModel dev = device_preset("ideal");
    ExperimentSpec spec;
    spec.cycles = 4;
    const auto b = run_shots(build_experiment(spec, dev), 4000, 2);
    const auto row = detection_fractions(b);
    EXPECT_NEAR(row.sigma_x[0], 0.5, 0.03);
    for (std::size_t n = 1; n < 4; ++n) EXPECT_EQ(row.sigma_x[n], 0.0);
    for (double v : row.sigma_z) EXPECT_EQ(v, 0.0);
}

TEST(LogicalExpectation, NoiselessIsExact) {
    const DeviceModel dev = device_preset("ideal");
    ExperimentSpec spec;
    spec.psi_in = "0110";
    spec.cycles = 2;
    const auto b = run_shots(build_experiment(spec, dev), 2000, 3);
    const auto acc = postselect(b, PostselectRule::WithFinalSubspace).accepted;
    ASSERT_FALSE(acc.empty());
    const auto l1 = logical_expectation(b, acc, 1), l2 = logical_expectation(b, acc, 2);
    EXPECT_EQ(std::abs(l1.mean), 1.0);
    EXPECT_EQ(std::abs(l2.mean), 1.0);
    EXPECT_EQ(l1.error, 0.0);
    const std::array<int, 2> want{static_cast<int>(l1.mean), static_cast<int>(l2.mean)};
    EXPECT_EQ(logical_state_probability(b, acc, want).value(), 1.0);
}

}  // namespace
}  // namespace starqed
