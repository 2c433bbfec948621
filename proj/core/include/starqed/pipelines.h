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

// End-to-end experiment drivers: build, compile noise, run, analyse.
//
// Each sub-run (one input state, one cycle count, one tomography setting)
// gets its own seed derived from the master seed and the sub-run identity.
// The seed does not depend on the enabled error classes, so error-budget
// ablations share random numbers with the full model.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "starqed/analysis.h"
#include "starqed/builders.h"
#include "starqed/device.h"
#include "starqed/engine.h"
#include "starqed/shadows.h"

namespace starqed {

/// Input label of the Bell experiments wherever a ket string is expected.
inline constexpr std::string_view kBellInput = "bell";

struct ShotsPolicy {
    std::size_t base = 100000;
    bool proportional = false;  // base * N shots for N cycles

    std::size_t at(int cycles) const;
};

struct RunContext {
    DeviceModel device;
    NoiseOptions noise;
    bool noisy = true;  // false: no noise compilation at all
    EngineOptions engine;
    uint64_t seed = 1;
    StabilizerOrder order = StabilizerOrder::XZ;
    SigmaDefinition sigma = SigmaDefinition::SyndromeChange;
};

/// Seed of one sub-run.
uint64_t sub_seed(uint64_t seed, std::string_view input, int cycles, int setting = -1);

CircuitProgram make_program(const ExperimentSpec& spec, const RunContext& ctx);

/// Logical state a product input is projected to by the first stabilizer
/// round, or the Bell state for kBellInput.
struct EncodedTarget {
    std::string label;  // ket label, e.g. "01", "+-" or "bell"
    Basis basis = Basis::Z;
    std::array<int, 2> eigenvalues{1, 1};  // (L1, L2) in `basis`
    CVector logical;  // amplitudes on |00>_L .. |11>_L
    StateVector physical{4};
};

EncodedTarget encoded_target(std::string_view psi_in);

/// The eight inputs of the lifetime table, one per logical basis state.
const std::vector<std::string>& lifetime_inputs();
/// The sixteen inputs of the tomography table.
const std::vector<std::string>& tomography_inputs();
/// Sixteen product states forming an eigenbasis of the stabilizer.
std::vector<std::string> stabilizer_eigenbasis_inputs(Basis stabilizer);
/// <psi|S|psi> for a product eigenstate of S.
int ideal_stabilizer_value(std::string_view psi_in, Basis stabilizer);

// Stabilizer tomography -----------------------------------------------------

struct StabilizerTomoRow {
    std::string psi_in;
    int s_ideal = 1;
    Estimate s;
};

struct StabilizerTomoResult {
    Basis stabilizer = Basis::Z;
    std::vector<StabilizerTomoRow> rows;
    double fidelity = 0.0;
};

StabilizerTomoResult run_stabilizer_tomography(Basis stabilizer, std::size_t shots, const RunContext& ctx);

// Repeated detection ----------------------------------------------------------

struct LifetimePoint {
    int cycles = 0;
    Proportion eta;      // stabilizers and final subspace
    Proportion eta_stab; // stabilizers only
    Estimate l1;
    Estimate l2;
    Proportion correct;  // both logical eigenvalues as encoded
};

struct LifetimeResult {
    std::string psi_in;
    EncodedTarget target;
    std::vector<LifetimePoint> points;
    AcceptanceCurve acceptance;
    /// Fits of the sign-corrected expectations; empty when not fittable.
    std::array<std::optional<FitResult>, 2> fits;
    std::optional<FitResult> correct_fit;
};

LifetimeResult run_lifetime(const std::string& psi_in, int max_cycles, const ShotsPolicy& shots,
                            const RunContext& ctx);

// Tomography --------------------------------------------------------------------

struct TomographyOptions {
    SettingMode mode = SettingMode::Exhaustive81;
    std::size_t settings = 81;  // Uniform mode only
    std::size_t shots_per_setting = 2000;
    int cycles = 1;
    ShadowOptions shadow;
};

struct TomographyResult {
    std::string psi_in;
    EncodedTarget target;
    int cycles = 0;
    ShadowDataset data;
    DensityEstimate density;
    ScalarEstimate f_l;
    ScalarEstimate p2_l;
    ScalarEstimate p2_phy;
    ScalarEstimate p_l;
    Proportion acceptance;
    double p_s = 0.0;  // acceptance, doubled for probabilistic encoding
};

/// Product input or kBellInput. cycles may be 0.
TomographyResult run_tomography(const std::string& psi_in, const TomographyOptions& options, const RunContext& ctx);

// Bell state ---------------------------------------------------------------------

struct BellPoint {
    int cycles = 0;
    Proportion eta;
    BellProbs probs;
    Estimate zz;  // <Z_L1 Z_L2> = 2 p_phi - 1 over accepted shots
};

struct BellResult {
    std::vector<BellPoint> points;
    AcceptanceCurve acceptance;
    std::optional<FitResult> zz_fit;
    std::vector<TomographyResult> tomography;
    std::optional<FitResult> fidelity_fit;
};

/// Z-basis lifetime for N = 1..max_cycles, plus tomography at each entry of
/// `tomography_cycles`.
BellResult run_bell(int max_cycles, const ShotsPolicy& shots, const std::vector<int>& tomography_cycles,
                    const TomographyOptions& tomography, const RunContext& ctx);

// Detectors -----------------------------------------------------------------------

struct DetectorGrid {
    std::string psi_in;
    std::vector<DetectionRow> rows;  // rows[N - 1] covers n = 1..N
};

DetectorGrid run_detectors(const std::string& psi_in, int max_cycles, const ShotsPolicy& shots,
                           const RunContext& ctx);

// Error budget ----------------------------------------------------------------------

struct BudgetRow {
    std::string removed;  // "none", an error class name, or "all"
    AcceptanceCurve acceptance;
    double rejection_rate = 0.0;  // 1 - P_S
    FitResult logical;            // fit of P(correct logical state)
    double epsilon = 0.0;
    double rejection_contribution = 0.0;  // full - ablated
    double epsilon_contribution = 0.0;
};

struct BudgetResult {
    std::string psi_in;
    std::vector<BudgetRow> rows;  // "none" first, then one per error class
    std::optional<BudgetRow> all_removed;
};

BudgetResult run_error_budget(const std::string& psi_in, int max_cycles, const ShotsPolicy& shots,
                              const RunContext& ctx, bool include_all_removed = false);

}  // namespace starqed
