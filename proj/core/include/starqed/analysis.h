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

// Statistics on raw shots: syndromes, post-selection, acceptance curves,
// logical expectations and exponential decay fits.
//
// Ancillas are never reset, so the syndrome of cycle n is the change of the
// ancilla bit, s_n = (-1)^(d_n xor d_{n-1}) with d_0 = 0. Detection events
// then mark changes of s: sigma_n = (1 - s_n s_{n-1}) / 2 with s_0 = +1.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "starqed/circuit.h"
#include "starqed/engine.h"

namespace starqed {

/// How detection events are derived from ancilla bits.
enum class SigmaDefinition : uint8_t {
    SyndromeChange,  // sigma_n = (1 - s_n s_{n-1}) / 2, the default
    AncillaChange,   // sigma_n = d_n xor d_{n-1}, i.e. (1 - s_n) / 2
};

std::string sigma_definition_name(SigmaDefinition d);
SigmaDefinition sigma_definition_from_name(const std::string& name);

struct SyndromeTrace {
    std::vector<int> s_x;  // +1 / -1 per cycle; empty if A_X was not measured
    std::vector<int> s_z;
    std::vector<uint8_t> sigma_x;
    std::vector<uint8_t> sigma_z;

    const std::vector<int>& s(Basis stabilizer) const { return stabilizer == Basis::X ? s_x : s_z; }
    const std::vector<uint8_t>& sigma(Basis stabilizer) const { return stabilizer == Basis::X ? sigma_x : sigma_z; }
};

std::vector<int> syndrome_signs(std::span<const uint8_t> d);
std::vector<uint8_t> detection_events(std::span<const uint8_t> d, SigmaDefinition def = {});
SyndromeTrace syndromes(const RunRecord& record, SigmaDefinition def = {});

/// Fraction k / n with its binomial standard error.
struct Proportion {
    std::size_t hits = 0;
    std::size_t total = 0;

    double value() const { return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0; }
    double error() const;
};

enum class PostselectRule : uint8_t {
    AllSPlusOne,        // every measured stabilizer syndrome is +1
    WithFinalSubspace,  // and the final data bits have even parity
};

struct PostselectResult {
    std::vector<std::size_t> accepted;  // shot indices, increasing
    Proportion acceptance;
    bool empty() const { return accepted.empty(); }
};

/// Applies `rule` to every shot. With d_0 = 0 all syndromes are +1 exactly
/// when every ancilla bit is 0. WithFinalSubspace needs a uniform readout
/// basis (Z or X); it throws otherwise.
PostselectResult postselect(const ShotBatch& batch, PostselectRule rule);

/// One point of eta_N.
struct AcceptancePoint {
    int cycles = 0;
    Proportion eta;
};

struct AcceptanceCurve {
    std::vector<AcceptancePoint> points;
    double p_s = 0.0;
    double p_s_error = 0.0;
    double p_l = 0.0;
    double p_l_error = 0.0;
    double r2 = 0.0;  // of the weighted log-linear fit
    std::size_t dropped = 0;  // points with eta = 0
    bool deterministic_encoding = false;
};

/// Weighted least squares of log eta_N = N log P_S + log(P_L / 2), weights
/// eta_N. With `deterministic_encoding` the factor 1/2 is dropped. Needs two
/// usable points; throws std::invalid_argument otherwise.
AcceptanceCurve acceptance_fit(std::vector<AcceptancePoint> points, bool deterministic_encoding = false);

/// Mean of a +-1 quantity with binomial error.
struct Estimate {
    double mean = 0.0;
    double error = 0.0;
    std::size_t count = 0;
    bool empty() const { return count == 0; }
};

/// Mean of logical operator i (1 or 2) in the uniform readout basis over the
/// accepted shots.
Estimate logical_expectation(const ShotBatch& batch, std::span<const std::size_t> accepted, int i);

/// Fraction of accepted shots whose logical eigenvalues equal `expected`.
Proportion logical_state_probability(const ShotBatch& batch, std::span<const std::size_t> accepted,
                                     std::array<int, 2> expected);

struct DecayPoint {
    int cycles = 0;
    double value = 0.0;
    double weight = 1.0;
};

struct FitResult {
    double a = 0.0;
    double b = 0.0;
    double a_error = 0.0;
    double b_error = 0.0;
    double tau_us = 0.0;  // t_cycle / b, +inf when b <= 0
    double tau_error_us = 0.0;
    double epsilon = 0.0;  // (1 - e^-b) / 2
    double epsilon_error = 0.0;
    double r2 = 0.0;
    std::size_t used = 0;
    std::size_t dropped = 0;  // non-positive values or weights
    bool degenerate = false;  // b <= 0
};

/// Weighted least squares of log(value) = log a - b N. Needs three usable
/// points. Uncertainties come from the weighted residuals; tau and epsilon
/// errors follow from b by the delta method.
FitResult fit_decay(std::span<const DecayPoint> points, double t_cycle_us);

/// Expectation of the stabilizer measured in a single-stabilizer run,
/// (-1)^d_1 averaged over all shots.
Estimate stabilizer_mean(const ShotBatch& batch, Basis stabilizer);

/// 1 - mean |s_exp - s_ideal| / 2.
double stabilizer_fidelity(std::span<const double> s_exp, std::span<const double> s_ideal);

/// Z-basis logical histogram of accepted shots. Index by ket label order
/// "00", "01", "10", "11" (first digit is logical qubit 2).
struct BellProbs {
    std::array<double, 4> p{};
    std::array<double, 4> error{};
    double p_phi = 0.0;  // p(00) + p(11)
    double p_phi_error = 0.0;
    std::size_t count = 0;
};

BellProbs bell_probs(const ShotBatch& batch, std::span<const std::size_t> accepted);

/// Mean detection event per cycle over all shots, no post-selection.
struct DetectionRow {
    int cycles = 0;
    std::vector<double> sigma_x;  // index n - 1
    std::vector<double> sigma_z;
    std::size_t shots = 0;
};

DetectionRow detection_fractions(const ShotBatch& batch, SigmaDefinition def = {});

}  // namespace starqed
