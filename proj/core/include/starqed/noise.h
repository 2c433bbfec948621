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

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "starqed/pauli_string.h"
#include "starqed/rng.h"

namespace starqed {

enum class NoiseKind : uint8_t {
    Depolarize1,    // prob p: uniform over {X, Y, Z}
    Depolarize2,    // prob p: uniform over the 15 non-identity two-element Paulis
    PauliChannel1,  // X, Y, Z with probabilities px, py, pz
    BitFlip,        // X with prob p
};

std::string noise_kind_name(NoiseKind kind);

/// Pauli channel attached to one or two elements.
struct NoiseEvent {
    NoiseKind kind = NoiseKind::Depolarize1;
    /// p for Depolarize1/2 and BitFlip; (px, py, pz) for PauliChannel1.
    std::array<double, 3> params{};
    std::vector<std::size_t> targets;

    static NoiseEvent depolarize1(std::size_t q, double p);
    static NoiseEvent depolarize2(std::size_t a, std::size_t b, double p);
    static NoiseEvent pauli_channel1(std::size_t q, double px, double py, double pz);
    static NoiseEvent bitflip(std::size_t q, double p);

    /// Throws std::invalid_argument when probabilities are outside [0, 1],
    /// px + py + pz > 1, or the target count is wrong.
    void validate() const;

    /// Total probability that some non-identity Pauli is applied.
    double total_probability() const;

    bool operator==(const NoiseEvent&) const = default;
};

/// Sampled Pauli on the event's targets: up to two single-element Paulis.
struct SampledPauli {
    std::array<Pauli, 2> paulis{Pauli::I, Pauli::I};
};

/// Maps one uniform draw u in [0, 1) to the channel outcome. Returns nothing
/// when the identity branch is taken. Every channel consumes exactly one draw,
/// so runs that differ only in probabilities stay aligned draw for draw.
std::optional<SampledPauli> select_pauli(const NoiseEvent& event, double u);

/// Samples the channel and returns the Pauli as a string over `num_elements`.
std::optional<PauliString> sample_noise(const NoiseEvent& event, std::size_t num_elements, CounterRng& rng);

}  // namespace starqed
