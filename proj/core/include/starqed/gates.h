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

#include <cstdint>
#include <span>
#include <string_view>

namespace starqed {

/// Clifford gate set understood by every simulator backend.
///
/// SQRT_Y is R_y(pi/2): |0> -> |+>, conjugation Z -> X, X -> -Z.
/// SQRT_X is R_x(pi/2): |+i> -> |0>, conjugation Z -> -Y, Y -> Z.
/// ISWAP is |01> -> i|10>, |10> -> i|01>; MOVE into the resonator uses ISWAP and
/// MOVE back uses ISWAP_DAG so that an undisturbed round trip is the identity.
enum class Gate : uint8_t {
    I,
    X,
    Y,
    Z,
    H,
    S,
    S_DAG,
    SQRT_X,
    SQRT_X_DAG,
    SQRT_Y,
    SQRT_Y_DAG,
    CZ,
    CX,
    SWAP,
    ISWAP,
    ISWAP_DAG,
};

inline constexpr Gate kAllGates[] = {
    Gate::I,      Gate::X,          Gate::Y,      Gate::Z,          Gate::H,  Gate::S,
    Gate::S_DAG,  Gate::SQRT_X,     Gate::SQRT_X_DAG, Gate::SQRT_Y, Gate::SQRT_Y_DAG,
    Gate::CZ,     Gate::CX,         Gate::SWAP,   Gate::ISWAP,      Gate::ISWAP_DAG,
};

int gate_arity(Gate g);
std::string_view gate_name(Gate g);
/// Throws std::invalid_argument for unknown names.
Gate gate_from_name(std::string_view name);
Gate gate_inverse(Gate g);

/// Throws if the target count does not match the arity or targets repeat or
/// exceed `num_elements`.
void check_gate_targets(Gate g, std::span<const std::size_t> targets, std::size_t num_elements);

}  // namespace starqed
