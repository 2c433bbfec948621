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

#include "starqed/gates.h"

#include <stdexcept>
#include <string>

namespace starqed {

int gate_arity(Gate g) {
    switch (g) {
        case Gate::CZ:
        case Gate::CX:
        case Gate::SWAP:
        case Gate::ISWAP:
        case Gate::ISWAP_DAG:
            return 2;
        default:
            return 1;
    }
}

std::string_view gate_name(Gate g) {
    switch (g) {
        case Gate::I: return "I";
        case Gate::X: return "X";
        case Gate::Y: return "Y";
        case Gate::Z: return "Z";
        case Gate::H: return "H";
        case Gate::S: return "S";
        case Gate::S_DAG: return "S_DAG";
        case Gate::SQRT_X: return "SQRT_X";
        case Gate::SQRT_X_DAG: return "SQRT_X_DAG";
        case Gate::SQRT_Y: return "SQRT_Y";
        case Gate::SQRT_Y_DAG: return "SQRT_Y_DAG";
        case Gate::CZ: return "CZ";
        case Gate::CX: return "CX";
        case Gate::SWAP: return "SWAP";
        case Gate::ISWAP: return "ISWAP";
        case Gate::ISWAP_DAG: return "ISWAP_DAG";
    }
    return "?";
}

Gate gate_from_name(std::string_view name) {
    for (Gate g : kAllGates) {
        if (gate_name(g) == name) {
            return g;
        }
    }
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

Gate gate_inverse(Gate g) {
    switch (g) {
        case Gate::S: return Gate::S_DAG;
        case Gate::S_DAG: return Gate::S;
        case Gate::SQRT_X: return Gate::SQRT_X_DAG;
        case Gate::SQRT_X_DAG: return Gate::SQRT_X;
        case Gate::SQRT_Y: return Gate::SQRT_Y_DAG;
        case Gate::SQRT_Y_DAG: return Gate::SQRT_Y;
        case Gate::ISWAP: return Gate::ISWAP_DAG;
        case Gate::ISWAP_DAG: return Gate::ISWAP;
        default: return g;
    }
}

void check_gate_targets(Gate g, std::span<const std::size_t> targets, std::size_t num_elements) {
    if (static_cast<int>(targets.size()) != gate_arity(g)) {
        throw std::invalid_argument("gate " + std::string(gate_name(g)) + " expects " +
                                    std::to_string(gate_arity(g)) + " targets, got " +
                                    std::to_string(targets.size()));
    }
    for (std::size_t t : targets) {
        if (t >= num_elements) {
            throw std::out_of_range("gate " + std::string(gate_name(g)) + ": target " + std::to_string(t) +
                                    " out of range");
        }
    }
    if (targets.size() == 2 && targets[0] == targets[1]) {
        throw std::invalid_argument("gate " + std::string(gate_name(g)) + ": targets must be distinct");
    }
}

}  // namespace starqed
