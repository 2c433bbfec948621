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

// The [[4,2,2]] code on data qubits D1..D4.
//
// Data bits are passed as a 4-bit mask, bit k holding D(k+1). Ket strings
// such as "+-+-" or "0011" list D1 first.

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "starqed/circuit.h"
#include "starqed/dense.h"
#include "starqed/pauli_string.h"

namespace starqed {

enum class CodewordBasis : uint8_t { Z, X, Mixed };

struct CodeDefinition {
    std::array<std::string, 4> data_names{"D1", "D2", "D3", "D4"};
    PauliString s_x;
    PauliString s_z;
    PauliString x_l1;
    PauliString z_l1;
    PauliString x_l2;
    PauliString z_l2;

    /// The code used throughout the library.
    static const CodeDefinition& standard();

    /// Logical operator of qubit i in {1, 2}, basis Z or X.
    const PauliString& logical(Basis basis, int i) const;
    const PauliString& stabilizer(Basis basis) const;
};

/// Logical basis labels accepted by codeword().
const std::vector<std::string>& codeword_labels(CodewordBasis basis);

/// Product state from a ket string over {0,1,+,-}; element k is character k.
StateVector product_state(std::string_view ket);

/// Physical 4-qubit state of a logical basis label: "00".."11" (Z),
/// "++", "+-", "-+", "--" (X), "0+", "+0" (Mixed).
StateVector codeword(std::string_view label, CodewordBasis basis);
/// Basis deduced from the label.
StateVector codeword(std::string_view label);

/// Logical eigenvalues (L1, L2) from four data bits read in `basis` (Z or X).
std::array<int, 2> evaluate_logicals(unsigned bits, Basis basis);

/// Even total parity, i.e. the readout-basis stabilizer reads +1.
bool in_logical_subspace(unsigned bits, Basis basis);

/// Columns are |00>_L, |01>_L, |10>_L, |11>_L as 16-dimensional vectors.
CMatrix logical_basis_projectors();

/// Operator eigenvalues (L1, L2) carried by a Z or X basis label. The first
/// ket digit follows logical qubit 2.
std::array<int, 2> label_eigenvalues(std::string_view label);
/// Inverse of label_eigenvalues for the given basis.
std::string label_from_eigenvalues(std::array<int, 2> eig, Basis basis);

/// Label written in operator order "(L1,L2)", e.g. "01" -> "10".
std::string operator_order_label(std::string_view label);

}  // namespace starqed
