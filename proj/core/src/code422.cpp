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

#include "starqed/code422.h"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace starqed {

namespace {

struct CodewordSpec {
    const char* label;
    CodewordBasis basis;
    std::vector<const char*> branches;
};

const std::vector<CodewordSpec>& codeword_table() {
    static const std::vector<CodewordSpec> table = {
        {"00", CodewordBasis::Z, {"0000", "1111"}},
        {"01", CodewordBasis::Z, {"0011", "1100"}},
        {"10", CodewordBasis::Z, {"0101", "1010"}},
        {"11", CodewordBasis::Z, {"1001", "0110"}},
        {"++", CodewordBasis::X, {"++++", "----"}},
        {"+-", CodewordBasis::X, {"+-+-", "-+-+"}},
        {"-+", CodewordBasis::X, {"++--", "--++"}},
        {"--", CodewordBasis::X, {"-++-", "+--+"}},
        {"0+", CodewordBasis::Mixed, {"++00", "++11", "--00", "--11"}},
        {"+0", CodewordBasis::Mixed, {"+0+0", "+1+1", "-0-0", "-1-1"}},
    };
    return table;
}

int parity_sign(unsigned bits, unsigned mask) { return (std::popcount(bits & mask) & 1) ? -1 : 1; }

}  // namespace

const CodeDefinition& CodeDefinition::standard() {
    static const CodeDefinition code = [] {
        CodeDefinition c;
        c.s_x = PauliString::parse("XXXX");
        c.s_z = PauliString::parse("ZZZZ");
        c.x_l1 = PauliString::parse("__XX");
        c.z_l1 = PauliString::parse("Z_Z_");
        c.x_l2 = PauliString::parse("_X_X");
        c.z_l2 = PauliString::parse("ZZ__");
        return c;
    }();
    return code;
}

const PauliString& CodeDefinition::logical(Basis basis, int i) const {
    if (i != 1 && i != 2) {
        throw std::invalid_argument("logical qubit index must be 1 or 2");
    }
    switch (basis) {
        case Basis::Z: return i == 1 ? z_l1 : z_l2;
        case Basis::X: return i == 1 ? x_l1 : x_l2;
        default: throw std::invalid_argument("logical operators exist for Z and X only");
    }
}

const PauliString& CodeDefinition::stabilizer(Basis basis) const {
    switch (basis) {
        case Basis::Z: return s_z;
        case Basis::X: return s_x;
        default: throw std::invalid_argument("stabilizers exist for Z and X only");
    }
}

const std::vector<std::string>& codeword_labels(CodewordBasis basis) {
    static const std::vector<std::string> z = {"00", "01", "10", "11"};
    static const std::vector<std::string> x = {"++", "+-", "-+", "--"};
    static const std::vector<std::string> m = {"0+", "+0"};
    switch (basis) {
        case CodewordBasis::Z: return z;
        case CodewordBasis::X: return x;
        case CodewordBasis::Mixed: return m;
    }
    return z;
}

StateVector product_state(std::string_view ket) {
    const std::size_t n = ket.size();
    StateVector psi(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t t[] = {k};
        switch (ket[k]) {
            case '0': break;
            case '1': psi.apply(Gate::X, t); break;
            case '+': psi.apply(Gate::H, t); break;
            case '-':
                psi.apply(Gate::X, t);
                psi.apply(Gate::H, t);
                break;
            default: throw std::invalid_argument("product_state: bad character in '" + std::string(ket) + "'");
        }
    }
    return psi;
}

StateVector codeword(std::string_view label, CodewordBasis basis) {
    for (const auto& spec : codeword_table()) {
        if (spec.label == label && spec.basis == basis) {
            CVector sum = CVector::Zero(16);
            for (const char* b : spec.branches) {
                sum += product_state(b).amplitudes();
            }
            sum /= std::sqrt(static_cast<double>(spec.branches.size()));
            return StateVector(4, sum);
        }
    }
    throw std::invalid_argument("unknown codeword label '" + std::string(label) + "'");
}

StateVector codeword(std::string_view label) {
    for (const auto& spec : codeword_table()) {
        if (spec.label == label) {
            return codeword(label, spec.basis);
        }
    }
    throw std::invalid_argument("unknown codeword label '" + std::string(label) + "'");
}

std::array<int, 2> evaluate_logicals(unsigned bits, Basis basis) {
    switch (basis) {
        case Basis::Z: return {parity_sign(bits, 0b0101), parity_sign(bits, 0b0011)};
        case Basis::X: return {parity_sign(bits, 0b1100), parity_sign(bits, 0b1010)};
        default: throw std::invalid_argument("evaluate_logicals: basis must be Z or X");
    }
}

bool in_logical_subspace(unsigned bits, Basis basis) {
    if (basis == Basis::Y) {
        throw std::invalid_argument("in_logical_subspace: basis must be Z or X");
    }
    return (std::popcount(bits & 0xFu) & 1) == 0;
}

CMatrix logical_basis_projectors() {
    CMatrix out(16, 4);
    const auto& labels = codeword_labels(CodewordBasis::Z);
    for (int i = 0; i < 4; ++i) {
        out.col(i) = codeword(labels[static_cast<std::size_t>(i)], CodewordBasis::Z).amplitudes();
    }
    return out;
}

std::array<int, 2> label_eigenvalues(std::string_view label) {
    if (label.size() != 2) {
        throw std::invalid_argument("label_eigenvalues: bad label");
    }
    auto digit = [&](char c) {
        switch (c) {
            case '0':
            case '+': return 1;
            case '1':
            case '-': return -1;
            default: throw std::invalid_argument("label_eigenvalues: bad label");
        }
    };
    return {digit(label[1]), digit(label[0])};
}

std::string label_from_eigenvalues(std::array<int, 2> eig, Basis basis) {
    auto digit = [&](int e) {
        if (basis == Basis::Z) {
            return e > 0 ? '0' : '1';
        }
        return e > 0 ? '+' : '-';
    };
    return std::string{digit(eig[1]), digit(eig[0])};
}

std::string operator_order_label(std::string_view label) {
    if (label.size() != 2) {
        throw std::invalid_argument("operator_order_label: bad label");
    }
    return std::string{label[1], label[0]};
}

}  // namespace starqed
