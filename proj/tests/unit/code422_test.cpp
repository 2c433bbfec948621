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

#include <bit>
#include <cmath>
#include <set>

#include "starqed/code422.h"

namespace starqed {
namespace {

const CodeDefinition& code() { return CodeDefinition::standard(); }

double expect(const StateVector& psi, const PauliString& p) { return psi.expectation(p).real(); }

TEST(Code422, OperatorAlgebra) {
    const auto& c = code();
    EXPECT_EQ(c.s_x, PauliString::parse("XXXX"));
    EXPECT_EQ(c.s_z, PauliString::parse("ZZZZ"));
    EXPECT_TRUE(c.s_x.commutes(c.s_z));
    for (int i = 1; i <= 2; ++i) {
        for (Basis b : {Basis::X, Basis::Z}) {
            EXPECT_TRUE(c.logical(b, i).commutes(c.s_x));
            EXPECT_TRUE(c.logical(b, i).commutes(c.s_z));
        }
        for (int j = 1; j <= 2; ++j) {
            EXPECT_EQ(c.logical(Basis::X, i).commutes(c.logical(Basis::Z, j)), i != j);
        }
    }
    EXPECT_EQ(c.z_l1, PauliString::parse("Z_Z_"));
    EXPECT_EQ(c.z_l2, PauliString::parse("ZZ__"));
    EXPECT_EQ(c.x_l1, PauliString::parse("__XX"));
    EXPECT_EQ(c.x_l2, PauliString::parse("_X_X"));
}

TEST(Code422, ZeroZeroCodeword) {
    StateVector psi = codeword("00", CodewordBasis::Z);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(psi.amplitudes()[0b0000] - Complex(h)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(psi.amplitudes()[0b1111] - Complex(h)), 0.0, 1e-12);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
}

TEST(Code422, MinusMinusCodeword) {
    StateVector expected = product_state("-++-");
    StateVector other = product_state("+--+");
    CVector sum = (expected.amplitudes() + other.amplitudes()) / std::sqrt(2.0);
    StateVector target(4, sum);
    EXPECT_NEAR(codeword("--", CodewordBasis::X).fidelity(target), 1.0, 1e-12);
}

TEST(Code422, EveryCodewordIsStabilized) {
    for (CodewordBasis b : {CodewordBasis::Z, CodewordBasis::X, CodewordBasis::Mixed}) {
        for (const auto& label : codeword_labels(b)) {
            StateVector psi = codeword(label, b);
            EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
            EXPECT_NEAR(expect(psi, code().s_x), 1.0, 1e-12) << label;
            EXPECT_NEAR(expect(psi, code().s_z), 1.0, 1e-12) << label;
        }
    }
    EXPECT_EQ(codeword_labels(CodewordBasis::Z).size(), 4u);
    EXPECT_EQ(codeword_labels(CodewordBasis::X).size(), 4u);
    EXPECT_EQ(codeword_labels(CodewordBasis::Mixed).size(), 2u);
    EXPECT_THROW(codeword("02", CodewordBasis::Z), std::invalid_argument);
}

// The label map is consistent with dense expectations and a bijection.
TEST(Code422, LabelEigenvaluesMatchOperators) {
    for (auto [cb, b] : {std::pair{CodewordBasis::Z, Basis::Z}, std::pair{CodewordBasis::X, Basis::X}}) {
        std::set<std::pair<int, int>> seen;
        for (const auto& label : codeword_labels(cb)) {
            StateVector psi = codeword(label, cb);
            auto eig = label_eigenvalues(label);
            EXPECT_NEAR(expect(psi, code().logical(b, 1)), eig[0], 1e-12) << label;
            EXPECT_NEAR(expect(psi, code().logical(b, 2)), eig[1], 1e-12) << label;
            EXPECT_EQ(label_from_eigenvalues(eig, b), label);
            seen.insert({eig[0], eig[1]});
        }
        EXPECT_EQ(seen.size(), 4u);
    }
    EXPECT_EQ(label_eigenvalues("01"), (std::array<int, 2>{-1, 1}));
    EXPECT_EQ(label_eigenvalues("10"), (std::array<int, 2>{1, -1}));
    EXPECT_EQ(operator_order_label("01"), "10");
}

TEST(Code422, EvaluateLogicals) {
    EXPECT_EQ(evaluate_logicals(0b0000, Basis::Z), (std::array<int, 2>{1, 1}));
    // D3 and D4 set: bit 2 and bit 3.
    EXPECT_EQ(evaluate_logicals(0b1100, Basis::Z), (std::array<int, 2>{-1, 1}));
    // (0,1,0,1) in D1..D4 order: D2 and D4 set.
    EXPECT_EQ(evaluate_logicals(0b1010, Basis::X), (std::array<int, 2>{-1, 1}));
}

// Bit-level evaluation agrees with the dense expectation on both branches.
TEST(Code422, EvaluateLogicalsAgreesWithCodewords) {
    for (auto [cb, b] : {std::pair{CodewordBasis::Z, Basis::Z}, std::pair{CodewordBasis::X, Basis::X}}) {
        for (const auto& label : codeword_labels(cb)) {
            StateVector psi = codeword(label, cb);
            if (b == Basis::X) {
                for (std::size_t q = 0; q < 4; ++q) {
                    psi.apply(Gate::H, std::vector<std::size_t>{q});
                }
            }
            int branches = 0;
            for (unsigned bits = 0; bits < 16; ++bits) {
                if (std::norm(psi.amplitudes()[bits]) < 1e-12) continue;
                ++branches;
                EXPECT_TRUE(in_logical_subspace(bits, b));
                EXPECT_EQ(evaluate_logicals(bits, b), label_eigenvalues(label)) << label << " " << bits;
            }
            EXPECT_EQ(branches, 2);
        }
    }
}

TEST(Code422, LogicalSubspaceIsEvenWeight) {
    int accepted = 0;
    std::set<unsigned> support;
    for (const auto& label : codeword_labels(CodewordBasis::Z)) {
        StateVector psi = codeword(label, CodewordBasis::Z);
        for (unsigned bits = 0; bits < 16; ++bits) {
            if (std::norm(psi.amplitudes()[bits]) > 1e-12) support.insert(bits);
        }
    }
    for (unsigned bits = 0; bits < 16; ++bits) {
        bool in = in_logical_subspace(bits, Basis::Z);
        accepted += in;
        EXPECT_EQ(in, std::popcount(bits) % 2 == 0);
        EXPECT_EQ(in, support.count(bits) == 1);
    }
    EXPECT_EQ(accepted, 8);
    EXPECT_TRUE(in_logical_subspace(0b1100, Basis::Z));
    EXPECT_FALSE(in_logical_subspace(0b1000, Basis::Z));
}

TEST(Code422, ProjectorsAreOrthonormal) {
    CMatrix v = logical_basis_projectors();
    ASSERT_EQ(v.rows(), 16);
    ASSERT_EQ(v.cols(), 4);
    EXPECT_LT((v.adjoint() * v - CMatrix::Identity(4, 4)).norm(), 1e-12);
    Eigen::ComplexEigenSolver<CMatrix> es(v * v.adjoint());
    int rank = 0;
    for (int k = 0; k < 16; ++k) rank += std::abs(es.eigenvalues()[k]) > 0.5;
    EXPECT_EQ(rank, 4);
    CMatrix sx = pauli_string_matrix(code().s_x);
    CMatrix sz = pauli_string_matrix(code().s_z);
    EXPECT_LT((sx * v - v).norm(), 1e-12);
    EXPECT_LT((sz * v - v).norm(), 1e-12);
    CVector zero = v.col(0);
    Complex z13 = zero.dot(pauli_string_matrix(PauliString::parse("Z_Z_")) * zero);
    EXPECT_NEAR(z13.real(), 1.0, 1e-12);
}

TEST(Code422, ProductStates) {
    StateVector psi = product_state("1+0-");
    EXPECT_NEAR(expect(psi, PauliString::parse("Z___")), -1.0, 1e-12);
    EXPECT_NEAR(expect(psi, PauliString::parse("_X__")), 1.0, 1e-12);
    EXPECT_NEAR(expect(psi, PauliString::parse("__Z_")), 1.0, 1e-12);
    EXPECT_NEAR(expect(psi, PauliString::parse("___X")), -1.0, 1e-12);
    EXPECT_THROW(product_state("01x0"), std::invalid_argument);
}

}  // namespace
}  // namespace starqed
