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

// Small dense simulator used as an independent reference for the stabilizer
// engines. Basis index bit k is element k.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "starqed/circuit.h"
#include "starqed/gates.h"
#include "starqed/noise.h"
#include "starqed/pauli_string.h"

namespace starqed {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxDenseElements = 8;

/// Unitary of a gate in the local basis index b0 + 2*b1 (b0 = first target).
CMatrix gate_matrix(Gate gate);
CMatrix pauli_matrix(Pauli p);
/// Full 2^n x 2^n matrix of a Pauli string, including its phase.
CMatrix pauli_string_matrix(const PauliString& p);

/// Pure state on n <= 8 elements.
class StateVector {
   public:
    explicit StateVector(std::size_t n);  // |0...0>
    StateVector(std::size_t n, CVector amplitudes);

    std::size_t size() const { return n_; }
    const CVector& amplitudes() const { return amps_; }

    void apply(Gate gate, std::span<const std::size_t> targets);
    void apply_matrix(const CMatrix& u, std::span<const std::size_t> targets);
    void apply_pauli(const PauliString& p);

    double probability_one(std::size_t q) const;
    /// Projects element q onto |bit> and renormalizes. Returns the probability.
    double collapse(std::size_t q, bool bit);

    double norm() const { return amps_.norm(); }
    Complex expectation(const PauliString& p) const;
    /// |<other|this>|^2
    double fidelity(const StateVector& other) const;

   private:
    std::size_t n_;
    CVector amps_;
};

/// Mixed state on n <= 8 elements.
class DensityMatrix {
   public:
    explicit DensityMatrix(std::size_t n);  // |0...0><0...0|
    explicit DensityMatrix(const StateVector& psi);
    DensityMatrix(std::size_t n, CMatrix rho);

    std::size_t size() const { return n_; }
    const CMatrix& matrix() const { return rho_; }

    void apply(Gate gate, std::span<const std::size_t> targets);
    void apply_matrix(const CMatrix& u, std::span<const std::size_t> targets);
    void apply_noise(const NoiseEvent& event);
    void reset(std::size_t q);

    /// Unnormalized projection of element q onto |bit>.
    DensityMatrix projected(std::size_t q, bool bit) const;

    double trace() const { return rho_.trace().real(); }
    double purity() const;
    Complex expectation(const PauliString& p) const;
    double fidelity(const StateVector& psi) const;

    /// Trace one (within 1e-10), Hermitian, eigenvalues >= -1e-9.
    bool is_valid(double tol = 1e-9) const;

   private:
    std::size_t n_;
    CMatrix rho_;
};

/// Joint distribution over all measurement bits of a program. Key bit k is the
/// k-th measurement in instruction order.
using OutcomeDistribution = std::map<uint64_t, double>;

/// Exact outcome distribution by density-matrix evolution with branching on
/// every measurement. Throws for programs with more than 8 elements or more
/// than 24 measurements.
OutcomeDistribution exact_distribution(const CircuitProgram& program);

/// Draws `shots` samples from exact_distribution and returns their empirical
/// frequencies.
OutcomeDistribution dense_reference_run(const CircuitProgram& program, std::size_t shots, uint64_t seed);

double total_variation_distance(const OutcomeDistribution& a, const OutcomeDistribution& b);

/// Noiseless final state of a program that contains no measurements.
StateVector run_unitary(const CircuitProgram& program);

}  // namespace starqed
