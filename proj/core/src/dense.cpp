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

#include "starqed/dense.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "starqed/rng.h"

namespace starqed {

namespace {

const Complex kI{0.0, 1.0};

void check_dense_size(std::size_t n) {
    if (n > kMaxDenseElements) {
        throw std::invalid_argument("dense simulation supports at most 8 elements, got " + std::to_string(n));
    }
}

// Applies a 2^k x 2^k matrix to every column of `m`, acting on `targets`.
void apply_left(CMatrix& m, const CMatrix& u, std::span<const std::size_t> targets) {
    const std::size_t k = targets.size();
    const std::size_t local = std::size_t{1} << k;
    const std::size_t dim = static_cast<std::size_t>(m.rows());
    std::size_t tmask = 0;
    for (auto t : targets) {
        tmask |= std::size_t{1} << t;
    }
    std::vector<std::size_t> idx(local);
    CVector in(static_cast<Eigen::Index>(local));
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & tmask) {
            continue;
        }
        for (std::size_t l = 0; l < local; ++l) {
            std::size_t i = base;
            for (std::size_t b = 0; b < k; ++b) {
                if ((l >> b) & 1) {
                    i |= std::size_t{1} << targets[b];
                }
            }
            idx[l] = i;
        }
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            for (std::size_t l = 0; l < local; ++l) {
                in(static_cast<Eigen::Index>(l)) = m(static_cast<Eigen::Index>(idx[l]), c);
            }
            CVector out = u * in;
            for (std::size_t l = 0; l < local; ++l) {
                m(static_cast<Eigen::Index>(idx[l]), c) = out(static_cast<Eigen::Index>(l));
            }
        }
    }
}

void conjugate(CMatrix& rho, const CMatrix& u, std::span<const std::size_t> targets) {
    apply_left(rho, u, targets);
    CMatrix adj = rho.adjoint();
    apply_left(adj, u, targets);
    rho = adj.adjoint();
}

}  // namespace

CMatrix pauli_matrix(Pauli p) {
    CMatrix m(2, 2);
    switch (p) {
        case Pauli::I: m << 1, 0, 0, 1; break;
        case Pauli::X: m << 0, 1, 1, 0; break;
        case Pauli::Y: m << 0, -kI, kI, 0; break;
        case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

CMatrix gate_matrix(Gate gate) {
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix m;
    switch (gate) {
        case Gate::I: return pauli_matrix(Pauli::I);
        case Gate::X: return pauli_matrix(Pauli::X);
        case Gate::Y: return pauli_matrix(Pauli::Y);
        case Gate::Z: return pauli_matrix(Pauli::Z);
        case Gate::H:
            m.resize(2, 2);
            m << r, r, r, -r;
            return m;
        case Gate::S:
            m.resize(2, 2);
            m << 1, 0, 0, kI;
            return m;
        case Gate::S_DAG:
            m.resize(2, 2);
            m << 1, 0, 0, -kI;
            return m;
        case Gate::SQRT_X:
            m.resize(2, 2);
            m << r, -kI * r, -kI * r, r;
            return m;
        case Gate::SQRT_X_DAG:
            m.resize(2, 2);
            m << r, kI * r, kI * r, r;
            return m;
        case Gate::SQRT_Y:
            m.resize(2, 2);
            m << r, -r, r, r;
            return m;
        case Gate::SQRT_Y_DAG:
            m.resize(2, 2);
            m << r, r, -r, r;
            return m;
        case Gate::CZ:
            m = CMatrix::Identity(4, 4);
            m(3, 3) = -1;
            return m;
        case Gate::CX:
            // control = first target (local bit 0)
            m = CMatrix::Zero(4, 4);
            m(0, 0) = 1;
            m(2, 2) = 1;
            m(3, 1) = 1;
            m(1, 3) = 1;
            return m;
        case Gate::SWAP:
            m = CMatrix::Zero(4, 4);
            m(0, 0) = 1;
            m(3, 3) = 1;
            m(1, 2) = 1;
            m(2, 1) = 1;
            return m;
        case Gate::ISWAP:
            m = CMatrix::Zero(4, 4);
            m(0, 0) = 1;
            m(3, 3) = 1;
            m(1, 2) = kI;
            m(2, 1) = kI;
            return m;
        case Gate::ISWAP_DAG:
            m = CMatrix::Zero(4, 4);
            m(0, 0) = 1;
            m(3, 3) = 1;
            m(1, 2) = -kI;
            m(2, 1) = -kI;
            return m;
    }
    throw std::invalid_argument("gate_matrix: unsupported gate");
}

CMatrix pauli_string_matrix(const PauliString& p) {
    const std::size_t n = p.size();
    check_dense_size(n);
    const std::size_t dim = std::size_t{1} << n;
    CMatrix m = CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t q = 0; q < n; ++q) {
        if (p.get(q) != Pauli::I) {
            std::size_t t[] = {q};
            apply_left(m, pauli_matrix(p.get(q)), t);
        }
    }
    static const Complex kPhase[] = {1.0, kI, -1.0, -kI};
    return m * kPhase[p.phase()];
}

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(std::size_t n) : n_(n) {
    check_dense_size(n);
    amps_ = CVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
    amps_(0) = 1.0;
}

StateVector::StateVector(std::size_t n, CVector amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    check_dense_size(n);
    if (amps_.size() != static_cast<Eigen::Index>(std::size_t{1} << n)) {
        throw std::invalid_argument("StateVector: amplitude count does not match 2^n");
    }
}

void StateVector::apply(Gate gate, std::span<const std::size_t> targets) {
    check_gate_targets(gate, targets, n_);
    apply_matrix(gate_matrix(gate), targets);
}

void StateVector::apply_matrix(const CMatrix& u, std::span<const std::size_t> targets) {
    CMatrix m = amps_;
    apply_left(m, u, targets);
    amps_ = m.col(0);
}

void StateVector::apply_pauli(const PauliString& p) {
    for (std::size_t q = 0; q < n_; ++q) {
        if (p.get(q) != Pauli::I) {
            std::size_t t[] = {q};
            apply_matrix(pauli_matrix(p.get(q)), t);
        }
    }
}

double StateVector::probability_one(std::size_t q) const {
    double p = 0.0;
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
        if ((static_cast<std::size_t>(i) >> q) & 1) {
            p += std::norm(amps_(i));
        }
    }
    return p;
}

double StateVector::collapse(std::size_t q, bool bit) {
    double p = 0.0;
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
        if ((((static_cast<std::size_t>(i) >> q) & 1) != 0) != bit) {
            amps_(i) = 0.0;
        } else {
            p += std::norm(amps_(i));
        }
    }
    if (p > 0) {
        amps_ /= std::sqrt(p);
    }
    return p;
}

Complex StateVector::expectation(const PauliString& p) const {
    return amps_.adjoint() * (pauli_string_matrix(p) * amps_);
}

double StateVector::fidelity(const StateVector& other) const {
    return std::norm(other.amps_.dot(amps_));
}

// -------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(std::size_t n) : n_(n) {
    check_dense_size(n);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    rho_ = CMatrix::Zero(dim, dim);
    rho_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(const StateVector& psi)
    : n_(psi.size()), rho_(psi.amplitudes() * psi.amplitudes().adjoint()) {}

DensityMatrix::DensityMatrix(std::size_t n, CMatrix rho) : n_(n), rho_(std::move(rho)) {
    check_dense_size(n);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    if (rho_.rows() != dim || rho_.cols() != dim) {
        throw std::invalid_argument("DensityMatrix: matrix size does not match 2^n");
    }
}

void DensityMatrix::apply(Gate gate, std::span<const std::size_t> targets) {
    check_gate_targets(gate, targets, n_);
    apply_matrix(gate_matrix(gate), targets);
}

void DensityMatrix::apply_matrix(const CMatrix& u, std::span<const std::size_t> targets) {
    conjugate(rho_, u, targets);
}

void DensityMatrix::apply_noise(const NoiseEvent& event) {
    event.validate();
    for (auto t : event.targets) {
        if (t >= n_) {
            throw std::out_of_range("DensityMatrix::apply_noise: target out of range");
        }
    }
    // Enumerate every Pauli branch with its probability.
    std::vector<std::pair<std::array<Pauli, 2>, double>> branches;
    const auto& p = event.params;
    switch (event.kind) {
        case NoiseKind::Depolarize1:
            for (int k = 1; k < 4; ++k) {
                branches.push_back({{static_cast<Pauli>(k), Pauli::I}, p[0] / 3.0});
            }
            break;
        case NoiseKind::Depolarize2:
            for (int m = 1; m < 16; ++m) {
                branches.push_back({{static_cast<Pauli>(m >> 2), static_cast<Pauli>(m & 3)}, p[0] / 15.0});
            }
            break;
        case NoiseKind::PauliChannel1:
            branches.push_back({{Pauli::X, Pauli::I}, p[0]});
            branches.push_back({{Pauli::Y, Pauli::I}, p[1]});
            branches.push_back({{Pauli::Z, Pauli::I}, p[2]});
            break;
        case NoiseKind::BitFlip:
            branches.push_back({{Pauli::X, Pauli::I}, p[0]});
            break;
    }
    CMatrix out = (1.0 - event.total_probability()) * rho_;
    for (const auto& [paulis, prob] : branches) {
        if (prob == 0.0) {
            continue;
        }
        CMatrix term = rho_;
        for (std::size_t k = 0; k < event.targets.size(); ++k) {
            if (paulis[k] != Pauli::I) {
                std::size_t t[] = {event.targets[k]};
                conjugate(term, pauli_matrix(paulis[k]), t);
            }
        }
        out += prob * term;
    }
    rho_ = std::move(out);
}

void DensityMatrix::reset(std::size_t q) {
    std::size_t t[] = {q};
    CMatrix k0 = CMatrix::Zero(2, 2);
    k0(0, 0) = 1;
    CMatrix k1 = CMatrix::Zero(2, 2);
    k1(0, 1) = 1;
    CMatrix a = rho_;
    conjugate(a, k0, t);
    CMatrix b = rho_;
    conjugate(b, k1, t);
    rho_ = a + b;
}

DensityMatrix DensityMatrix::projected(std::size_t q, bool bit) const {
    std::size_t t[] = {q};
    CMatrix proj = CMatrix::Zero(2, 2);
    proj(bit ? 1 : 0, bit ? 1 : 0) = 1;
    CMatrix out = rho_;
    conjugate(out, proj, t);
    return DensityMatrix(n_, std::move(out));
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

Complex DensityMatrix::expectation(const PauliString& p) const { return (rho_ * pauli_string_matrix(p)).trace(); }

double DensityMatrix::fidelity(const StateVector& psi) const {
    return (psi.amplitudes().adjoint() * rho_ * psi.amplitudes())(0, 0).real();
}

bool DensityMatrix::is_valid(double tol) const {
    if (std::abs(trace() - 1.0) > 1e-10) {
        return false;
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_);
    return es.eigenvalues().minCoeff() >= -tol;
}

// --------------------------------------------------------------- Programs

OutcomeDistribution exact_distribution(const CircuitProgram& program) {
    const std::size_t n = program.num_elements();
    check_dense_size(n);
    std::size_t num_meas = program.count(OpKind::Measure);
    if (num_meas > 24) {
        throw std::invalid_argument("exact_distribution: too many measurements");
    }
    std::map<uint64_t, DensityMatrix> branches;
    branches.emplace(0, DensityMatrix(n));
    int m = 0;
    for (const auto& ins : program.instructions) {
        switch (ins.kind) {
            case OpKind::PrepareZero:
                for (auto& [_, rho] : branches) {
                    rho.reset(ins.targets[0]);
                }
                break;
            case OpKind::SingleQubitGate:
            case OpKind::TwoQubitGate:
            case OpKind::Move: {
                CMatrix u = gate_matrix(ins.gate);
                for (auto& [_, rho] : branches) {
                    rho.apply_matrix(u, ins.targets);
                }
                break;
            }
            case OpKind::Noise:
                for (auto& [_, rho] : branches) {
                    rho.apply_noise(*ins.noise);
                }
                break;
            case OpKind::Measure: {
                std::map<uint64_t, DensityMatrix> next;
                for (const auto& [key, rho] : branches) {
                    for (int bit = 0; bit < 2; ++bit) {
                        DensityMatrix part = rho.projected(ins.targets[0], bit != 0);
                        if (part.trace() > 1e-14) {
                            next.emplace(key | (static_cast<uint64_t>(bit) << m), std::move(part));
                        }
                    }
                }
                branches = std::move(next);
                ++m;
                break;
            }
            case OpKind::Barrier:
                break;
        }
    }
    OutcomeDistribution out;
    for (const auto& [key, rho] : branches) {
        out[key] = rho.trace();
    }
    return out;
}

OutcomeDistribution dense_reference_run(const CircuitProgram& program, std::size_t shots, uint64_t seed) {
    OutcomeDistribution exact = exact_distribution(program);
    std::vector<uint64_t> keys;
    std::vector<double> weights;
    for (const auto& [k, p] : exact) {
        keys.push_back(k);
        weights.push_back(p);
    }
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    CounterRng rng(seed);
    std::vector<uint64_t> counts(keys.size(), 0);
    for (std::size_t s = 0; s < shots; ++s) {
        ++counts[pick(rng)];
    }
    OutcomeDistribution out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (counts[i] > 0) {
            out[keys[i]] = static_cast<double>(counts[i]) / static_cast<double>(shots);
        }
    }
    return out;
}

double total_variation_distance(const OutcomeDistribution& a, const OutcomeDistribution& b) {
    double sum = 0.0;
    for (const auto& [k, p] : a) {
        auto it = b.find(k);
        sum += std::abs(p - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [k, p] : b) {
        if (!a.contains(k)) {
            sum += p;
        }
    }
    return 0.5 * sum;
}

StateVector run_unitary(const CircuitProgram& program) {
    StateVector psi(program.num_elements());
    for (const auto& ins : program.instructions) {
        switch (ins.kind) {
            case OpKind::SingleQubitGate:
            case OpKind::TwoQubitGate:
            case OpKind::Move:
                psi.apply(ins.gate, ins.targets);
                break;
            case OpKind::PrepareZero:
                if (psi.probability_one(ins.targets[0]) > 1e-12) {
                    throw std::invalid_argument("run_unitary: reset of an excited element");
                }
                break;
            case OpKind::Barrier:
                break;
            case OpKind::Noise:
                if (ins.noise->total_probability() > 0) {
                    throw std::invalid_argument("run_unitary: program contains noise");
                }
                break;
            case OpKind::Measure:
                throw std::invalid_argument("run_unitary: program contains measurements");
        }
    }
    return psi;
}

}  // namespace starqed
