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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "starqed/gates.h"
#include "starqed/pauli_string.h"
#include "starqed/rng.h"

namespace starqed {

/// Stabilizer tableau (destabilizers + stabilizers) of an n-element state.
///
/// Storage is column-major: for every element q there is one bit column of
/// length 2n for the X parts and one for the Z parts, packed into 64-bit
/// words. Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers. A gate on
/// element q then touches only the words of column q.
class Tableau {
   public:
    /// The all-zero state: destabilizer i = X_i, stabilizer i = Z_i.
    explicit Tableau(std::size_t n);

    std::size_t size() const { return n_; }

    void apply(Gate gate, std::span<const std::size_t> targets);
    void apply(Gate gate, std::initializer_list<std::size_t> targets) {
        apply(gate, std::span<const std::size_t>(targets.begin(), targets.size()));
    }
    void apply_pauli(std::size_t q, Pauli p);
    void apply_pauli(const PauliString& p);

    bool is_deterministic_z(std::size_t q) const;

    /// Z-basis measurement. Random outcomes are drawn from `rng`; the state
    /// collapses according to the result.
    bool measure_z(std::size_t q, CounterRng& rng);
    /// Same, but a random outcome takes the value `random_outcome`.
    bool measure_z_forced(std::size_t q, bool random_outcome);
    /// Measure and flip back to |0>. The discarded outcome still collapses
    /// entangled partners, so it is drawn from `rng`.
    void reset_z(std::size_t q, CounterRng& rng);
    /// Reset whose random outcome takes the value `random_outcome`.
    void reset_z_forced(std::size_t q, bool random_outcome);

    PauliString stabilizer(std::size_t i) const { return row(n_ + i); }
    PauliString destabilizer(std::size_t i) const { return row(i); }

    /// +1 / -1 when +-P is in the stabilizer group, 0 when P anticommutes with
    /// some stabilizer (expectation zero). Throws if P is not Hermitian.
    int expectation(const PauliString& p) const;

    /// Commutation structure and full rank of the generator set.
    bool check_invariants() const;

    bool operator==(const Tableau& other) const = default;

   private:
    PauliString row(std::size_t r) const;
    bool bit(const std::vector<uint64_t>& v, std::size_t q, std::size_t r) const {
        return (v[q * words_ + (r >> 6)] >> (r & 63)) & 1;
    }
    uint64_t* xcol(std::size_t q) { return xs_.data() + q * words_; }
    uint64_t* zcol(std::size_t q) { return zs_.data() + q * words_; }

    void single(Gate gate, std::size_t q);
    void cz(std::size_t a, std::size_t b);
    void cx(std::size_t c, std::size_t t);
    void swap(std::size_t a, std::size_t b);

    /// rows[mask] <- row(src) * rows[mask], with phase tracking.
    void rowsum_into(const std::vector<uint64_t>& mask, std::size_t src);
    bool deterministic_outcome(std::size_t q) const;
    bool collapse(std::size_t q, std::size_t pivot, bool outcome);

    std::size_t n_;
    std::size_t words_;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
    std::vector<uint64_t> signs_;
};

/// Functional form of Tableau::apply.
Tableau apply_clifford(Tableau tableau, Gate gate, std::span<const std::size_t> targets);

}  // namespace starqed
