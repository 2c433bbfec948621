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

#include "starqed/tableau.h"

#include <bit>
#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>

namespace starqed {

namespace {

void set_bit(std::vector<uint64_t>& v, std::size_t word0, std::size_t r, bool value) {
    uint64_t m = uint64_t{1} << (r & 63);
    uint64_t& w = v[word0 + (r >> 6)];
    w = value ? (w | m) : (w & ~m);
}

}  // namespace

Tableau::Tableau(std::size_t n)
    : n_(n), words_((2 * n + 63) / 64), xs_(n * words_, 0), zs_(n * words_, 0), signs_(words_, 0) {
    for (std::size_t q = 0; q < n_; ++q) {
        set_bit(xs_, q * words_, q, true);
        set_bit(zs_, q * words_, n_ + q, true);
    }
}

void Tableau::single(Gate gate, std::size_t q) {
    uint64_t* x = xcol(q);
    uint64_t* z = zcol(q);
    uint64_t* s = signs_.data();
    for (std::size_t w = 0; w < words_; ++w) {
        uint64_t xv = x[w];
        uint64_t zv = z[w];
        switch (gate) {
            case Gate::I:
                break;
            case Gate::X:
                s[w] ^= zv;
                break;
            case Gate::Y:
                s[w] ^= xv ^ zv;
                break;
            case Gate::Z:
                s[w] ^= xv;
                break;
            case Gate::H:
                s[w] ^= xv & zv;
                x[w] = zv;
                z[w] = xv;
                break;
            case Gate::S:
                s[w] ^= xv & zv;
                z[w] = zv ^ xv;
                break;
            case Gate::S_DAG:
                s[w] ^= xv & ~zv;
                z[w] = zv ^ xv;
                break;
            case Gate::SQRT_X:
                s[w] ^= zv & ~xv;
                x[w] = xv ^ zv;
                break;
            case Gate::SQRT_X_DAG:
                s[w] ^= xv & zv;
                x[w] = xv ^ zv;
                break;
            case Gate::SQRT_Y:
                s[w] ^= xv & ~zv;
                x[w] = zv;
                z[w] = xv;
                break;
            case Gate::SQRT_Y_DAG:
                s[w] ^= zv & ~xv;
                x[w] = zv;
                z[w] = xv;
                break;
            default:
                throw std::logic_error("Tableau::single: not a single-element gate");
        }
    }
}

void Tableau::cz(std::size_t a, std::size_t b) {
    uint64_t* xa = xcol(a);
    uint64_t* za = zcol(a);
    uint64_t* xb = xcol(b);
    uint64_t* zb = zcol(b);
    for (std::size_t w = 0; w < words_; ++w) {
        signs_[w] ^= xa[w] & xb[w] & (za[w] ^ zb[w]);
        za[w] ^= xb[w];
        zb[w] ^= xa[w];
    }
}

void Tableau::cx(std::size_t c, std::size_t t) {
    uint64_t* xc = xcol(c);
    uint64_t* zc = zcol(c);
    uint64_t* xt = xcol(t);
    uint64_t* zt = zcol(t);
    for (std::size_t w = 0; w < words_; ++w) {
        signs_[w] ^= xc[w] & zt[w] & ~(xt[w] ^ zc[w]);
        xt[w] ^= xc[w];
        zc[w] ^= zt[w];
    }
}

void Tableau::swap(std::size_t a, std::size_t b) {
    for (std::size_t w = 0; w < words_; ++w) {
        std::swap(xcol(a)[w], xcol(b)[w]);
        std::swap(zcol(a)[w], zcol(b)[w]);
    }
}

void Tableau::apply(Gate gate, std::span<const std::size_t> targets) {
    check_gate_targets(gate, targets, n_);
    switch (gate) {
        case Gate::CZ:
            cz(targets[0], targets[1]);
            break;
        case Gate::CX:
            cx(targets[0], targets[1]);
            break;
        case Gate::SWAP:
            swap(targets[0], targets[1]);
            break;
        case Gate::ISWAP:
            single(Gate::S, targets[0]);
            single(Gate::S, targets[1]);
            cz(targets[0], targets[1]);
            swap(targets[0], targets[1]);
            break;
        case Gate::ISWAP_DAG:
            swap(targets[0], targets[1]);
            cz(targets[0], targets[1]);
            single(Gate::S_DAG, targets[0]);
            single(Gate::S_DAG, targets[1]);
            break;
        default:
            single(gate, targets[0]);
    }
    assert(check_invariants());
}

void Tableau::apply_pauli(std::size_t q, Pauli p) {
    if (q >= n_) {
        throw std::out_of_range("Tableau::apply_pauli: element out of range");
    }
    switch (p) {
        case Pauli::I:
            break;
        case Pauli::X:
            single(Gate::X, q);
            break;
        case Pauli::Y:
            single(Gate::Y, q);
            break;
        case Pauli::Z:
            single(Gate::Z, q);
            break;
    }
}

void Tableau::apply_pauli(const PauliString& p) {
    if (p.size() != n_) {
        throw std::invalid_argument("Tableau::apply_pauli: size mismatch");
    }
    for (std::size_t q = 0; q < n_; ++q) {
        apply_pauli(q, p.get(q));
    }
}

PauliString Tableau::row(std::size_t r) const {
    PauliString out(n_);
    for (std::size_t q = 0; q < n_; ++q) {
        out.set(q, pauli_from_bits(bit(xs_, q, r), bit(zs_, q, r)));
    }
    out.set_phase(((signs_[r >> 6] >> (r & 63)) & 1) ? 2 : 0);
    return out;
}

bool Tableau::is_deterministic_z(std::size_t q) const {
    if (q >= n_) {
        throw std::out_of_range("Tableau::is_deterministic_z: element out of range");
    }
    // Random iff some stabilizer row has an X component on q.
    for (std::size_t r = n_; r < 2 * n_; ++r) {
        if (bit(xs_, q, r)) {
            return false;
        }
    }
    return true;
}

void Tableau::rowsum_into(const std::vector<uint64_t>& mask, std::size_t src) {
    // Bit-sliced mod-4 phase accumulators, one 2-bit counter per row.
    std::vector<uint64_t> lo(words_, 0);
    std::vector<uint64_t> hi(words_, 0);
    for (std::size_t q = 0; q < n_; ++q) {
        bool xs = bit(xs_, q, src);
        bool zs = bit(zs_, q, src);
        if (!xs && !zs) {
            continue;
        }
        uint64_t* x = xcol(q);
        uint64_t* z = zcol(q);
        for (std::size_t w = 0; w < words_; ++w) {
            uint64_t m = mask[w];
            uint64_t plus;
            uint64_t minus;
            if (xs && zs) {
                plus = z[w] & ~x[w];
                minus = x[w] & ~z[w];
            } else if (xs) {
                plus = z[w] & x[w];
                minus = z[w] & ~x[w];
            } else {
                plus = x[w] & ~z[w];
                minus = x[w] & z[w];
            }
            plus &= m;
            minus &= m;
            uint64_t carry = lo[w] & plus;
            lo[w] ^= plus;
            hi[w] ^= carry;
            uint64_t borrow = ~lo[w] & minus;
            lo[w] ^= minus;
            hi[w] ^= borrow;
            if (xs) {
                x[w] ^= m;
            }
            if (zs) {
                z[w] ^= m;
            }
        }
    }
    bool src_sign = (signs_[src >> 6] >> (src & 63)) & 1;
    for (std::size_t w = 0; w < words_; ++w) {
        signs_[w] ^= (hi[w] ^ (src_sign ? ~uint64_t{0} : 0)) & mask[w];
    }
}

bool Tableau::deterministic_outcome(std::size_t q) const {
    int phase = 0;
    for (std::size_t col = 0; col < n_; ++col) {
        bool ax = false;
        bool az = false;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!bit(xs_, q, i)) {
                continue;
            }
            std::size_t r = n_ + i;
            bool rx = bit(xs_, col, r);
            bool rz = bit(zs_, col, r);
            phase += pauli_product_phase(rx, rz, ax, az);
            ax ^= rx;
            az ^= rz;
        }
    }
    for (std::size_t i = 0; i < n_; ++i) {
        if (bit(xs_, q, i)) {
            std::size_t r = n_ + i;
            phase += ((signs_[r >> 6] >> (r & 63)) & 1) ? 2 : 0;
        }
    }
    return (((phase % 4) + 4) % 4) == 2;
}

bool Tableau::collapse(std::size_t q, std::size_t pivot, bool outcome) {
    std::vector<uint64_t> mask(xcol(q), xcol(q) + words_);
    mask[pivot >> 6] &= ~(uint64_t{1} << (pivot & 63));
    rowsum_into(mask, pivot);

    std::size_t d = pivot - n_;
    for (std::size_t c = 0; c < n_; ++c) {
        set_bit(xs_, c * words_, d, bit(xs_, c, pivot));
        set_bit(zs_, c * words_, d, bit(zs_, c, pivot));
        set_bit(xs_, c * words_, pivot, false);
        set_bit(zs_, c * words_, pivot, c == q);
    }
    set_bit(signs_, 0, d, (signs_[pivot >> 6] >> (pivot & 63)) & 1);
    set_bit(signs_, 0, pivot, outcome);
    assert(check_invariants());
    return outcome;
}

bool Tableau::measure_z_forced(std::size_t q, bool random_outcome) {
    if (q >= n_) {
        throw std::out_of_range("Tableau::measure_z: element out of range");
    }
    for (std::size_t r = n_; r < 2 * n_; ++r) {
        if (bit(xs_, q, r)) {
            return collapse(q, r, random_outcome);
        }
    }
    return deterministic_outcome(q);
}

bool Tableau::measure_z(std::size_t q, CounterRng& rng) {
    if (q >= n_) {
        throw std::out_of_range("Tableau::measure_z: element out of range");
    }
    for (std::size_t r = n_; r < 2 * n_; ++r) {
        if (bit(xs_, q, r)) {
            return collapse(q, r, rng.coin());
        }
    }
    return deterministic_outcome(q);
}

void Tableau::reset_z(std::size_t q, CounterRng& rng) {
    if (measure_z(q, rng)) {
        single(Gate::X, q);
    }
}

void Tableau::reset_z_forced(std::size_t q, bool random_outcome) {
    if (measure_z_forced(q, random_outcome)) {
        single(Gate::X, q);
    }
}

int Tableau::expectation(const PauliString& p) const {
    if (p.size() != n_) {
        throw std::invalid_argument("Tableau::expectation: size mismatch");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("Tableau::expectation: observable must be Hermitian");
    }
    PauliString acc(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        PauliString s = stabilizer(i);
        if (!p.commutes(s)) {
            return 0;
        }
        if (!p.commutes(destabilizer(i))) {
            acc *= s;
        }
    }
    PauliString bare = p;
    bare.set_phase(0);
    PauliString acc_bare = acc;
    acc_bare.set_phase(0);
    if (!(bare == acc_bare)) {
        throw std::logic_error("Tableau::expectation: observable not in stabilizer group");
    }
    return acc.phase() == p.phase() ? 1 : -1;
}

bool Tableau::check_invariants() const {
    std::vector<PauliString> rows;
    rows.reserve(2 * n_);
    for (std::size_t r = 0; r < 2 * n_; ++r) {
        rows.push_back(row(r));
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (!rows[n_ + i].commutes(rows[n_ + j])) {
                return false;
            }
            if (i != j && !rows[i].commutes(rows[j])) {
                return false;
            }
            bool anti = !rows[i].commutes(rows[n_ + j]);
            if (anti != (i == j)) {
                return false;
            }
        }
    }
    return true;
}

Tableau apply_clifford(Tableau tableau, Gate gate, std::span<const std::size_t> targets) {
    tableau.apply(gate, targets);
    return tableau;
}

}  // namespace starqed
