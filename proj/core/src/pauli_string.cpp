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

#include "starqed/pauli_string.h"

#include <bit>
#include <stdexcept>

namespace starqed {

int pauli_product_phase(bool x1, bool z1, bool x2, bool z2) {
    if (!x1 && !z1) {
        return 0;
    }
    if (x1 && z1) {
        return static_cast<int>(z2) - static_cast<int>(x2);
    }
    if (x1) {
        return z2 ? (x2 ? 1 : -1) : 0;
    }
    return x2 ? (z2 ? -1 : 1) : 0;
}

PauliString::PauliString(std::size_t n) : n_(n), xs_((n + 63) / 64, 0), zs_((n + 63) / 64, 0) {}

PauliString PauliString::single(std::size_t n, std::size_t target, Pauli p) {
    if (target >= n) {
        throw std::out_of_range("PauliString::single: target out of range");
    }
    PauliString out(n);
    out.set(target, p);
    return out;
}

PauliString PauliString::parse(std::string_view text) {
    int phase = 0;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        phase = text.front() == '-' ? 2 : 0;
        text.remove_prefix(1);
    }
    if (!text.empty() && text.front() == 'i') {
        phase += 1;
        text.remove_prefix(1);
    }
    PauliString out(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
        switch (text[k]) {
            case '_':
            case 'I':
                break;
            case 'X':
                out.set(k, Pauli::X);
                break;
            case 'Y':
                out.set(k, Pauli::Y);
                break;
            case 'Z':
                out.set(k, Pauli::Z);
                break;
            default:
                throw std::invalid_argument("PauliString::parse: bad character '" + std::string(1, text[k]) + "'");
        }
    }
    out.set_phase(phase);
    return out;
}

Pauli PauliString::get(std::size_t k) const {
    if (k >= n_) {
        throw std::out_of_range("PauliString::get: index out of range");
    }
    return pauli_from_bits(x(k), z(k));
}

void PauliString::set(std::size_t k, Pauli p) {
    if (k >= n_) {
        throw std::out_of_range("PauliString::set: index out of range");
    }
    uint64_t bit = uint64_t{1} << (k & 63);
    xs_[k >> 6] = pauli_x_bit(p) ? (xs_[k >> 6] | bit) : (xs_[k >> 6] & ~bit);
    zs_[k >> 6] = pauli_z_bit(p) ? (zs_[k >> 6] | bit) : (zs_[k >> 6] & ~bit);
}

int PauliString::sign() const {
    if (!is_hermitian()) {
        throw std::logic_error("PauliString::sign: string is anti-Hermitian");
    }
    return phase_ == 0 ? 1 : -1;
}

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        w += static_cast<std::size_t>(std::popcount(xs_[i] | zs_[i]));
    }
    return w;
}

bool PauliString::is_identity() const { return weight() == 0; }

bool PauliString::commutes(const PauliString& other) const {
    if (other.n_ != n_) {
        throw std::invalid_argument("PauliString::commutes: size mismatch");
    }
    int parity = 0;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        parity ^= std::popcount((xs_[i] & other.zs_[i]) ^ (zs_[i] & other.xs_[i])) & 1;
    }
    return parity == 0;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
    if (rhs.n_ != n_) {
        throw std::invalid_argument("PauliString::operator*=: size mismatch");
    }
    int acc = phase_ + rhs.phase_;
    for (std::size_t k = 0; k < n_; ++k) {
        acc += pauli_product_phase(x(k), z(k), rhs.x(k), rhs.z(k));
    }
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        xs_[i] ^= rhs.xs_[i];
        zs_[i] ^= rhs.zs_[i];
    }
    set_phase(acc);
    return *this;
}

std::string PauliString::str() const {
    static constexpr const char* kPrefix[] = {"+", "+i", "-", "-i"};
    std::string out = kPrefix[phase_];
    out.reserve(out.size() + n_);
    for (std::size_t k = 0; k < n_; ++k) {
        out.push_back("_XYZ"[static_cast<int>(get(k))]);
    }
    return out;
}

}  // namespace starqed
