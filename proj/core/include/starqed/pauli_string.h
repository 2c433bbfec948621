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
#include <string>
#include <string_view>
#include <vector>

namespace starqed {

/// Single-element Pauli code: 0 = I, 1 = X, 2 = Y, 3 = Z.
enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

constexpr bool pauli_x_bit(Pauli p) { return p == Pauli::X || p == Pauli::Y; }
constexpr bool pauli_z_bit(Pauli p) { return p == Pauli::Z || p == Pauli::Y; }
constexpr Pauli pauli_from_bits(bool x, bool z) {
    return x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
}

/// Exponent of i picked up by the single-element product P1 * P2 (as in
/// Aaronson-Gottesman's g function). Result in {-1, 0, +1}.
int pauli_product_phase(bool x1, bool z1, bool x2, bool z2);

/// Tensor product of Paulis over `n` elements in binary-symplectic form,
/// with an overall phase i^phase. Hermitian strings have phase 0 or 2.
///
/// (x, z) = (1, 1) denotes Y itself, not XZ.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::size_t n);

    /// Parses "+XZ_Y", "-XIZY", "iXX". '_' and 'I' are identity.
    static PauliString parse(std::string_view text);
    static PauliString single(std::size_t n, std::size_t target, Pauli p);

    std::size_t size() const { return n_; }

    Pauli get(std::size_t k) const;
    void set(std::size_t k, Pauli p);
    bool x(std::size_t k) const { return (xs_[k >> 6] >> (k & 63)) & 1; }
    bool z(std::size_t k) const { return (zs_[k >> 6] >> (k & 63)) & 1; }

    /// Power of i in front of the tensor product, in [0, 4).
    int phase() const { return phase_; }
    void set_phase(int phase) { phase_ = ((phase % 4) + 4) % 4; }
    bool is_hermitian() const { return (phase_ & 1) == 0; }
    bool negative() const { return phase_ == 2; }
    /// +1 or -1; throws for anti-Hermitian strings.
    int sign() const;

    std::size_t weight() const;
    bool is_identity() const;
    bool commutes(const PauliString& other) const;

    /// In-place right multiplication: *this = *this * rhs.
    PauliString& operator*=(const PauliString& rhs);
    friend PauliString operator*(PauliString lhs, const PauliString& rhs) { return lhs *= rhs; }

    bool operator==(const PauliString& other) const = default;

    std::string str() const;

    const std::vector<uint64_t>& x_words() const { return xs_; }
    const std::vector<uint64_t>& z_words() const { return zs_; }

   private:
    std::size_t n_ = 0;
    int phase_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

}  // namespace starqed
