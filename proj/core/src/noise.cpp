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

#include "starqed/noise.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace starqed {

std::string noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::Depolarize1: return "DEPOLARIZE1";
        case NoiseKind::Depolarize2: return "DEPOLARIZE2";
        case NoiseKind::PauliChannel1: return "PAULI_CHANNEL_1";
        case NoiseKind::BitFlip: return "X_ERROR";
    }
    return "?";
}

NoiseEvent NoiseEvent::depolarize1(std::size_t q, double p) {
    NoiseEvent e{NoiseKind::Depolarize1, {p, 0, 0}, {q}};
    e.validate();
    return e;
}

NoiseEvent NoiseEvent::depolarize2(std::size_t a, std::size_t b, double p) {
    NoiseEvent e{NoiseKind::Depolarize2, {p, 0, 0}, {a, b}};
    e.validate();
    return e;
}

NoiseEvent NoiseEvent::pauli_channel1(std::size_t q, double px, double py, double pz) {
    NoiseEvent e{NoiseKind::PauliChannel1, {px, py, pz}, {q}};
    e.validate();
    return e;
}

NoiseEvent NoiseEvent::bitflip(std::size_t q, double p) {
    NoiseEvent e{NoiseKind::BitFlip, {p, 0, 0}, {q}};
    e.validate();
    return e;
}

void NoiseEvent::validate() const {
    auto in_unit = [](double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; };
    std::size_t want = kind == NoiseKind::Depolarize2 ? 2 : 1;
    if (targets.size() != want) {
        throw std::invalid_argument(noise_kind_name(kind) + ": expected " + std::to_string(want) + " targets");
    }
    if (want == 2 && targets[0] == targets[1]) {
        throw std::invalid_argument(noise_kind_name(kind) + ": targets must be distinct");
    }
    if (kind == NoiseKind::PauliChannel1) {
        for (double p : params) {
            if (!in_unit(p)) {
                throw std::invalid_argument("PAULI_CHANNEL_1: probability outside [0, 1]");
            }
        }
        if (params[0] + params[1] + params[2] > 1.0 + 1e-12) {
            throw std::invalid_argument("PAULI_CHANNEL_1: px + py + pz > 1");
        }
    } else if (!in_unit(params[0])) {
        throw std::invalid_argument(noise_kind_name(kind) + ": probability outside [0, 1]");
    }
}

double NoiseEvent::total_probability() const {
    if (kind == NoiseKind::PauliChannel1) {
        return params[0] + params[1] + params[2];
    }
    return params[0];
}

std::optional<SampledPauli> select_pauli(const NoiseEvent& event, double u) {
    const auto& p = event.params;
    switch (event.kind) {
        case NoiseKind::Depolarize1: {
            if (!(u < p[0])) {
                return std::nullopt;
            }
            int k = std::min(2, static_cast<int>(u / p[0] * 3.0));
            return SampledPauli{{static_cast<Pauli>(k + 1), Pauli::I}};
        }
        case NoiseKind::Depolarize2: {
            if (!(u < p[0])) {
                return std::nullopt;
            }
            int m = std::min(14, static_cast<int>(u / p[0] * 15.0)) + 1;
            return SampledPauli{{static_cast<Pauli>(m >> 2), static_cast<Pauli>(m & 3)}};
        }
        case NoiseKind::PauliChannel1: {
            if (u < p[0]) {
                return SampledPauli{{Pauli::X, Pauli::I}};
            }
            if (u < p[0] + p[1]) {
                return SampledPauli{{Pauli::Y, Pauli::I}};
            }
            if (u < p[0] + p[1] + p[2]) {
                return SampledPauli{{Pauli::Z, Pauli::I}};
            }
            return std::nullopt;
        }
        case NoiseKind::BitFlip:
            if (u < p[0]) {
                return SampledPauli{{Pauli::X, Pauli::I}};
            }
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<PauliString> sample_noise(const NoiseEvent& event, std::size_t num_elements, CounterRng& rng) {
    auto s = select_pauli(event, rng.uniform());
    if (!s) {
        return std::nullopt;
    }
    PauliString out(num_elements);
    for (std::size_t k = 0; k < event.targets.size(); ++k) {
        out.set(event.targets[k], s->paulis[k]);
    }
    return out;
}

}  // namespace starqed
