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

#include "starqed/analysis.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "starqed/code422.h"

namespace starqed {

namespace {

// Valid-shot mask of the last word.
uint64_t tail_mask(const ShotBatch& batch, std::size_t w) {
    std::size_t rem = batch.shots() - w * 64;
    return rem >= 64 ? ~uint64_t{0} : (uint64_t{1} << rem) - 1;
}

Basis uniform_basis(const ShotBatch& batch) {
    const auto& b = batch.readout().data_bases;
    for (Basis x : b) {
        if (x != b[0]) {
            throw std::invalid_argument("analysis: data readout bases are not uniform");
        }
    }
    if (b[0] == Basis::Y) {
        throw std::invalid_argument("analysis: Y readout has no logical interpretation");
    }
    return b[0];
}

void require_data(const ShotBatch& batch) {
    for (int k = 0; k < 4; ++k) {
        if (batch.data_slot(k) < 0) {
            throw std::invalid_argument("analysis: batch has no final data readout");
        }
    }
}

double pm_error(double mean, std::size_t n) {
    if (n == 0) {
        return 0.0;
    }
    return std::sqrt(std::max(0.0, 1.0 - mean * mean) / static_cast<double>(n));
}

}  // namespace

std::string sigma_definition_name(SigmaDefinition d) {
    return d == SigmaDefinition::SyndromeChange ? "syndrome-change" : "ancilla-change";
}

SigmaDefinition sigma_definition_from_name(const std::string& name) {
    if (name == "syndrome-change") return SigmaDefinition::SyndromeChange;
    if (name == "ancilla-change") return SigmaDefinition::AncillaChange;
    throw std::invalid_argument("unknown sigma definition '" + name + "'");
}

std::vector<int> syndrome_signs(std::span<const uint8_t> d) {
    std::vector<int> s;
    s.reserve(d.size());
    uint8_t prev = 0;
    for (uint8_t bit : d) {
        s.push_back(((bit ^ prev) & 1) ? -1 : 1);
        prev = bit;
    }
    return s;
}

std::vector<uint8_t> detection_events(std::span<const uint8_t> d, SigmaDefinition def) {
    auto s = syndrome_signs(d);
    std::vector<uint8_t> sigma;
    sigma.reserve(s.size());
    int prev = 1;
    for (int v : s) {
        if (def == SigmaDefinition::SyndromeChange) {
            sigma.push_back(static_cast<uint8_t>((1 - v * prev) / 2));
        } else {
            sigma.push_back(static_cast<uint8_t>((1 - v) / 2));
        }
        prev = v;
    }
    return sigma;
}

SyndromeTrace syndromes(const RunRecord& record, SigmaDefinition def) {
    SyndromeTrace t;
    t.s_x = syndrome_signs(record.d_x);
    t.s_z = syndrome_signs(record.d_z);
    t.sigma_x = detection_events(record.d_x, def);
    t.sigma_z = detection_events(record.d_z, def);
    return t;
}

double Proportion::error() const {
    if (total == 0) {
        return 0.0;
    }
    double p = value();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

PostselectResult postselect(const ShotBatch& batch, PostselectRule rule) {
    std::vector<std::size_t> anc;
    for (std::size_t k = 0; k < batch.num_slots(); ++k) {
        auto role = batch.schema()[k].role;
        if (role == SlotRole::AncillaX || role == SlotRole::AncillaZ) {
            anc.push_back(k);
        }
    }
    std::array<const uint64_t*, 4> data{};
    if (rule == PostselectRule::WithFinalSubspace) {
        uniform_basis(batch);
        require_data(batch);
        for (int k = 0; k < 4; ++k) {
            data[static_cast<std::size_t>(k)] = batch.column(static_cast<std::size_t>(batch.data_slot(k)));
        }
    }
    PostselectResult out;
    out.acceptance.total = batch.shots();
    for (std::size_t w = 0; w < batch.words_per_slot(); ++w) {
        uint64_t reject = 0;
        for (std::size_t k : anc) {
            reject |= batch.column(k)[w];
        }
        if (rule == PostselectRule::WithFinalSubspace) {
            reject |= data[0][w] ^ data[1][w] ^ data[2][w] ^ data[3][w];
        }
        uint64_t ok = ~reject & tail_mask(batch, w);
        while (ok) {
            out.accepted.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(ok)));
            ok &= ok - 1;
        }
    }
    out.acceptance.hits = out.accepted.size();
    return out;
}

Estimate logical_expectation(const ShotBatch& batch, std::span<const std::size_t> accepted, int i) {
    if (i != 1 && i != 2) {
        throw std::invalid_argument("logical_expectation: qubit index must be 1 or 2");
    }
    Basis basis = uniform_basis(batch);
    require_data(batch);
    Estimate e;
    double sum = 0.0;
    for (std::size_t shot : accepted) {
        sum += evaluate_logicals(batch.data_bits(shot), basis)[static_cast<std::size_t>(i - 1)];
    }
    e.count = accepted.size();
    if (e.count) {
        e.mean = sum / static_cast<double>(e.count);
        e.error = pm_error(e.mean, e.count);
    }
    return e;
}

Proportion logical_state_probability(const ShotBatch& batch, std::span<const std::size_t> accepted,
                                     std::array<int, 2> expected) {
    Basis basis = uniform_basis(batch);
    require_data(batch);
    Proportion p;
    p.total = accepted.size();
    for (std::size_t shot : accepted) {
        if (evaluate_logicals(batch.data_bits(shot), basis) == expected) {
            ++p.hits;
        }
    }
    return p;
}

Estimate stabilizer_mean(const ShotBatch& batch, Basis stabilizer) {
    long slot = batch.ancilla_slot(stabilizer, 1);
    if (slot < 0) {
        throw std::invalid_argument("stabilizer_mean: stabilizer was not measured");
    }
    const uint64_t* col = batch.column(static_cast<std::size_t>(slot));
    std::size_t ones = 0;
    for (std::size_t w = 0; w < batch.words_per_slot(); ++w) {
        ones += static_cast<std::size_t>(std::popcount(col[w] & tail_mask(batch, w)));
    }
    Estimate e;
    e.count = batch.shots();
    if (e.count) {
        e.mean = 1.0 - 2.0 * static_cast<double>(ones) / static_cast<double>(e.count);
        e.error = pm_error(e.mean, e.count);
    }
    return e;
}

double stabilizer_fidelity(std::span<const double> s_exp, std::span<const double> s_ideal) {
    if (s_exp.size() != s_ideal.size() || s_exp.empty()) {
        throw std::invalid_argument("stabilizer_fidelity: size mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < s_exp.size(); ++i) {
        sum += std::abs(s_exp[i] - s_ideal[i]);
    }
    return 1.0 - sum / static_cast<double>(s_exp.size()) / 2.0;
}

BellProbs bell_probs(const ShotBatch& batch, std::span<const std::size_t> accepted) {
    if (uniform_basis(batch) != Basis::Z) {
        throw std::invalid_argument("bell_probs: needs Z-basis data readout");
    }
    require_data(batch);
    std::array<std::size_t, 4> hist{};
    for (std::size_t shot : accepted) {
        auto label = label_from_eigenvalues(evaluate_logicals(batch.data_bits(shot), Basis::Z), Basis::Z);
        ++hist[static_cast<std::size_t>((label[0] - '0') * 2 + (label[1] - '0'))];
    }
    BellProbs out;
    out.count = accepted.size();
    if (out.count == 0) {
        return out;
    }
    double n = static_cast<double>(out.count);
    for (std::size_t k = 0; k < 4; ++k) {
        out.p[k] = static_cast<double>(hist[k]) / n;
        out.error[k] = std::sqrt(out.p[k] * (1.0 - out.p[k]) / n);
    }
    out.p_phi = out.p[0] + out.p[3];
    out.p_phi_error = std::sqrt(out.p_phi * (1.0 - out.p_phi) / n);
    return out;
}

DetectionRow detection_fractions(const ShotBatch& batch, SigmaDefinition def) {
    DetectionRow row;
    row.cycles = batch.cycles();
    row.shots = batch.shots();
    for (Basis b : {Basis::X, Basis::Z}) {
        auto& out = b == Basis::X ? row.sigma_x : row.sigma_z;
        std::vector<uint64_t> prev_d(batch.words_per_slot(), 0);
        std::vector<uint64_t> prev_c(batch.words_per_slot(), 0);
        for (int n = 1;; ++n) {
            long slot = batch.ancilla_slot(b, n);
            if (slot < 0) {
                break;
            }
            const uint64_t* d = batch.column(static_cast<std::size_t>(slot));
            std::size_t events = 0;
            for (std::size_t w = 0; w < batch.words_per_slot(); ++w) {
                uint64_t c = d[w] ^ prev_d[w];  // s_n = -1
                uint64_t sigma = def == SigmaDefinition::SyndromeChange ? c ^ prev_c[w] : c;
                events += static_cast<std::size_t>(std::popcount(sigma & tail_mask(batch, w)));
                prev_d[w] = d[w];
                prev_c[w] = c;
            }
            out.push_back(row.shots ? static_cast<double>(events) / static_cast<double>(row.shots) : 0.0);
        }
    }
    return row;
}

}  // namespace starqed
