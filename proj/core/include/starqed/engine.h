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

// Monte Carlo execution of compiled programs.
//
// Every shot owns two counter-based streams derived from (seed, shot): stream 0
// feeds the noise events, one draw per event whatever its probability, and
// stream 1 feeds measurement randomness. Results therefore do not depend on
// the thread count, and programs that differ only in event probabilities
// (ablations) see the same random numbers event by event.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "starqed/circuit.h"

namespace starqed {

/// One shot in analysis-friendly form.
struct RunRecord {
    uint64_t shot = 0;
    int cycles = 0;
    std::vector<uint8_t> d_x;  // A_X bits per cycle; empty when not measured
    std::vector<uint8_t> d_z;  // A_Z bits per cycle
    unsigned data_bits = 0;    // bit k = D(k+1); 0 when absent
    bool has_data = false;
    std::array<Basis, 4> bases{Basis::Z, Basis::Z, Basis::Z, Basis::Z};
    int setting_id = -1;

    const std::vector<uint8_t>& d(Basis stabilizer) const { return stabilizer == Basis::X ? d_x : d_z; }
};

/// Measurement bits of many shots, stored column-major: one bit-packed column
/// of 64-bit words per schema slot.
class ShotBatch {
   public:
    ShotBatch() = default;
    ShotBatch(std::vector<MeasurementSlot> schema, ReadoutInfo readout, uint64_t digest, uint64_t seed,
              std::size_t shots);

    std::size_t shots() const { return shots_; }
    std::size_t num_slots() const { return schema_.size(); }
    std::size_t words_per_slot() const { return words_; }
    uint64_t program_digest() const { return digest_; }
    uint64_t seed() const { return seed_; }
    const std::vector<MeasurementSlot>& schema() const { return schema_; }
    const ReadoutInfo& readout() const { return readout_; }
    int cycles() const { return readout_.cycles; }

    bool bit(std::size_t slot, std::size_t shot) const {
        return (bits_[slot * words_ + (shot >> 6)] >> (shot & 63)) & 1;
    }
    void set_bit(std::size_t slot, std::size_t shot, bool v);
    const uint64_t* column(std::size_t slot) const { return bits_.data() + slot * words_; }
    uint64_t* column(std::size_t slot) { return bits_.data() + slot * words_; }

    std::optional<std::size_t> find_slot(const std::string& tag) const;
    /// Slot of the ancilla measuring `stabilizer` in cycle n (1-based), or -1.
    long ancilla_slot(Basis stabilizer, int n) const;
    /// Slot of data qubit k (0-based), or -1.
    long data_slot(int k) const;

    unsigned data_bits(std::size_t shot) const;
    RunRecord record(std::size_t shot) const;

    std::vector<uint8_t> serialize() const;
    static ShotBatch deserialize(const std::vector<uint8_t>& bytes);
    void write(const std::string& path) const;
    static ShotBatch read(const std::string& path);

    /// One row per shot, one column per tag, after '#' header lines holding
    /// digest, seed and readout.
    std::string to_csv() const;
    static ShotBatch from_csv(const std::string& text);

    bool operator==(const ShotBatch& other) const;

   private:
    void index_slots();

    std::vector<MeasurementSlot> schema_;
    ReadoutInfo readout_;
    uint64_t digest_ = 0;
    uint64_t seed_ = 0;
    std::size_t shots_ = 0;
    std::size_t words_ = 0;
    std::vector<uint64_t> bits_;
    std::vector<long> anc_x_;  // by cycle - 1
    std::vector<long> anc_z_;
    std::array<long, 4> data_{-1, -1, -1, -1};
};

enum class Backend : uint8_t {
    Frame,    // Pauli frames against one noiseless reference sample
    Tableau,  // full stabilizer tableau per shot
};

struct EngineOptions {
    std::size_t threads = 1;
    Backend backend = Backend::Frame;
};

/// Runs `shots` shots. Deterministic in (program, seed) for every backend and
/// thread count. Programs may be noise-compiled or plain.
ShotBatch run_shots(const CircuitProgram& program, std::size_t shots, uint64_t seed,
                    const EngineOptions& options = {});

/// Joint outcome of shot `shot`: bit k is the k-th schema slot.
uint64_t outcome_key(const ShotBatch& batch, std::size_t shot);

}  // namespace starqed
