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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "starqed/gates.h"
#include "starqed/noise.h"

namespace starqed {

enum class OpKind : uint8_t {
    PrepareZero,
    SingleQubitGate,
    TwoQubitGate,  // CZ, CX, SWAP
    Move,          // qubit <-> resonator transfer, ISWAP / ISWAP_DAG
    Measure,
    Noise,
    Barrier,
};

std::string op_kind_name(OpKind kind);

/// Error source a compiled noise event belongs to; used for ablations.
enum class ErrorClass : uint8_t { None, SQG, MOVE, CZ, Readout, Idling, Thermal };

inline constexpr std::array<ErrorClass, 6> kErrorClasses = {
    ErrorClass::SQG, ErrorClass::MOVE, ErrorClass::CZ, ErrorClass::Readout, ErrorClass::Idling, ErrorClass::Thermal,
};

std::string error_class_name(ErrorClass c);
ErrorClass error_class_from_name(const std::string& name);

/// One timed operation. Times are nanoseconds from program start.
struct Instruction {
    OpKind kind = OpKind::Barrier;
    Gate gate = Gate::I;
    std::vector<std::size_t> targets;
    double start_ns = 0.0;
    double duration_ns = 0.0;
    std::string tag;                 // Measure only
    std::optional<NoiseEvent> noise;  // Noise only
    ErrorClass error_class = ErrorClass::None;

    double end_ns() const { return start_ns + duration_ns; }
    bool occupies_time() const { return kind != OpKind::Noise && kind != OpKind::Barrier; }
};

enum class Basis : uint8_t { Z, X, Y };

char basis_char(Basis b);
Basis basis_from_char(char c);

enum class SlotRole : uint8_t { AncillaX, AncillaZ, Data, Other };

/// One entry of the measurement record layout.
struct MeasurementSlot {
    std::string tag;
    int cycle = 0;  // 1-based stabilizer cycle; 0 for final data readout
    std::size_t element = 0;
    SlotRole role = SlotRole::Other;

    bool operator==(const MeasurementSlot&) const = default;
};

/// How the final data readout should be interpreted.
struct ReadoutInfo {
    std::array<Basis, 4> data_bases{Basis::Z, Basis::Z, Basis::Z, Basis::Z};
    int setting_id = -1;  // tomography setting index, -1 when not a tomography run
    int cycles = 0;

    bool operator==(const ReadoutInfo&) const = default;
};

/// Timed instruction list over named elements.
///
/// Instructions are stored in execution order; per element, instruction
/// intervals are non-overlapping and increasing in time.
struct CircuitProgram {
    std::vector<std::string> elements;
    std::vector<Instruction> instructions;
    std::vector<MeasurementSlot> schema;
    ReadoutInfo readout;
    bool noise_compiled = false;

    std::size_t num_elements() const { return elements.size(); }
    double duration_ns() const;

    /// Targets in range, arity, tag uniqueness, schema/instruction agreement,
    /// no per-element overlap. Throws std::invalid_argument on violation.
    void validate() const;

    /// Content hash (FNV-1a over a canonical serialization).
    uint64_t digest() const;

    std::size_t count(OpKind kind) const;
    std::size_t count_gate(Gate gate) const;

    /// Busy time (instructions that occupy time) per element, in ns.
    std::vector<double> busy_ns() const;
    /// Idle gaps of one element: [start, end) intervals inside [0, duration].
    std::vector<std::pair<double, double>> idle_gaps(std::size_t element) const;

    /// Appends a measurement instruction and its schema slot.
    void add_measure(std::size_t element, double start_ns, double duration_ns, std::string tag, int cycle,
                     SlotRole role);
};

/// Human-readable listing, one instruction per line.
std::string format_program(const CircuitProgram& program);

}  // namespace starqed
