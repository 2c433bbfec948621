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

#include "starqed/circuit.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace starqed {

namespace {

constexpr double kTimeEps = 1e-6;

class Fnv1a {
   public:
    void bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h_ ^= p[i];
            h_ *= 0x100000001B3ULL;
        }
    }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            unsigned char b = static_cast<unsigned char>(v >> (8 * i));
            bytes(&b, 1);
        }
    }
    void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
    void str(const std::string& s) {
        u64(s.size());
        bytes(s.data(), s.size());
    }
    uint64_t value() const { return h_; }

   private:
    uint64_t h_ = 0xCBF29CE484222325ULL;
};

}  // namespace

std::string op_kind_name(OpKind kind) {
    switch (kind) {
        case OpKind::PrepareZero: return "prepare_zero";
        case OpKind::SingleQubitGate: return "sqg";
        case OpKind::TwoQubitGate: return "two_qubit";
        case OpKind::Move: return "move";
        case OpKind::Measure: return "measure";
        case OpKind::Noise: return "noise";
        case OpKind::Barrier: return "barrier";
    }
    return "?";
}

std::string error_class_name(ErrorClass c) {
    switch (c) {
        case ErrorClass::None: return "none";
        case ErrorClass::SQG: return "SQG";
        case ErrorClass::MOVE: return "MOVE";
        case ErrorClass::CZ: return "CZ";
        case ErrorClass::Readout: return "readout";
        case ErrorClass::Idling: return "idling";
        case ErrorClass::Thermal: return "thermal";
    }
    return "?";
}

ErrorClass error_class_from_name(const std::string& name) {
    for (ErrorClass c : {ErrorClass::None, ErrorClass::SQG, ErrorClass::MOVE, ErrorClass::CZ, ErrorClass::Readout,
                         ErrorClass::Idling, ErrorClass::Thermal}) {
        if (error_class_name(c) == name) {
            return c;
        }
    }
    throw std::invalid_argument("unknown error class '" + name + "'");
}

char basis_char(Basis b) {
    switch (b) {
        case Basis::Z: return 'Z';
        case Basis::X: return 'X';
        case Basis::Y: return 'Y';
    }
    return '?';
}

Basis basis_from_char(char c) {
    switch (c) {
        case 'Z': return Basis::Z;
        case 'X': return Basis::X;
        case 'Y': return Basis::Y;
        default: throw std::invalid_argument(std::string("unknown basis '") + c + "'");
    }
}

double CircuitProgram::duration_ns() const {
    double end = 0.0;
    for (const auto& ins : instructions) {
        end = std::max(end, ins.end_ns());
    }
    return end;
}

void CircuitProgram::validate() const {
    const std::size_t n = num_elements();
    std::vector<double> free_at(n, 0.0);
    std::set<std::string> tags;
    std::vector<MeasurementSlot> seen;
    for (std::size_t i = 0; i < instructions.size(); ++i) {
        const auto& ins = instructions[i];
        for (std::size_t t : ins.targets) {
            if (t >= n) {
                throw std::invalid_argument("instruction " + std::to_string(i) + ": target out of range");
            }
        }
        switch (ins.kind) {
            case OpKind::SingleQubitGate:
            case OpKind::TwoQubitGate:
            case OpKind::Move:
                check_gate_targets(ins.gate, ins.targets, n);
                if ((ins.kind == OpKind::SingleQubitGate) != (gate_arity(ins.gate) == 1)) {
                    throw std::invalid_argument("instruction " + std::to_string(i) + ": gate arity/kind mismatch");
                }
                if (ins.kind == OpKind::Move && ins.gate != Gate::ISWAP && ins.gate != Gate::ISWAP_DAG) {
                    throw std::invalid_argument("instruction " + std::to_string(i) + ": move must be ISWAP(_DAG)");
                }
                break;
            case OpKind::PrepareZero:
            case OpKind::Measure:
                if (ins.targets.size() != 1) {
                    throw std::invalid_argument("instruction " + std::to_string(i) + ": expects one target");
                }
                break;
            case OpKind::Noise:
                if (!ins.noise) {
                    throw std::invalid_argument("instruction " + std::to_string(i) + ": noise event missing");
                }
                ins.noise->validate();
                if (ins.noise->targets != ins.targets) {
                    throw std::invalid_argument("instruction " + std::to_string(i) + ": noise targets mismatch");
                }
                break;
            case OpKind::Barrier:
                break;
        }
        if (ins.kind == OpKind::Measure) {
            if (!tags.insert(ins.tag).second) {
                throw std::invalid_argument("duplicate measurement tag '" + ins.tag + "'");
            }
        }
        if (ins.occupies_time()) {
            for (std::size_t t : ins.targets) {
                if (ins.start_ns + kTimeEps < free_at[t]) {
                    throw std::invalid_argument("instruction " + std::to_string(i) + " overlaps on element " +
                                                elements[t]);
                }
                free_at[t] = ins.end_ns();
            }
        }
    }
    std::size_t k = 0;
    for (const auto& ins : instructions) {
        if (ins.kind != OpKind::Measure) {
            continue;
        }
        if (k >= schema.size() || schema[k].tag != ins.tag || schema[k].element != ins.targets[0]) {
            throw std::invalid_argument("measurement schema does not match instruction order at tag '" + ins.tag +
                                        "'");
        }
        ++k;
    }
    if (k != schema.size()) {
        throw std::invalid_argument("measurement schema lists more slots than instructions");
    }
}

uint64_t CircuitProgram::digest() const {
    Fnv1a h;
    h.u64(elements.size());
    for (const auto& e : elements) {
        h.str(e);
    }
    h.u64(instructions.size());
    for (const auto& ins : instructions) {
        h.u64(static_cast<uint64_t>(ins.kind));
        h.u64(static_cast<uint64_t>(ins.gate));
        h.u64(ins.targets.size());
        for (auto t : ins.targets) {
            h.u64(t);
        }
        h.f64(ins.start_ns);
        h.f64(ins.duration_ns);
        h.str(ins.tag);
        h.u64(static_cast<uint64_t>(ins.error_class));
        if (ins.noise) {
            h.u64(static_cast<uint64_t>(ins.noise->kind));
            for (double p : ins.noise->params) {
                h.f64(p);
            }
        }
    }
    h.u64(schema.size());
    for (const auto& s : schema) {
        h.str(s.tag);
        h.u64(static_cast<uint64_t>(s.cycle));
        h.u64(s.element);
        h.u64(static_cast<uint64_t>(s.role));
    }
    for (Basis b : readout.data_bases) {
        h.u64(static_cast<uint64_t>(b));
    }
    h.u64(static_cast<uint64_t>(static_cast<int64_t>(readout.setting_id)));
    h.u64(static_cast<uint64_t>(readout.cycles));
    h.u64(noise_compiled ? 1 : 0);
    return h.value();
}

std::size_t CircuitProgram::count(OpKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(instructions.begin(), instructions.end(), [&](const Instruction& i) { return i.kind == kind; }));
}

std::size_t CircuitProgram::count_gate(Gate gate) const {
    return static_cast<std::size_t>(std::count_if(instructions.begin(), instructions.end(), [&](const Instruction& i) {
        return (i.kind == OpKind::SingleQubitGate || i.kind == OpKind::TwoQubitGate || i.kind == OpKind::Move) &&
               i.gate == gate;
    }));
}

std::vector<double> CircuitProgram::busy_ns() const {
    std::vector<double> busy(num_elements(), 0.0);
    for (const auto& ins : instructions) {
        if (ins.occupies_time()) {
            for (auto t : ins.targets) {
                busy[t] += ins.duration_ns;
            }
        }
    }
    return busy;
}

std::vector<std::pair<double, double>> CircuitProgram::idle_gaps(std::size_t element) const {
    std::vector<std::pair<double, double>> gaps;
    double cursor = 0.0;
    for (const auto& ins : instructions) {
        if (!ins.occupies_time()) {
            continue;
        }
        if (std::find(ins.targets.begin(), ins.targets.end(), element) == ins.targets.end()) {
            continue;
        }
        if (ins.start_ns > cursor + kTimeEps) {
            gaps.emplace_back(cursor, ins.start_ns);
        }
        cursor = std::max(cursor, ins.end_ns());
    }
    double end = duration_ns();
    if (end > cursor + kTimeEps) {
        gaps.emplace_back(cursor, end);
    }
    return gaps;
}

void CircuitProgram::add_measure(std::size_t element, double start_ns, double duration_ns, std::string tag, int cycle,
                                 SlotRole role) {
    Instruction ins;
    ins.kind = OpKind::Measure;
    ins.targets = {element};
    ins.start_ns = start_ns;
    ins.duration_ns = duration_ns;
    ins.tag = tag;
    instructions.push_back(std::move(ins));
    schema.push_back(MeasurementSlot{std::move(tag), cycle, element, role});
}

std::string format_program(const CircuitProgram& program) {
    std::ostringstream out;
    for (const auto& ins : program.instructions) {
        out << ins.start_ns << "\t" << ins.duration_ns << "\t";
        switch (ins.kind) {
            case OpKind::Noise:
                out << noise_kind_name(ins.noise->kind) << "(" << ins.noise->params[0];
                if (ins.noise->kind == NoiseKind::PauliChannel1) {
                    out << "," << ins.noise->params[1] << "," << ins.noise->params[2];
                }
                out << ")";
                break;
            case OpKind::SingleQubitGate:
            case OpKind::TwoQubitGate:
            case OpKind::Move:
                out << gate_name(ins.gate);
                break;
            case OpKind::Measure:
                out << "M[" << ins.tag << "]";
                break;
            default:
                out << op_kind_name(ins.kind);
        }
        for (auto t : ins.targets) {
            out << " " << program.elements[t];
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace starqed
