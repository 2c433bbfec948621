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

#include "starqed/builders.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "starqed/channels.h"

namespace starqed {

namespace {

constexpr double kEps = 1e-6;

constexpr std::size_t kRes = element_index(Role::Res);

std::size_t data_index(int k) { return element_index(static_cast<Role>(k)); }

void add_op(CircuitProgram& p, OpKind kind, Gate gate, std::vector<std::size_t> targets, double start,
            double duration) {
    Instruction ins;
    ins.kind = kind;
    ins.gate = gate;
    ins.targets = std::move(targets);
    ins.start_ns = start;
    ins.duration_ns = duration;
    p.instructions.push_back(std::move(ins));
}

void add_sqg(CircuitProgram& p, Gate g, std::size_t q, double start, const DeviceModel& d) {
    add_op(p, OpKind::SingleQubitGate, g, {q}, start, d.durations.sqg_ns);
}

void add_barrier(CircuitProgram& p, double at) { add_op(p, OpKind::Barrier, Gate::I, {}, at, 0.0); }

Gate readout_rotation(Basis b) {
    switch (b) {
        case Basis::X: return Gate::SQRT_Y_DAG;
        case Basis::Y: return Gate::SQRT_X;
        case Basis::Z: return Gate::I;
    }
    return Gate::I;
}

std::string ancilla_tag(Basis b, int cycle) { return std::string(b == Basis::X ? "AX_" : "AZ_") + std::to_string(cycle); }

}  // namespace

std::string stabilizer_order_name(StabilizerOrder o) { return o == StabilizerOrder::XZ ? "xz" : "zx"; }

StabilizerOrder stabilizer_order_from_name(std::string_view name) {
    if (name == "xz") {
        return StabilizerOrder::XZ;
    }
    if (name == "zx") {
        return StabilizerOrder::ZX;
    }
    throw std::invalid_argument("stabilizer order must be xz or zx");
}

CircuitProgram empty_program() {
    CircuitProgram p;
    for (Role r : kRoles) {
        p.elements.push_back(role_name(r));
    }
    return p;
}

void append_fragment(CircuitProgram& program, const CircuitProgram& fragment, double offset_ns, int cycle_override) {
    if (fragment.noise_compiled || program.noise_compiled) {
        throw std::invalid_argument("append_fragment: fragments must be appended before noise compilation");
    }
    if (fragment.elements != program.elements) {
        throw std::invalid_argument("append_fragment: element lists differ");
    }
    for (Instruction ins : fragment.instructions) {
        ins.start_ns += offset_ns;
        program.instructions.push_back(std::move(ins));
    }
    for (MeasurementSlot s : fragment.schema) {
        if (cycle_override >= 0) {
            s.cycle = cycle_override;
        }
        program.schema.push_back(std::move(s));
    }
}

bool is_supported_product_state(std::string_view ket) {
    if (ket.size() != 4) {
        return false;
    }
    bool computational = std::all_of(ket.begin(), ket.end(), [](char c) { return c == '0' || c == '1'; });
    bool plus_minus = std::all_of(ket.begin(), ket.end(), [](char c) { return c == '+' || c == '-'; });
    return computational || plus_minus;
}

Basis preparation_basis(std::string_view psi_in) {
    if (!is_supported_product_state(psi_in)) {
        throw std::invalid_argument("unsupported product state '" + std::string(psi_in) + "'");
    }
    return (psi_in[0] == '+' || psi_in[0] == '-') ? Basis::X : Basis::Z;
}

CircuitProgram build_prep(std::string_view psi_in, const DeviceModel& device) {
    if (!is_supported_product_state(psi_in)) {
        throw std::invalid_argument("unsupported product state '" + std::string(psi_in) + "'");
    }
    CircuitProgram p = empty_program();
    for (std::size_t e = 0; e < kNumElements; ++e) {
        add_op(p, OpKind::PrepareZero, Gate::I, {e}, 0.0, 0.0);
    }
    for (int k = 0; k < 4; ++k) {
        switch (psi_in[static_cast<std::size_t>(k)]) {
            case '1': add_sqg(p, Gate::X, data_index(k), 0.0, device); break;
            case '+': add_sqg(p, Gate::SQRT_Y, data_index(k), 0.0, device); break;
            case '-': add_sqg(p, Gate::SQRT_Y_DAG, data_index(k), 0.0, device); break;
            default: break;
        }
    }
    add_barrier(p, device.durations.sqg_ns);
    return p;
}

CircuitProgram build_bell_prep(const DeviceModel& device) {
    const auto& g = device.durations;
    CircuitProgram p = empty_program();
    for (std::size_t e = 0; e < kNumElements; ++e) {
        add_op(p, OpKind::PrepareZero, Gate::I, {e}, 0.0, 0.0);
    }
    // Movers start in |+>, partners in |->; after the CZ a SQRT_Y on the
    // partner leaves (|00> + |11>) / sqrt(2) on each pair.
    for (int k = 0; k < 4; ++k) {
        add_sqg(p, k < 2 ? Gate::SQRT_Y : Gate::SQRT_Y_DAG, data_index(k), 0.0, device);
    }
    // Pairs (mover, partner): D1-D4 then D2-D3.
    const std::array<std::pair<int, int>, 2> pairs = {{{0, 3}, {1, 2}}};
    double t = g.sqg_ns;
    for (auto [m, q] : pairs) {
        std::size_t mover = data_index(m);
        std::size_t partner = data_index(q);
        add_op(p, OpKind::Move, Gate::ISWAP, {mover, kRes}, t, g.move_ns);
        t += g.move_ns;
        add_op(p, OpKind::TwoQubitGate, Gate::CZ, {partner, kRes}, t, g.cz_ns);
        t += g.cz_ns;
        add_op(p, OpKind::Move, Gate::ISWAP_DAG, {mover, kRes}, t, g.move_ns);
        add_sqg(p, Gate::SQRT_Y, partner, t, device);
        t += g.move_ns;
    }
    add_barrier(p, t);
    return p;
}

CircuitProgram build_half_cycle(Basis basis, const DeviceModel& device, int cycle) {
    if (basis == Basis::Y) {
        throw std::invalid_argument("build_half_cycle: basis must be X or Z");
    }
    const auto& g = device.durations;
    const std::size_t anc = element_index(basis == Basis::X ? Role::AX : Role::AZ);
    CircuitProgram p = empty_program();
    add_sqg(p, Gate::SQRT_Y, anc, 0.0, device);
    if (basis == Basis::X) {
        for (int k = 0; k < 4; ++k) {
            add_sqg(p, Gate::SQRT_Y, data_index(k), 0.0, device);
        }
    }
    double t = g.sqg_ns;
    add_op(p, OpKind::Move, Gate::ISWAP, {anc, kRes}, t, g.move_ns);
    t += g.move_ns;
    for (int k = 0; k < 4; ++k) {
        add_op(p, OpKind::TwoQubitGate, Gate::CZ, {data_index(k), kRes}, t, g.cz_ns);
        t += g.cz_ns;
        if (basis == Basis::X) {
            add_sqg(p, Gate::SQRT_Y_DAG, data_index(k), t, device);
        }
    }
    add_op(p, OpKind::Move, Gate::ISWAP_DAG, {anc, kRes}, t, g.move_ns);
    t += g.move_ns;
    add_sqg(p, Gate::SQRT_Y_DAG, anc, t, device);
    t += g.sqg_ns;
    p.add_measure(anc, t, g.readout_ns, ancilla_tag(basis, cycle), cycle,
                  basis == Basis::X ? SlotRole::AncillaX : SlotRole::AncillaZ);
    return p;
}

CircuitProgram build_cycle(const DeviceModel& device, int cycle, StabilizerOrder order) {
    const auto& g = device.durations;
    const Basis first = order == StabilizerOrder::XZ ? Basis::X : Basis::Z;
    const Basis second = order == StabilizerOrder::XZ ? Basis::Z : Basis::X;
    CircuitProgram p = empty_program();
    append_fragment(p, build_half_cycle(first, device, cycle), 0.0);
    // The second half moves into the resonator as soon as the first has left.
    append_fragment(p, build_half_cycle(second, device, cycle), 2 * g.move_ns + 4 * g.cz_ns);
    const double t_cycle = device.t_cycle_us * 1000.0;
    if (p.duration_ns() > t_cycle + kEps) {
        throw std::invalid_argument("cycle schedule (" + std::to_string(p.duration_ns()) + " ns) exceeds t_cycle");
    }
    add_barrier(p, t_cycle);
    return p;
}

CircuitProgram build_data_readout(const std::array<Basis, 4>& bases, const DeviceModel& device) {
    const auto& g = device.durations;
    CircuitProgram p = empty_program();
    for (int k = 0; k < 4; ++k) {
        Gate rot = readout_rotation(bases[static_cast<std::size_t>(k)]);
        if (rot != Gate::I) {
            add_sqg(p, rot, data_index(k), 0.0, device);
        }
    }
    for (int k = 0; k < 4; ++k) {
        p.add_measure(data_index(k), g.sqg_ns, g.readout_ns, "D" + std::to_string(k + 1), 0, SlotRole::Data);
    }
    return p;
}

std::string experiment_kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::SingleStabilizer: return "single_stabilizer";
        case ExperimentKind::Lifetime: return "lifetime";
        case ExperimentKind::Tomography: return "tomography";
        case ExperimentKind::BellLifetime: return "bell_lifetime";
        case ExperimentKind::BellTomography: return "bell_tomography";
    }
    return "?";
}

ExperimentKind experiment_kind_from_name(std::string_view name) {
    for (auto k : {ExperimentKind::SingleStabilizer, ExperimentKind::Lifetime, ExperimentKind::Tomography,
                   ExperimentKind::BellLifetime, ExperimentKind::BellTomography}) {
        if (experiment_kind_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown experiment kind '" + std::string(name) + "'");
}

CircuitProgram build_experiment(const ExperimentSpec& spec, const DeviceModel& device) {
    device.validate();
    if (spec.cycles < 0) {
        throw std::invalid_argument("build_experiment: negative cycle count");
    }
    const bool bell = spec.kind == ExperimentKind::BellLifetime || spec.kind == ExperimentKind::BellTomography;
    CircuitProgram p = empty_program();
    CircuitProgram prep = bell ? build_bell_prep(device) : build_prep(spec.psi_in, device);
    append_fragment(p, prep, 0.0);
    double t = prep.duration_ns();

    std::array<Basis, 4> bases = spec.readout;
    switch (spec.kind) {
        case ExperimentKind::SingleStabilizer: {
            if (spec.cycles != 1) {
                throw std::invalid_argument("single_stabilizer requires exactly one cycle");
            }
            CircuitProgram half = build_half_cycle(spec.stabilizer, device, 1);
            append_fragment(p, half, t);
            t += half.duration_ns();
            bases.fill(preparation_basis(spec.psi_in));
            break;
        }
        case ExperimentKind::Lifetime:
            bases.fill(preparation_basis(spec.psi_in));
            [[fallthrough]];
        case ExperimentKind::Tomography:
        case ExperimentKind::BellLifetime:
        case ExperimentKind::BellTomography: {
            if (spec.kind == ExperimentKind::BellLifetime) {
                if (spec.readout[0] == Basis::Y) {
                    throw std::invalid_argument("bell_lifetime reads out in Z or X");
                }
                bases.fill(spec.readout[0]);
            }
            const double t_cycle = device.t_cycle_us * 1000.0;
            for (int n = 1; n <= spec.cycles; ++n) {
                append_fragment(p, build_cycle(device, n, spec.order), t);
                t += t_cycle;
            }
            break;
        }
    }
    append_fragment(p, build_data_readout(bases, device), t);
    p.readout.data_bases = bases;
    p.readout.cycles = spec.kind == ExperimentKind::SingleStabilizer ? 1 : spec.cycles;
    p.readout.setting_id = spec.setting_id;
    p.validate();
    return p;
}

CircuitProgram compile_noise(const CircuitProgram& program, const DeviceModel& device, const NoiseOptions& options) {
    if (program.noise_compiled) {
        throw std::invalid_argument("compile_noise: program is already compiled");
    }
    program.validate();
    const ChannelParams ch = channel_params(device);
    const std::size_t n = program.num_elements();
    std::vector<std::size_t> cal(n);
    std::vector<bool> is_res(n);
    for (std::size_t e = 0; e < n; ++e) {
        Role r = role_from_name(program.elements[e]);
        cal[e] = device.index_of(r);
        is_res[e] = r == Role::Res;
    }

    CircuitProgram out;
    out.elements = program.elements;
    out.schema = program.schema;
    out.readout = program.readout;
    out.noise_compiled = true;

    auto emit = [&](NoiseEvent ev, ErrorClass cls, double at) {
        if (!options.enabled.contains(cls)) {
            if (!options.keep_disabled_events) {
                return;
            }
            ev.params = {0.0, 0.0, 0.0};
        }
        Instruction ins;
        ins.kind = OpKind::Noise;
        ins.targets = ev.targets;
        ins.start_ns = at;
        ins.noise = std::move(ev);
        ins.error_class = cls;
        out.instructions.push_back(std::move(ins));
    };
    auto idle = [&](std::size_t e, double from, double to) {
        const auto& c = device.elements[cal[e]];
        double t2 = options.t2_echo ? c.t2_echo_us : c.t2_star_us;
        t2 = std::min(t2, 2.0 * c.t1_us);
        auto [px, py, pz] = idling_channel(to - from, c.t1_us, t2);
        emit(NoiseEvent::pauli_channel1(e, px, py, pz), ErrorClass::Idling, from);
    };
    // The partner of a two-element gate that carries the calibration.
    auto gate_qubit = [&](const Instruction& ins) {
        return is_res[ins.targets[0]] ? ins.targets[1] : ins.targets[0];
    };
    auto gate_res = [&](const Instruction& ins) {
        return is_res[ins.targets[0]] ? ins.targets[0] : ins.targets[1];
    };

    std::vector<double> free_at(n, 0.0);
    std::vector<bool> loaded(n, false);
    auto counts_idle = [&](std::size_t e) { return !is_res[e] || !options.resonator_idle_when_loaded || loaded[e]; };

    for (const auto& ins : program.instructions) {
        if (ins.occupies_time()) {
            for (auto e : ins.targets) {
                if (ins.start_ns > free_at[e] + kEps && counts_idle(e)) {
                    idle(e, free_at[e], ins.start_ns);
                }
                free_at[e] = std::max(free_at[e], ins.end_ns());
            }
        }
        if (ins.kind == OpKind::Measure) {
            std::size_t q = ins.targets[0];
            emit(NoiseEvent::depolarize1(q, ch.p_ro[cal[q]]), ErrorClass::Readout, ins.start_ns);
        }
        out.instructions.push_back(ins);
        switch (ins.kind) {
            case OpKind::PrepareZero: {
                std::size_t q = ins.targets[0];
                emit(NoiseEvent::bitflip(q, ch.p_therm[cal[q]]), ErrorClass::Thermal, ins.end_ns());
                break;
            }
            case OpKind::SingleQubitGate: {
                std::size_t q = ins.targets[0];
                emit(NoiseEvent::depolarize1(q, ch.p_sqg[cal[q]]), ErrorClass::SQG, ins.end_ns());
                break;
            }
            case OpKind::Move: {
                std::size_t q = gate_qubit(ins);
                emit(NoiseEvent::depolarize2(q, gate_res(ins), ch.p_move[cal[q]]), ErrorClass::MOVE, ins.end_ns());
                std::size_t r = gate_res(ins);
                if (is_res[r]) {
                    loaded[r] = ins.gate == Gate::ISWAP;
                }
                break;
            }
            case OpKind::TwoQubitGate: {
                std::size_t q = gate_qubit(ins);
                std::size_t other = ins.targets[0] == q ? ins.targets[1] : ins.targets[0];
                emit(NoiseEvent::depolarize2(q, other, ch.p_cz[cal[q]]), ErrorClass::CZ, ins.end_ns());
                break;
            }
            default: break;
        }
    }
    const double end = program.duration_ns();
    for (std::size_t e = 0; e < n; ++e) {
        if (end > free_at[e] + kEps && counts_idle(e)) {
            idle(e, free_at[e], end);
        }
    }
    out.validate();
    return out;
}

}  // namespace starqed
