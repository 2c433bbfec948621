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

// Timed circuit construction for the error detection experiments.
//
// Programs always use the element order D1, D2, D3, D4, A_X, A_Z, Res, so
// element index equals static_cast<size_t>(Role). Fragments start at t = 0
// and are placed on a timeline with append_fragment().

#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "starqed/circuit.h"
#include "starqed/device.h"

namespace starqed {

inline constexpr std::size_t kNumElements = 7;

constexpr std::size_t element_index(Role r) { return static_cast<std::size_t>(r); }

enum class StabilizerOrder : uint8_t { XZ, ZX };

std::string stabilizer_order_name(StabilizerOrder o);
StabilizerOrder stabilizer_order_from_name(std::string_view name);

/// Empty program over the seven named elements.
CircuitProgram empty_program();

/// Appends `fragment` shifted by `offset_ns`; measurement slots keep their
/// cycle numbers unless `cycle_override` is non-negative.
void append_fragment(CircuitProgram& program, const CircuitProgram& fragment, double offset_ns,
                     int cycle_override = -1);

/// Product input state over {0,1,+,-}, D1 first. Throws for anything else.
bool is_supported_product_state(std::string_view ket);

/// prepare_zero on every element, then one single-qubit slot with X for |1>,
/// SQRT_Y for |+> and SQRT_Y_DAG for |->. Duration one single-qubit gate.
CircuitProgram build_prep(std::string_view psi_in, const DeviceModel& device);

/// Bell-pair preparation of the logical Bell state: resonator-mediated CZ on
/// D1-D4 and D2-D3 between SQRT_Y layers.
CircuitProgram build_bell_prep(const DeviceModel& device);

/// One half of the cycle: the stabilizer of `basis` measured on its ancilla.
/// Starts at t = 0; measurement tags carry `cycle`.
CircuitProgram build_half_cycle(Basis basis, const DeviceModel& device, int cycle = 1);

/// One full stabilizer cycle, padded to the device cycle time.
CircuitProgram build_cycle(const DeviceModel& device, int cycle = 1, StabilizerOrder order = StabilizerOrder::XZ);

/// Basis rotation slot plus simultaneous readout of the four data qubits.
CircuitProgram build_data_readout(const std::array<Basis, 4>& bases, const DeviceModel& device);

enum class ExperimentKind : uint8_t { SingleStabilizer, Lifetime, Tomography, BellLifetime, BellTomography };

std::string experiment_kind_name(ExperimentKind k);
ExperimentKind experiment_kind_from_name(std::string_view name);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Lifetime;
    std::string psi_in = "0000";  // ignored by the Bell kinds
    int cycles = 1;
    Basis stabilizer = Basis::Z;  // SingleStabilizer only
    /// Readout bases for the tomography kinds; BellLifetime uses
    /// readout[0] for all four qubits.
    std::array<Basis, 4> readout{Basis::Z, Basis::Z, Basis::Z, Basis::Z};
    int setting_id = -1;
    StabilizerOrder order = StabilizerOrder::XZ;
};

/// Readout basis of a product input: Z for computational, X for +/- states.
Basis preparation_basis(std::string_view psi_in);

/// Preparation, cycles, final data readout. Throws std::invalid_argument for
/// invalid combinations.
CircuitProgram build_experiment(const ExperimentSpec& spec, const DeviceModel& device);

struct NoiseOptions {
    std::set<ErrorClass> enabled{ErrorClass::SQG,     ErrorClass::MOVE,   ErrorClass::CZ,
                                 ErrorClass::Readout, ErrorClass::Idling, ErrorClass::Thermal};
    /// Use the echo dephasing time instead of T2*.
    bool t2_echo = false;
    /// Idle the resonator only while it holds a moved state. When false the
    /// resonator idles for its whole timeline like a qubit.
    bool resonator_idle_when_loaded = true;
    /// Keep events of disabled classes with zero probability, so ablated
    /// programs consume random numbers exactly like the full program.
    bool keep_disabled_events = true;
};

/// Inserts gate, readout, thermal and idling noise events. Throws if the
/// program is already compiled.
CircuitProgram compile_noise(const CircuitProgram& program, const DeviceModel& device,
                             const NoiseOptions& options = {});

}  // namespace starqed
