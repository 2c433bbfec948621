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
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace starqed {

enum class Role : uint8_t { D1, D2, D3, D4, AX, AZ, Res };

inline constexpr std::array<Role, 7> kRoles = {Role::D1, Role::D2, Role::D3, Role::D4,
                                               Role::AX, Role::AZ, Role::Res};

std::string role_name(Role r);  // "D1".."D4", "A_X", "A_Z", "Res"
Role role_from_name(std::string_view name);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Calibration of one element. Fidelities are fractions, not percent.
/// A fidelity of 1 means the corresponding error channel is absent.
struct ElementCalibration {
    std::string name;        // QB1..QB6, Res
    Role role = Role::D1;
    double freq_ghz = 5.0;
    double temp_mk = 0.0;    // 0 disables the thermal bitflip
    double t1_us = kInf;
    double t2_star_us = kInf;
    double t2_echo_us = kInf;
    double f_ro = 1.0;
    double f_sqg_ind = 1.0;
    double f_sqg_sim = 1.0;
    double f_move = 1.0;     // double MOVE
    double f_cz = 1.0;
};

struct GateDurations {
    double sqg_ns = 32.0;
    double cz_ns = 60.0;
    double move_ns = 100.0;
    double readout_ns = 1100.0;
};

struct DeviceModel {
    std::string name;
    std::vector<ElementCalibration> elements;  // 6 qubits then the resonator
    GateDurations durations;
    double t_cycle_us = 2.05;

    /// Index in `elements` of the element holding role r.
    std::size_t index_of(Role r) const;
    const ElementCalibration& at(Role r) const { return elements[index_of(r)]; }

    /// Fidelities in (0, 1], times > 0, role map a bijection onto all seven
    /// roles, cycle long enough for the schedule. Throws std::invalid_argument.
    void validate() const;
};

/// Bundled presets: "A", "B" (the two measured configurations) and "ideal".
DeviceModel device_preset(std::string_view name);
std::vector<std::string> device_preset_names();

/// Human-editable JSON form.
std::string device_to_json(const DeviceModel& device);
DeviceModel device_from_json(std::string_view text);
DeviceModel load_device(const std::string& path);
void save_device(const DeviceModel& device, const std::string& path);

/// A preset name or a path to a JSON file.
DeviceModel resolve_device(const std::string& preset_or_path);

}  // namespace starqed
