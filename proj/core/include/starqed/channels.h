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
#include <vector>

#include "starqed/device.h"
#include "starqed/noise.h"

namespace starqed {

inline constexpr double kPlanck = 6.62607015e-34;    // J s
inline constexpr double kBoltzmann = 1.380649e-23;   // J / K

double sqg_error(double f_sqg_sim);       // 2 (1 - F)
double move_error(double f_double_move);  // 4/3 (1 - sqrt(F)), per single MOVE
double cz_error(double f_cz);             // 4/3 (1 - F)
double readout_error(double f_ro);        // 1 - F
/// Excited-state population exp(-h f / k T); zero at T = 0.
double thermal_population(double freq_ghz, double temp_mk);

/// Pauli-channel probabilities (px, py, pz) for an idle of t_idl_ns given
/// T1 and T2 in microseconds. Throws std::invalid_argument when pz < -1e-12.
std::array<double, 3> idling_channel(double t_idl_ns, double t1_us, double t2_us);

/// Per-element error probabilities, indexed like DeviceModel::elements.
/// Two-element gates take the probability of their qubit (not the resonator).
struct ChannelParams {
    std::vector<double> p_sqg;
    std::vector<double> p_move;
    std::vector<double> p_cz;
    std::vector<double> p_ro;
    std::vector<double> p_therm;

    NoiseEvent sqg(std::size_t q) const { return NoiseEvent::depolarize1(q, p_sqg[q]); }
    NoiseEvent move(std::size_t q, std::size_t res) const { return NoiseEvent::depolarize2(q, res, p_move[q]); }
    NoiseEvent cz(std::size_t q, std::size_t res) const { return NoiseEvent::depolarize2(q, res, p_cz[q]); }
    NoiseEvent readout(std::size_t q) const { return NoiseEvent::depolarize1(q, p_ro[q]); }
    NoiseEvent thermal(std::size_t q) const { return NoiseEvent::bitflip(q, p_therm[q]); }
};

ChannelParams channel_params(const DeviceModel& device);

}  // namespace starqed
