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

#include "starqed/channels.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace starqed {

double sqg_error(double f) { return 2.0 * (1.0 - f); }

double move_error(double f) { return 4.0 / 3.0 * (1.0 - std::sqrt(f)); }

double cz_error(double f) { return 4.0 / 3.0 * (1.0 - f); }

double readout_error(double f) { return 1.0 - f; }

double thermal_population(double freq_ghz, double temp_mk) {
    if (temp_mk <= 0.0) {
        return 0.0;
    }
    return std::exp(-kPlanck * freq_ghz * 1e9 / (kBoltzmann * temp_mk * 1e-3));
}

std::array<double, 3> idling_channel(double t_idl_ns, double t1_us, double t2_us) {
    if (!(t_idl_ns >= 0.0)) {
        throw std::invalid_argument("idling_channel: negative idle time");
    }
    const double t = t_idl_ns * 1e-3;
    const double a = 1.0 - std::exp(-t / t1_us);
    const double px = a / 4.0;
    const double pz = (1.0 - std::exp(-t / t2_us)) / 2.0 - a / 4.0;
    if (pz < -1e-12) {
        throw std::invalid_argument("idling_channel: T2 > 2 T1 gives pz = " + std::to_string(pz));
    }
    return {px, px, std::max(pz, 0.0)};
}

ChannelParams channel_params(const DeviceModel& device) {
    device.validate();
    ChannelParams c;
    for (const auto& e : device.elements) {
        c.p_sqg.push_back(sqg_error(e.f_sqg_sim));
        c.p_move.push_back(move_error(e.f_move));
        c.p_cz.push_back(cz_error(e.f_cz));
        c.p_ro.push_back(readout_error(e.f_ro));
        c.p_therm.push_back(thermal_population(e.freq_ghz, e.temp_mk));
    }
    return c;
}

}  // namespace starqed
