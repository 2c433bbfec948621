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

#include "starqed/device.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace starqed {

namespace {

using nlohmann::json;

// Shared calibration of the six qubits and the resonator, QB1..QB6 then Res.
constexpr std::array<double, 7> kFreq = {4.67, 4.47, 4.41, 4.52, 4.63, 4.93, 4.22};
constexpr std::array<double, 6> kTemp = {46.3, 42.0, 43.6, 40.9, 43.0, 45.8};
constexpr std::array<double, 6> kRo = {98.3, 98.6, 98.7, 99.1, 98.9, 98.7};
constexpr std::array<double, 6> kSqgInd = {99.93, 99.94, 99.96, 99.96, 99.96, 99.89};
constexpr std::array<double, 6> kSqgSim = {99.93, 99.92, 99.96, 99.95, 99.59, 99.87};
constexpr std::array<double, 6> kMove = {99.11, 99.34, 99.00, 99.30, 98.31, 97.95};
constexpr std::array<double, 6> kCz = {98.90, 98.75, 98.97, 98.04, 98.53, 96.61};

struct Lifetimes {
    std::array<Role, 6> roles;
    std::array<double, 7> t1;
    std::array<double, 7> t2_star;
    std::array<double, 6> t2_echo;
};

const Lifetimes kConfigA = {
    {Role::AZ, Role::AX, Role::D1, Role::D2, Role::D3, Role::D4},
    {26.1, 44.3, 64.5, 38.7, 40.8, 29.4, 5.4},
    {45.1, 29.1, 34.7, 26.4, 47.2, 22.8, 10.3},
    {51.3, 52.0, 45.3, 36.1, 56.0, 39.5},
};

const Lifetimes kConfigB = {
    {Role::D2, Role::D3, Role::D4, Role::AZ, Role::AX, Role::D1},
    {25.7, 51.2, 59.1, 55.0, 49.0, 36.4, 5.7},
    {37.9, 30.1, 31.5, 19.6, 60.3, 42.4, 11.9},
    {42.4, 62.2, 43.0, 30.8, 60.9, 47.8},
};

// Percent to fraction, rounded so that the value prints as typed.
double percent(double pct) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", pct / 100.0);
    return std::strtod(buf, nullptr);
}

DeviceModel measured(const std::string& name, const Lifetimes& lt) {
    DeviceModel d;
    d.name = name;
    const double mean_temp = std::accumulate(kTemp.begin(), kTemp.end(), 0.0) / 6.0;
    for (std::size_t q = 0; q < 7; ++q) {
        ElementCalibration e;
        e.freq_ghz = kFreq[q];
        e.t1_us = lt.t1[q];
        e.t2_star_us = lt.t2_star[q];
        if (q < 6) {
            e.name = "QB" + std::to_string(q + 1);
            e.role = lt.roles[q];
            e.temp_mk = kTemp[q];
            e.t2_echo_us = lt.t2_echo[q];
            e.f_ro = percent(kRo[q]);
            e.f_sqg_ind = percent(kSqgInd[q]);
            e.f_sqg_sim = percent(kSqgSim[q]);
            e.f_move = percent(kMove[q]);
            e.f_cz = percent(kCz[q]);
        } else {
            e.name = "Res";
            e.role = Role::Res;
            e.temp_mk = mean_temp;
            e.t2_echo_us = lt.t2_star[q];  // no echo value for the resonator
        }
        d.elements.push_back(e);
    }
    return d;
}

DeviceModel ideal() {
    DeviceModel d = measured("ideal", kConfigA);
    for (auto& e : d.elements) {
        e.temp_mk = 0.0;
        e.t1_us = e.t2_star_us = e.t2_echo_us = kInf;
        e.f_ro = e.f_sqg_ind = e.f_sqg_sim = e.f_move = e.f_cz = 1.0;
    }
    return d;
}

// JSON has no infinity; "inf" strings stand in for it.
json time_value(double v) {
    if (std::isinf(v)) {
        return "inf";
    }
    return v;
}

double read_time(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const auto& v = j.at(key);
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") {
            return kInf;
        }
        throw std::invalid_argument(std::string("device: bad value for ") + key);
    }
    return v.get<double>();
}

}  // namespace

std::string role_name(Role r) {
    switch (r) {
        case Role::D1: return "D1";
        case Role::D2: return "D2";
        case Role::D3: return "D3";
        case Role::D4: return "D4";
        case Role::AX: return "A_X";
        case Role::AZ: return "A_Z";
        case Role::Res: return "Res";
    }
    return "?";
}

Role role_from_name(std::string_view name) {
    for (Role r : kRoles) {
        if (role_name(r) == name) {
            return r;
        }
    }
    throw std::invalid_argument("unknown role '" + std::string(name) + "'");
}

std::size_t DeviceModel::index_of(Role r) const {
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].role == r) {
            return i;
        }
    }
    throw std::invalid_argument("device has no element with role " + role_name(r));
}

void DeviceModel::validate() const {
    if (elements.size() != 7) {
        throw std::invalid_argument("device must list 7 elements");
    }
    std::set<Role> roles;
    for (const auto& e : elements) {
        roles.insert(e.role);
        for (double f : {e.f_ro, e.f_sqg_ind, e.f_sqg_sim, e.f_move, e.f_cz}) {
            if (!(f > 0.0 && f <= 1.0)) {
                throw std::invalid_argument("device element " + e.name + ": fidelity outside (0, 1]");
            }
        }
        for (double t : {e.t1_us, e.t2_star_us, e.t2_echo_us}) {
            if (!(t > 0.0)) {
                throw std::invalid_argument("device element " + e.name + ": lifetimes must be positive");
            }
        }
        if (!(e.freq_ghz > 0.0) || !(e.temp_mk >= 0.0)) {
            throw std::invalid_argument("device element " + e.name + ": bad frequency or temperature");
        }
    }
    if (roles.size() != 7) {
        throw std::invalid_argument("device role map is not a bijection onto the seven roles");
    }
    const auto& g = durations;
    for (double t : {g.sqg_ns, g.cz_ns, g.move_ns, g.readout_ns}) {
        if (!(t > 0.0)) {
            throw std::invalid_argument("gate durations must be positive");
        }
    }
    // The second half starts once the resonator is free again.
    double min_cycle = g.sqg_ns + 4 * g.move_ns + 8 * g.cz_ns + g.sqg_ns + g.readout_ns;
    if (!(t_cycle_us * 1000.0 + 1e-9 >= min_cycle)) {
        throw std::invalid_argument("t_cycle shorter than the cycle schedule (" + std::to_string(min_cycle) + " ns)");
    }
}

DeviceModel device_preset(std::string_view name) {
    if (name == "A") {
        return measured("A", kConfigA);
    }
    if (name == "B") {
        return measured("B", kConfigB);
    }
    if (name == "ideal") {
        return ideal();
    }
    throw std::invalid_argument("unknown device preset '" + std::string(name) + "'");
}

std::vector<std::string> device_preset_names() { return {"A", "B", "ideal"}; }

std::string device_to_json(const DeviceModel& device) {
    json j;
    j["name"] = device.name;
    j["t_cycle_us"] = device.t_cycle_us;
    j["durations_ns"] = {{"sqg", device.durations.sqg_ns},
                         {"cz", device.durations.cz_ns},
                         {"move", device.durations.move_ns},
                         {"readout", device.durations.readout_ns}};
    json elems = json::array();
    for (const auto& e : device.elements) {
        elems.push_back({{"name", e.name},
                         {"role", role_name(e.role)},
                         {"freq_ghz", e.freq_ghz},
                         {"temp_mk", e.temp_mk},
                         {"t1_us", time_value(e.t1_us)},
                         {"t2_star_us", time_value(e.t2_star_us)},
                         {"t2_echo_us", time_value(e.t2_echo_us)},
                         {"f_ro", e.f_ro},
                         {"f_sqg_ind", e.f_sqg_ind},
                         {"f_sqg_sim", e.f_sqg_sim},
                         {"f_move", e.f_move},
                         {"f_cz", e.f_cz}});
    }
    j["elements"] = elems;
    return j.dump(2) + "\n";
}

DeviceModel device_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("device: invalid JSON: ") + e.what());
    }
    DeviceModel d;
    try {
        d.name = j.value("name", "custom");
        d.t_cycle_us = j.value("t_cycle_us", 2.05);
        if (j.contains("durations_ns")) {
            const auto& g = j.at("durations_ns");
            d.durations.sqg_ns = g.value("sqg", d.durations.sqg_ns);
            d.durations.cz_ns = g.value("cz", d.durations.cz_ns);
            d.durations.move_ns = g.value("move", d.durations.move_ns);
            d.durations.readout_ns = g.value("readout", d.durations.readout_ns);
        }
        for (const auto& je : j.at("elements")) {
            ElementCalibration e;
            e.name = je.at("name").get<std::string>();
            e.role = role_from_name(je.at("role").get<std::string>());
            e.freq_ghz = je.at("freq_ghz").get<double>();
            e.temp_mk = je.value("temp_mk", 0.0);
            e.t1_us = read_time(je, "t1_us", kInf);
            e.t2_star_us = read_time(je, "t2_star_us", kInf);
            e.t2_echo_us = read_time(je, "t2_echo_us", e.t2_star_us);
            e.f_ro = je.value("f_ro", 1.0);
            e.f_sqg_ind = je.value("f_sqg_ind", 1.0);
            e.f_sqg_sim = je.value("f_sqg_sim", e.f_sqg_ind);
            e.f_move = je.value("f_move", 1.0);
            e.f_cz = je.value("f_cz", 1.0);
            d.elements.push_back(e);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("device: ") + e.what());
    }
    d.validate();
    return d;
}

DeviceModel load_device(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open device file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return device_from_json(buf.str());
}

void save_device(const DeviceModel& device, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write device file " + path);
    }
    out << device_to_json(device);
}

DeviceModel resolve_device(const std::string& preset_or_path) {
    for (const auto& n : device_preset_names()) {
        if (n == preset_or_path) {
            return device_preset(n);
        }
    }
    if (std::filesystem::exists(preset_or_path)) {
        return load_device(preset_or_path);
    }
    throw std::invalid_argument("'" + preset_or_path + "' is neither a device preset nor a file");
}

}  // namespace starqed
