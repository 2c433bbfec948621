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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "starqed/builders.h"
#include "starqed/channels.h"
#include "starqed/device.h"

namespace starqed {
namespace {

std::size_t qb(const DeviceModel& d, const std::string& name) {
    for (std::size_t k = 0; k < d.elements.size(); ++k) {
        if (d.elements[k].name == name) return k;
    }
    throw std::out_of_range(name);
}

TEST(Channels, GateErrorFormulas) {
    DeviceModel a = device_preset("A");
    ChannelParams c = channel_params(a);
    std::size_t q1 = qb(a, "QB1");
    EXPECT_NEAR(c.p_sqg[q1], 0.0014, 1e-9);
    EXPECT_NEAR(c.p_move[q1], 0.0059465940762487195, 1e-9);
    EXPECT_NEAR(c.p_therm[q1], 0.00790147983197216, 1e-9);
    EXPECT_NEAR(c.p_cz[q1], 4.0 / 3.0 * (1.0 - 0.989), 1e-12);
    EXPECT_NEAR(c.p_ro[q1], 1.0 - 0.983, 1e-12);
    EXPECT_EQ(c.sqg(q1).kind, NoiseKind::Depolarize1);
    EXPECT_EQ(c.move(q1, 6).kind, NoiseKind::Depolarize2);
    EXPECT_EQ(c.cz(q1, 6).kind, NoiseKind::Depolarize2);
    EXPECT_EQ(c.readout(q1).kind, NoiseKind::Depolarize1);
    EXPECT_EQ(c.thermal(q1).kind, NoiseKind::BitFlip);
    EXPECT_EQ(thermal_population(5.0, 0.0), 0.0);
}

TEST(Channels, IdlingClosedForms) {
    auto zero = idling_channel(0.0, 30.0, 20.0);
    EXPECT_EQ(zero, (std::array<double, 3>{0.0, 0.0, 0.0}));
    auto equal = idling_channel(10000.0, 10.0, 10.0);
    for (double p : equal) EXPECT_NEAR(p, 0.15803013970713942, 1e-9);
    // At T2 = 2 T1 the dephasing term vanishes only to first order:
    // pz = (1 - exp(-t / 2 T1))^2 / 4.
    for (double t : {5.0, 100.0, 3000.0, 1e5}) {
        auto limited = idling_channel(t, 20.0, 40.0);
        const double h = 1.0 - std::exp(-t * 1e-3 / 40.0);
        EXPECT_NEAR(limited[2], h * h / 4.0, 1e-15);
        EXPECT_EQ(limited[0], limited[1]);
    }
    auto qb3 = idling_channel(100.0, 64.5, 34.7);
    EXPECT_NEAR(qb3[0], 0.000387296591729952, 1e-12);
    EXPECT_NEAR(qb3[2], 0.0010515513347603977, 1e-12);
    EXPECT_THROW(idling_channel(100.0, 10.0, 30.0), std::invalid_argument);
    EXPECT_THROW(idling_channel(-1.0, 10.0, 10.0), std::invalid_argument);
    auto none = idling_channel(100.0, kInf, kInf);
    EXPECT_EQ(none, (std::array<double, 3>{0.0, 0.0, 0.0}));
}

TEST(Device, PresetsValidateAndMapRoles) {
    for (const auto& name : device_preset_names()) {
        DeviceModel d = device_preset(name);
        EXPECT_NO_THROW(d.validate()) << name;
        EXPECT_EQ(d.elements.size(), 7u);
    }
    DeviceModel a = device_preset("A");
    EXPECT_EQ(a.at(Role::D1).name, "QB3");
    EXPECT_EQ(a.at(Role::AX).name, "QB2");
    EXPECT_EQ(a.at(Role::Res).name, "Res");
    DeviceModel b = device_preset("B");
    EXPECT_EQ(b.at(Role::D1).name, "QB6");
    EXPECT_EQ(b.at(Role::AX).name, "QB5");
    EXPECT_DOUBLE_EQ(a.t_cycle_us, 2.05);
    EXPECT_THROW(device_preset("Q"), std::invalid_argument);
}

TEST(Device, PresetFilesMatchBuiltins) {
    for (const auto& name : {"A", "B", "ideal"}) {
        std::string path = std::string(STARQED_PRESET_DIR) + "/" + name + ".json";
        ASSERT_TRUE(std::filesystem::exists(path)) << path;
        EXPECT_EQ(device_to_json(load_device(path)), device_to_json(device_preset(name)));
        EXPECT_EQ(device_to_json(resolve_device(path)), device_to_json(device_preset(name)));
    }
}

TEST(Device, JsonRoundTrip) {
    DeviceModel a = device_preset("A");
    a.durations.cz_ns = 59.5;
    a.elements[2].t1_us = 12.5;
    std::string text = device_to_json(a);
    DeviceModel back = device_from_json(text);
    EXPECT_EQ(device_to_json(back), text);
    auto path = std::filesystem::temp_directory_path() / "starqed_device_roundtrip.json";
    save_device(a, path.string());
    EXPECT_EQ(device_to_json(load_device(path.string())), text);
    std::filesystem::remove(path);
}

TEST(Device, ValidationErrors) {
    DeviceModel d = device_preset("A");
    d.elements[0].f_cz = 1.2;
    EXPECT_THROW(d.validate(), std::invalid_argument);
    d = device_preset("A");
    d.elements[0].role = d.elements[1].role;
    EXPECT_THROW(d.validate(), std::invalid_argument);
    d = device_preset("A");
    d.elements[3].t1_us = -1.0;
    EXPECT_THROW(d.validate(), std::invalid_argument);
    EXPECT_THROW(device_from_json("{not json"), std::exception);
}

TEST(CompileNoise, SingleIdleGapOnQb3) {
    DeviceModel a = device_preset("A");
    CircuitProgram p = empty_program();
    for (double start : {0.0, 132.0}) {
        Instruction ins;
        ins.kind = OpKind::SingleQubitGate;
        ins.gate = Gate::SQRT_Y;
        ins.targets = {element_index(Role::D1)};
        ins.start_ns = start;
        ins.duration_ns = 32.0;
        p.instructions.push_back(ins);
    }
    CircuitProgram c = compile_noise(p, a);
    int found = 0;
    for (const auto& ins : c.instructions) {
        if (ins.error_class != ErrorClass::Idling || ins.targets[0] != element_index(Role::D1)) continue;
        ++found;
        EXPECT_NEAR(ins.noise->params[0], 0.000387296591729952, 1e-12);
        EXPECT_NEAR(ins.noise->params[1], 0.000387296591729952, 1e-12);
        EXPECT_NEAR(ins.noise->params[2], 0.0010515513347603977, 1e-12);
    }
    EXPECT_EQ(found, 1);
    EXPECT_THROW(compile_noise(c, a), std::invalid_argument);
}

TEST(CompileNoise, EventCountContract) {
    DeviceModel a = device_preset("A");
    ExperimentSpec spec;
    spec.kind = ExperimentKind::Lifetime;
    spec.psi_in = "0000";
    spec.cycles = 3;
    CircuitProgram p = build_experiment(spec, a);
    NoiseOptions opts;
    opts.resonator_idle_when_loaded = false;
    CircuitProgram c = compile_noise(p, a, opts);
    std::size_t gaps = 0;
    for (std::size_t e = 0; e < p.num_elements(); ++e) gaps += p.idle_gaps(e).size();
    std::size_t expected = p.count(OpKind::SingleQubitGate) + p.count(OpKind::TwoQubitGate) + p.count(OpKind::Move) +
                           p.count(OpKind::PrepareZero) + p.count(OpKind::Measure) + gaps;
    EXPECT_EQ(c.count(OpKind::Noise), expected);
    EXPECT_EQ(c.count(OpKind::Noise) + p.instructions.size(), c.instructions.size());
}

TEST(CompileNoise, IdealDeviceAddsOnlyNoOps) {
    DeviceModel ideal = device_preset("ideal");
    ExperimentSpec spec;
    spec.cycles = 2;
    CircuitProgram p = build_experiment(spec, ideal);
    CircuitProgram c = compile_noise(p, ideal);
    std::size_t other = 0;
    for (const auto& ins : c.instructions) {
        if (ins.kind == OpKind::Noise) {
            EXPECT_EQ(ins.noise->total_probability(), 0.0);
        } else {
            ++other;
        }
    }
    EXPECT_EQ(other, p.instructions.size());
}

TEST(CompileNoise, DisabledClassesKeepZeroEvents) {
    DeviceModel a = device_preset("A");
    ExperimentSpec spec;
    spec.cycles = 2;
    CircuitProgram p = build_experiment(spec, a);
    NoiseOptions opts;
    opts.enabled.erase(ErrorClass::CZ);
    CircuitProgram full = compile_noise(p, a);
    CircuitProgram ablated = compile_noise(p, a, opts);
    ASSERT_EQ(full.instructions.size(), ablated.instructions.size());
    for (const auto& ins : ablated.instructions) {
        if (ins.error_class == ErrorClass::CZ) EXPECT_EQ(ins.noise->total_probability(), 0.0);
    }
    opts.keep_disabled_events = false;
    EXPECT_LT(compile_noise(p, a, opts).instructions.size(), full.instructions.size());
}

TEST(CompileNoise, ResonatorIdlesOnlyWhileLoaded) {
    DeviceModel a = device_preset("A");
    ExperimentSpec spec;
    spec.cycles = 1;
    CircuitProgram p = build_experiment(spec, a);
    CircuitProgram c = compile_noise(p, a);
    const std::size_t res = element_index(Role::Res);
    double total = 0.0;
    for (const auto& ins : c.instructions) {
        if (ins.error_class == ErrorClass::Idling && ins.targets[0] == res) {
            total += ins.noise->total_probability();
        }
    }
    NoiseOptions always;
    always.resonator_idle_when_loaded = false;
    double total_always = 0.0;
    for (const auto& ins : compile_noise(p, a, always).instructions) {
        if (ins.error_class == ErrorClass::Idling && ins.targets[0] == res) {
            total_always += ins.noise->total_probability();
        }
    }
    EXPECT_LT(total, total_always);
}

}  // namespace
}  // namespace starqed
