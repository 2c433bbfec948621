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

#include "commands.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "report.h"
#include "starqed/version.h"

namespace starqed::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json config_json(const CliConfig& c) {
    return {{"command", c.command},
            {"device", c.device.empty() ? default_device(c.command) : c.device},
            {"seed", c.seed},
            {"shots", c.shots},
            {"shots_policy", c.shots_proportional ? "proportional" : "fixed"},
            {"cycles", c.cycles},
            {"threads", c.threads},
            {"t2", c.t2},
            {"stab_order", c.stab_order},
            {"sigma", c.sigma},
            {"noiseless", c.noiseless},
            {"inputs", c.inputs},
            {"stabilizer", c.stabilizer},
            {"settings_mode", c.settings_mode},
            {"settings", c.settings},
            {"shots_per_setting", c.shots_per_setting},
            {"tomography_cycles", c.tomography_cycles},
            {"bootstrap", c.bootstrap},
            {"eigen_cleanup", c.eigen_cleanup},
            {"include_all_removed", c.include_all_removed}};
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : s) {
        h = (h ^ static_cast<uint8_t>(ch)) * 0x100000001b3ULL;
    }
    return h;
}

std::string hex(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

class Output {
   public:
    Output(const CliConfig& c, const RunContext& ctx) : config_(c), ctx_(ctx), dir_(c.out) {
        fs::create_directories(dir_);
    }
    void write(const std::string& name, const std::string& text) {
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write " + (dir_ / name).string());
        }
        f << text;
        files_.push_back(name);
    }
    void add(const std::string& name) { files_.push_back(name); }
    fs::path path(const std::string& name) const { return dir_ / name; }
    void finish() {
        files_.push_back("manifest.json");
        std::ofstream f(dir_ / "manifest.json");
        f << manifest_json(config_, ctx_, files_);
        std::cout << "wrote " << files_.size() << " files to " << dir_.string() << "\n";
    }

   private:
    const CliConfig& config_;
    const RunContext& ctx_;
    fs::path dir_;
    std::vector<std::string> files_;
};

ShotsPolicy shots_policy(const CliConfig& c) { return {c.shots, c.shots_proportional}; }

TomographyOptions tomography_options(const CliConfig& c) {
    TomographyOptions o;
    if (c.settings_mode == "exhaustive") {
        o.mode = SettingMode::Exhaustive81;
    } else if (c.settings_mode == "uniform") {
        o.mode = SettingMode::Uniform;
    } else {
        throw std::invalid_argument("--settings-mode must be exhaustive or uniform");
    }
    o.settings = c.settings;
    o.shots_per_setting = c.shots_per_setting;
    o.cycles = c.cycles;
    o.shadow.bootstrap = c.bootstrap;
    o.shadow.bootstrap_seed = c.seed;
    o.shadow.eigen_cleanup = false;
    return o;
}

void write_batch(const CliConfig& c, const RunContext& ctx, const ExperimentSpec& spec, const std::string& input,
                 Output& out) {
    if (c.batch_out.empty()) return;
    auto batch = run_shots(make_program(spec, ctx), shots_policy(c).at(spec.cycles),
                           sub_seed(ctx.seed, input, spec.cycles), ctx.engine);
    batch.write(out.path(c.batch_out).string());
    out.add(c.batch_out);
}

}  // namespace

std::string default_device(const std::string& command) {
    if (command == "lifetime" || command == "budget" || command == "detectors") return "A";
    return "B";
}

RunContext make_context(const CliConfig& c) {
    if (c.shots == 0 || c.shots_per_setting == 0) {
        throw std::invalid_argument("shot counts must be positive");
    }
    if (c.cycles < 0) {
        throw std::invalid_argument("--cycles must be non-negative");
    }
    if (c.threads == 0) {
        throw std::invalid_argument("--threads must be positive");
    }
    if (c.t2 != "star" && c.t2 != "echo") {
        throw std::invalid_argument("--t2 must be star or echo");
    }
    RunContext ctx;
    ctx.device = resolve_device(c.device.empty() ? default_device(c.command) : c.device);
    ctx.noise.t2_echo = c.t2 == "echo";
    ctx.noisy = !c.noiseless;
    ctx.engine.threads = c.threads;
    ctx.seed = c.seed;
    ctx.order = stabilizer_order_from_name(c.stab_order);
    ctx.sigma = sigma_definition_from_name(c.sigma);
    for (const auto& in : c.inputs) {
        if (in != kBellInput && !is_supported_product_state(in)) {
            throw std::invalid_argument("unsupported input state '" + in + "'");
        }
    }
    return ctx;
}

std::string manifest_json(const CliConfig& config, const RunContext& ctx, const std::vector<std::string>& files) {
    json cfg = config_json(config);
    json m;
    m["tool"] = "starqed";
    m["version"] = kVersionString;
    m["config"] = cfg;
    m["config_digest"] = hex(fnv1a(cfg.dump()));
    m["seed"] = config.seed;
    m["device"] = ctx.device.name;
    m["device_digest"] = hex(fnv1a(device_to_json(ctx.device)));
    m["files"] = files;
    return m.dump(2) + "\n";
}

int cmd_stabilizer_tomo(const CliConfig& c) {
    RunContext ctx = make_context(c);
    std::vector<Basis> stabs;
    if (c.stabilizer == "x" || c.stabilizer == "both") stabs.push_back(Basis::X);
    if (c.stabilizer == "z" || c.stabilizer == "both") stabs.push_back(Basis::Z);
    if (stabs.empty()) {
        throw std::invalid_argument("--stabilizer must be x, z or both");
    }
    std::vector<StabilizerTomoResult> results;
    for (Basis b : stabs) {
        results.push_back(run_stabilizer_tomography(b, c.shots, ctx));
        std::cout << "S_" << basis_char(b) << " stabilizer fidelity " << 100.0 * results.back().fidelity << " %\n";
    }
    Output out(c, ctx);
    out.write("stabilizer_tomo.csv", report::stabilizer_tomo_csv(results));
    out.write("stabilizer_fidelity.csv", report::stabilizer_fidelity_csv(results));
    out.finish();
    return 0;
}

int cmd_lifetime(const CliConfig& c) {
    RunContext ctx = make_context(c);
    auto inputs = c.inputs.empty() ? lifetime_inputs() : c.inputs;
    std::vector<LifetimeResult> results;
    for (const auto& in : inputs) {
        results.push_back(run_lifetime(in, c.cycles, shots_policy(c), ctx));
        const auto& r = results.back();
        std::cout << in << " -> |" << r.target.label << ">_L  P_S " << r.acceptance.p_s << "  P_L " << r.acceptance.p_l;
        for (int i = 0; i < 2; ++i) {
            if (r.fits[static_cast<std::size_t>(i)]) {
                std::cout << "  eps" << i + 1 << " " << 100.0 * r.fits[static_cast<std::size_t>(i)]->epsilon << " %";
            }
        }
        std::cout << "\n";
    }
    Output out(c, ctx);
    out.write("lifetime_series.csv", report::lifetime_series_csv(results));
    out.write("lifetime_table.csv", report::lifetime_table_csv(results));
    ExperimentSpec spec;
    spec.kind = ExperimentKind::Lifetime;
    spec.psi_in = inputs.front();
    spec.cycles = c.cycles;
    write_batch(c, ctx, spec, inputs.front(), out);
    out.finish();
    return 0;
}

int cmd_tomography(const CliConfig& c) {
    RunContext ctx = make_context(c);
    auto inputs = c.inputs.empty() ? tomography_inputs() : c.inputs;
    auto opt = tomography_options(c);
    std::vector<TomographyResult> results;
    Output out(c, ctx);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        results.push_back(run_tomography(inputs[i], opt, ctx));
        const auto& r = results.back();
        std::cout << inputs[i] << " -> " << r.target.label << "  F_L " << r.f_l.value << " +- " << r.f_l.error
                  << "  P_L " << r.p_l.value << "  P_S " << r.p_s << "\n";
        out.write("density_" + std::to_string(i) + ".json", density_to_json(r.density, c.eigen_cleanup));
        std::ostringstream ds;
        write_dataset(ds, r.data);
        out.write("dataset_" + std::to_string(i) + ".txt", ds.str());
    }
    out.write("tomography.csv", report::tomography_csv(results));
    out.finish();
    return 0;
}

int cmd_bell(const CliConfig& c) {
    RunContext ctx = make_context(c);
    auto opt = tomography_options(c);
    auto result = run_bell(c.cycles, shots_policy(c), c.tomography_cycles, opt, ctx);
    std::cout << "P_S " << result.acceptance.p_s << "  P_L " << result.acceptance.p_l << "\n";
    if (result.zz_fit) {
        std::cout << "ZZ decay: tau " << result.zz_fit->tau_us << " us, eps " << 100.0 * result.zz_fit->epsilon
                  << " %\n";
    }
    Output out(c, ctx);
    out.write("bell_series.csv", report::bell_series_csv(result));
    out.write("bell_fit.csv", report::bell_fit_csv(result));
    if (!result.tomography.empty()) {
        out.write("bell_tomography.csv", report::bell_tomography_csv(result));
        for (const auto& t : result.tomography) {
            out.write("bell_density_N" + std::to_string(t.cycles) + ".json", density_to_json(t.density, c.eigen_cleanup));
        }
    }
    ExperimentSpec spec;
    spec.kind = ExperimentKind::BellLifetime;
    spec.cycles = std::max(c.cycles, 1);
    write_batch(c, ctx, spec, std::string(kBellInput), out);
    out.finish();
    return 0;
}

int cmd_budget(const CliConfig& c) {
    RunContext ctx = make_context(c);
    const std::string in = c.inputs.empty() ? "0000" : c.inputs.front();
    auto result = run_error_budget(in, c.cycles, shots_policy(c), ctx, c.include_all_removed);
    for (const auto& r : result.rows) {
        std::cout << r.removed << ": rejection " << 100.0 * r.rejection_rate << " %  eps " << 100.0 * r.epsilon
                  << " %\n";
    }
    Output out(c, ctx);
    out.write("budget.csv", report::budget_csv(result));
    out.finish();
    return 0;
}

int cmd_detectors(const CliConfig& c) {
    RunContext ctx = make_context(c);
    auto inputs = c.inputs.empty() ? std::vector<std::string>{"0000", std::string(kBellInput)} : c.inputs;
    std::vector<DetectorGrid> grids;
    for (const auto& in : inputs) {
        grids.push_back(run_detectors(in, c.cycles, shots_policy(c), ctx));
        const auto& row = grids.back().rows.front();
        std::cout << in << ": first cycle sigma_X " << row.sigma_x.front() << "  sigma_Z " << row.sigma_z.front()
                  << "\n";
    }
    Output out(c, ctx);
    out.write("detectors.csv", report::detectors_csv(grids));
    out.finish();
    return 0;
}

}  // namespace starqed::cli
