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

// starqed: run the error detection experiments and write result tables.

#include <exception>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.h"
#include "starqed/version.h"

int main(int argc, char** argv) {
    using starqed::cli::CliConfig;
    CliConfig cfg;
    CLI::App app{"Monte Carlo simulation of repeated [[4,2,2]] error detection"};
    app.set_version_flag("--version", std::string(starqed::kVersionString));
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--device", cfg.device, "Preset name (A, B, ideal) or JSON file; default depends on command");
    app.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    app.add_option("--shots", cfg.shots, "Shots per run (per cycle count)")->capture_default_str();
    app.add_flag("--shots-proportional", cfg.shots_proportional, "Use shots * N for N cycles");
    app.add_option("--cycles", cfg.cycles, "Largest cycle count, or tomography cycles")->capture_default_str();
    app.add_option("--out", cfg.out, "Output directory")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
    app.add_option("--t2", cfg.t2, "Dephasing time used for idling")
        ->check(CLI::IsMember({"star", "echo"}))
        ->capture_default_str();
    app.add_option("--stab-order", cfg.stab_order, "Stabilizer order within a cycle")
        ->check(CLI::IsMember({"xz", "zx"}))
        ->capture_default_str();
    app.add_option("--sigma", cfg.sigma, "Detection event definition")
        ->check(CLI::IsMember({"syndrome-change", "ancilla-change"}))
        ->capture_default_str();
    app.add_flag("--noiseless", cfg.noiseless, "Skip noise compilation");
    app.add_option("--input", cfg.inputs, "Input state(s): ket over 0,1,+,- or 'bell'");

    std::map<std::string, std::function<int(const CliConfig&)>> handlers;
    auto sub = [&](const std::string& name, const std::string& help, std::function<int(const CliConfig&)> fn) {
        handlers[name] = std::move(fn);
        return app.add_subcommand(name, help);
    };

    auto* stab = sub("stabilizer-tomo", "Single stabilizer measurement on 16 eigenstates",
                     starqed::cli::cmd_stabilizer_tomo);
    stab->add_option("--stabilizer", cfg.stabilizer, "x, z or both")
        ->check(CLI::IsMember({"x", "z", "both"}))
        ->capture_default_str();

    auto* life = sub("lifetime", "Repeated detection, acceptance and logical decay", starqed::cli::cmd_lifetime);
    life->add_option("--batch-out", cfg.batch_out, "Also write the shot container of the longest run");

    auto tomo_opts = [&](CLI::App* s) {
        s->add_option("--settings-mode", cfg.settings_mode, "exhaustive or uniform")
            ->check(CLI::IsMember({"exhaustive", "uniform"}))
            ->capture_default_str();
        s->add_option("--settings", cfg.settings, "Number of uniform settings")->capture_default_str();
        s->add_option("--shots-per-setting", cfg.shots_per_setting, "Shots per tomography setting")
            ->capture_default_str();
        s->add_option("--bootstrap", cfg.bootstrap, "Bootstrap resamples over settings")->capture_default_str();
        s->add_flag("--eigen-cleanup", cfg.eigen_cleanup, "Clip negative eigenvalues in exported matrices");
    };
    auto* tomo = sub("tomography", "Shadow tomography after the encoding cycle", starqed::cli::cmd_tomography);
    tomo_opts(tomo);

    auto* bell = sub("bell", "Logical Bell state lifetime and tomography", starqed::cli::cmd_bell);
    tomo_opts(bell);
    bell->add_option("--tomography-cycles", cfg.tomography_cycles, "Cycle counts with tomography");
    bell->add_option("--batch-out", cfg.batch_out, "Also write the shot container of the longest run");

    auto* budget = sub("budget", "Error budget by suppressing one error class at a time", starqed::cli::cmd_budget);
    budget->add_flag("--include-all", cfg.include_all_removed, "Add a row with every class removed");

    sub("detectors", "Detection event fractions without post-selection", starqed::cli::cmd_detectors);

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto* s : app.get_subcommands()) {
            cfg.command = s->get_name();
            // Tomography reads --cycles as the number of cycles before the
            // readout; one cycle unless given.
            if (cfg.command == "tomography" && app.count("--cycles") == 0) {
                cfg.cycles = 1;
            }
            return handlers.at(cfg.command)(cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
