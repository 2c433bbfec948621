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

#include "starqed/pipelines.h"

#include <cmath>
#include <stdexcept>

#include "starqed/code422.h"
#include "starqed/rng.h"

namespace starqed {

namespace {

uint64_t text_hash(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h = (h ^ static_cast<uint8_t>(c)) * 0x100000001b3ULL;
    }
    return h;
}

bool is_bell(std::string_view psi) { return psi == kBellInput; }

StateVector bell_state() {
    CVector a = CVector::Zero(16);
    // (|00> + |11>) on D1-D4 times the same on D2-D3.
    for (int i : {0b0000, 0b1001, 0b0110, 0b1111}) {
        a(i) = 0.5;
    }
    return StateVector(4, a);
}

// Too few usable points is a normal outcome for short or noiseless runs.
std::optional<FitResult> try_fit(const std::vector<DecayPoint>& pts, double t_cycle_us) {
    try {
        return fit_decay(pts, t_cycle_us);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

Estimate pm_from_proportion(const Proportion& p) {
    Estimate e;
    e.count = p.total;
    if (p.total) {
        e.mean = 2.0 * p.value() - 1.0;
        e.error = 2.0 * p.error();
    }
    return e;
}

}  // namespace

std::size_t ShotsPolicy::at(int cycles) const {
    return proportional ? base * static_cast<std::size_t>(std::max(cycles, 1)) : base;
}

uint64_t sub_seed(uint64_t seed, std::string_view input, int cycles, int setting) {
    uint64_t h = mix64(seed ^ text_hash(input));
    h = mix64(h ^ static_cast<uint64_t>(cycles + 1) * 0x9E3779B97F4A7C15ULL);
    return mix64(h ^ static_cast<uint64_t>(setting + 2) * 0xC2B2AE3D27D4EB4FULL);
}

CircuitProgram make_program(const ExperimentSpec& spec, const RunContext& ctx) {
    ExperimentSpec s = spec;
    s.order = ctx.order;
    CircuitProgram p = build_experiment(s, ctx.device);
    return ctx.noisy ? compile_noise(p, ctx.device, ctx.noise) : p;
}

EncodedTarget encoded_target(std::string_view psi_in) {
    static const CMatrix v = logical_basis_projectors();
    EncodedTarget t;
    if (is_bell(psi_in)) {
        t.label = std::string(kBellInput);
        t.basis = Basis::Z;
        t.physical = bell_state();
        t.logical = v.adjoint() * t.physical.amplitudes();
        return t;
    }
    if (!is_supported_product_state(psi_in)) {
        throw std::invalid_argument("encoded_target: unsupported input '" + std::string(psi_in) + "'");
    }
    t.basis = preparation_basis(psi_in);
    const StateVector psi = product_state(psi_in);
    const CodewordBasis cb = t.basis == Basis::Z ? CodewordBasis::Z : CodewordBasis::X;
    double best = -1.0;
    for (const auto& label : codeword_labels(cb)) {
        StateVector cw = codeword(label, cb);
        double f = cw.fidelity(psi);
        if (f > best) {
            best = f;
            t.label = label;
            t.physical = cw;
        }
    }
    t.eigenvalues = label_eigenvalues(t.label);
    t.logical = v.adjoint() * t.physical.amplitudes();
    return t;
}

const std::vector<std::string>& lifetime_inputs() {
    static const std::vector<std::string> inputs{"0000", "0011", "0101", "0110", "++++", "+-+-", "--++", "+--+"};
    return inputs;
}

const std::vector<std::string>& tomography_inputs() {
    static const std::vector<std::string> inputs{
        "0000", "1111", "0011", "1100", "0101", "1010", "0110", "1001",
        "----", "++++", "+-+-", "-+-+", "--++", "++--", "+--+", "-++-",
    };
    return inputs;
}

std::vector<std::string> stabilizer_eigenbasis_inputs(Basis stabilizer) {
    if (stabilizer == Basis::Y) {
        throw std::invalid_argument("stabilizer_eigenbasis_inputs: X or Z only");
    }
    const char zero = stabilizer == Basis::Z ? '0' : '+';
    const char one = stabilizer == Basis::Z ? '1' : '-';
    std::vector<std::string> out;
    for (unsigned m = 0; m < 16; ++m) {
        std::string s(4, zero);
        for (unsigned k = 0; k < 4; ++k) {
            if ((m >> (3 - k)) & 1) s[k] = one;
        }
        out.push_back(s);
    }
    return out;
}

int ideal_stabilizer_value(std::string_view psi_in, Basis stabilizer) {
    const char one = stabilizer == Basis::Z ? '1' : '-';
    const char zero = stabilizer == Basis::Z ? '0' : '+';
    int parity = 0;
    for (char c : psi_in) {
        if (c == one) {
            parity ^= 1;
        } else if (c != zero) {
            throw std::invalid_argument("ideal_stabilizer_value: input is not an eigenstate of the stabilizer");
        }
    }
    return parity ? -1 : 1;
}

StabilizerTomoResult run_stabilizer_tomography(Basis stabilizer, std::size_t shots, const RunContext& ctx) {
    StabilizerTomoResult out;
    out.stabilizer = stabilizer;
    std::vector<double> s_exp, s_ideal;
    for (const auto& psi : stabilizer_eigenbasis_inputs(stabilizer)) {
        ExperimentSpec spec;
        spec.kind = ExperimentKind::SingleStabilizer;
        spec.psi_in = psi;
        spec.cycles = 1;
        spec.stabilizer = stabilizer;
        auto batch = run_shots(make_program(spec, ctx), shots,
                               sub_seed(ctx.seed, psi, stabilizer == Basis::X ? -1 : -2), ctx.engine);
        StabilizerTomoRow row;
        row.psi_in = psi;
        row.s_ideal = ideal_stabilizer_value(psi, stabilizer);
        row.s = stabilizer_mean(batch, stabilizer);
        s_exp.push_back(row.s.mean);
        s_ideal.push_back(row.s_ideal);
        out.rows.push_back(std::move(row));
    }
    out.fidelity = stabilizer_fidelity(s_exp, s_ideal);
    return out;
}

LifetimeResult run_lifetime(const std::string& psi_in, int max_cycles, const ShotsPolicy& shots,
                            const RunContext& ctx) {
    if (max_cycles < 1) {
        throw std::invalid_argument("run_lifetime: need at least one cycle");
    }
    LifetimeResult out;
    out.psi_in = psi_in;
    out.target = encoded_target(psi_in);
    std::vector<AcceptancePoint> eta;
    std::array<std::vector<DecayPoint>, 2> decay;
    std::vector<DecayPoint> correct;
    for (int n = 1; n <= max_cycles; ++n) {
        ExperimentSpec spec;
        spec.kind = ExperimentKind::Lifetime;
        spec.psi_in = psi_in;
        spec.cycles = n;
        auto batch = run_shots(make_program(spec, ctx), shots.at(n), sub_seed(ctx.seed, psi_in, n), ctx.engine);
        auto full = postselect(batch, PostselectRule::WithFinalSubspace);
        LifetimePoint pt;
        pt.cycles = n;
        pt.eta = full.acceptance;
        pt.eta_stab = postselect(batch, PostselectRule::AllSPlusOne).acceptance;
        pt.l1 = logical_expectation(batch, full.accepted, 1);
        pt.l2 = logical_expectation(batch, full.accepted, 2);
        pt.correct = logical_state_probability(batch, full.accepted, out.target.eigenvalues);
        eta.push_back({n, pt.eta});
        const double w = pt.eta.value();
        decay[0].push_back({n, out.target.eigenvalues[0] * pt.l1.mean, w});
        decay[1].push_back({n, out.target.eigenvalues[1] * pt.l2.mean, w});
        correct.push_back({n, pt.correct.value(), w});
        out.points.push_back(pt);
    }
    if (max_cycles >= 2) {
        out.acceptance = acceptance_fit(eta, false);
    } else {
        out.acceptance.points = eta;
    }
    const double tc = ctx.device.t_cycle_us;
    out.fits[0] = try_fit(decay[0], tc);
    out.fits[1] = try_fit(decay[1], tc);
    out.correct_fit = try_fit(correct, tc);
    return out;
}

TomographyResult run_tomography(const std::string& psi_in, const TomographyOptions& options, const RunContext& ctx) {
    if (options.cycles < 0) {
        throw std::invalid_argument("run_tomography: negative cycle count");
    }
    const bool bell = is_bell(psi_in);
    TomographyResult out;
    out.psi_in = psi_in;
    out.target = encoded_target(psi_in);
    out.cycles = options.cycles;
    const auto settings =
        sample_settings(options.mode, options.settings, sub_seed(ctx.seed, psi_in, options.cycles, -3));
    for (const auto& s : settings) {
        ExperimentSpec spec;
        spec.kind = bell ? ExperimentKind::BellTomography : ExperimentKind::Tomography;
        spec.psi_in = bell ? "0000" : psi_in;
        spec.cycles = options.cycles;
        spec.readout = s.bases;
        spec.setting_id = s.id;
        auto batch = run_shots(make_program(spec, ctx), options.shots_per_setting,
                               sub_seed(ctx.seed, psi_in, options.cycles, s.id), ctx.engine);
        auto sel = postselect(batch, PostselectRule::AllSPlusOne);
        out.acceptance.hits += sel.acceptance.hits;
        out.acceptance.total += sel.acceptance.total;
        out.data.entries.push_back(shadow_entry(batch, sel.accepted, s.id));
    }
    const double factor = (bell || options.cycles == 0) ? 1.0 : 2.0;
    out.p_s = std::min(1.0, factor * out.acceptance.value());
    // A fixed exhaustive setting list carries no setting-sampling noise.
    ShadowOptions shadow = options.shadow;
    shadow.scheme = options.mode == SettingMode::Exhaustive81 ? BootstrapScheme::Outcomes : BootstrapScheme::Settings;
    out.density = estimate_density(out.data, shadow);
    out.p_l = logical_population_estimate(out.data, shadow);
    out.f_l = logical_fidelity_estimate(out.data, out.target.logical, shadow);
    out.p2_l = logical_purity_estimate(out.data, shadow);
    out.p2_phy = purity_estimate(out.data, shadow);
    return out;
}

BellResult run_bell(int max_cycles, const ShotsPolicy& shots, const std::vector<int>& tomography_cycles,
                    const TomographyOptions& tomography, const RunContext& ctx) {
    BellResult out;
    std::vector<AcceptancePoint> eta;
    std::vector<DecayPoint> zz;
    const std::string input(kBellInput);
    for (int n = 1; n <= max_cycles; ++n) {
        ExperimentSpec spec;
        spec.kind = ExperimentKind::BellLifetime;
        spec.cycles = n;
        auto batch = run_shots(make_program(spec, ctx), shots.at(n), sub_seed(ctx.seed, input, n), ctx.engine);
        auto sel = postselect(batch, PostselectRule::WithFinalSubspace);
        BellPoint pt;
        pt.cycles = n;
        pt.eta = sel.acceptance;
        pt.probs = bell_probs(batch, sel.accepted);
        Proportion phi;
        phi.total = pt.probs.count;
        phi.hits = static_cast<std::size_t>(std::llround(pt.probs.p_phi * static_cast<double>(pt.probs.count)));
        pt.zz = pm_from_proportion(phi);
        eta.push_back({n, pt.eta});
        zz.push_back({n, pt.zz.mean, pt.eta.value()});
        out.points.push_back(pt);
    }
    if (max_cycles >= 2) {
        out.acceptance = acceptance_fit(eta, true);
    } else {
        out.acceptance.points = eta;
        out.acceptance.deterministic_encoding = true;
    }
    out.zz_fit = try_fit(zz, ctx.device.t_cycle_us);
    std::vector<DecayPoint> fid;
    for (int n : tomography_cycles) {
        TomographyOptions opt = tomography;
        opt.cycles = n;
        out.tomography.push_back(run_tomography(input, opt, ctx));
        const auto& t = out.tomography.back();
        fid.push_back({n, t.f_l.value, t.acceptance.value()});
    }
    out.fidelity_fit = try_fit(fid, ctx.device.t_cycle_us);
    return out;
}

DetectorGrid run_detectors(const std::string& psi_in, int max_cycles, const ShotsPolicy& shots,
                           const RunContext& ctx) {
    DetectorGrid grid;
    grid.psi_in = psi_in;
    const bool bell = is_bell(psi_in);
    for (int n = 1; n <= max_cycles; ++n) {
        ExperimentSpec spec;
        spec.kind = bell ? ExperimentKind::BellLifetime : ExperimentKind::Lifetime;
        spec.psi_in = bell ? "0000" : psi_in;
        spec.cycles = n;
        auto batch = run_shots(make_program(spec, ctx), shots.at(n), sub_seed(ctx.seed, psi_in, n), ctx.engine);
        grid.rows.push_back(detection_fractions(batch, ctx.sigma));
    }
    return grid;
}

namespace {

BudgetRow budget_row(const std::string& removed, const std::string& psi_in, const EncodedTarget& target,
                     int max_cycles, const ShotsPolicy& shots, const RunContext& ctx) {
    BudgetRow row;
    row.removed = removed;
    std::vector<AcceptancePoint> eta;
    std::vector<DecayPoint> correct;
    for (int n = 1; n <= max_cycles; ++n) {
        ExperimentSpec spec;
        spec.kind = ExperimentKind::Lifetime;
        spec.psi_in = psi_in;
        spec.cycles = n;
        auto batch = run_shots(make_program(spec, ctx), shots.at(n), sub_seed(ctx.seed, psi_in, n), ctx.engine);
        auto sel = postselect(batch, PostselectRule::WithFinalSubspace);
        eta.push_back({n, sel.acceptance});
        correct.push_back(
            {n, logical_state_probability(batch, sel.accepted, target.eigenvalues).value(), sel.acceptance.value()});
    }
    row.acceptance = acceptance_fit(eta, false);
    row.rejection_rate = 1.0 - row.acceptance.p_s;
    row.logical = fit_decay(correct, ctx.device.t_cycle_us);
    row.epsilon = row.logical.epsilon;
    return row;
}

}  // namespace

BudgetResult run_error_budget(const std::string& psi_in, int max_cycles, const ShotsPolicy& shots,
                              const RunContext& ctx, bool include_all_removed) {
    if (max_cycles < 3) {
        throw std::invalid_argument("run_error_budget: need at least three cycle counts");
    }
    if (!ctx.noisy) {
        throw std::invalid_argument("run_error_budget: needs a noisy context");
    }
    BudgetResult out;
    out.psi_in = psi_in;
    const EncodedTarget target = encoded_target(psi_in);
    out.rows.push_back(budget_row("none", psi_in, target, max_cycles, shots, ctx));
    for (ErrorClass c : kErrorClasses) {
        RunContext ablated = ctx;
        ablated.noise.enabled.erase(c);
        out.rows.push_back(budget_row(error_class_name(c), psi_in, target, max_cycles, shots, ablated));
    }
    const BudgetRow& full = out.rows.front();
    for (auto& r : out.rows) {
        r.rejection_contribution = full.rejection_rate - r.rejection_rate;
        r.epsilon_contribution = full.epsilon - r.epsilon;
    }
    if (include_all_removed) {
        RunContext none = ctx;
        none.noise.enabled.clear();
        BudgetRow r = budget_row("all", psi_in, target, max_cycles, shots, none);
        r.rejection_contribution = full.rejection_rate - r.rejection_rate;
        r.epsilon_contribution = full.epsilon - r.epsilon;
        out.all_removed = r;
    }
    return out;
}

}  // namespace starqed
