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


// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Set STARQED_ACCEPTANCE_THREADS to use more workers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "random_programs.h"
#include "starqed/channels.h"
#include "starqed/code422.h"
#include "starqed/dense.h"
#include "starqed/pipelines.h"

namespace {

using namespace starqed;
using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) ok = false;
        if (!detail.empty()) detail += "; ";
        detail += what + (cond ? "" : " [x]");
    }
};

std::string fmt(const char* f, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::size_t threads() {
    const char* env = std::getenv("STARQED_ACCEPTANCE_THREADS");
    return env ? std::max<std::size_t>(1, std::strtoul(env, nullptr, 10)) : 1;
}

RunContext context(const char* device, bool noisy) {
    RunContext ctx;
    ctx.device = device_preset(device);
    ctx.noisy = noisy;
    ctx.engine.threads = threads();
    return ctx;
}

CMatrix density_of(const StateVector& s) { return s.amplitudes() * s.amplitudes().adjoint(); }

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Check noiseless_invariants() {
    Check c;
    const auto t0 = Clock::now();
    const RunContext ctx = context("B", false);

    ExperimentSpec spec;
    spec.psi_in = "0000";
    const auto b = run_shots(make_program(spec, ctx), 10000, 11, ctx.engine);
    const double eta1 = postselect(b, PostselectRule::WithFinalSubspace).acceptance.value();
    c.require(std::abs(eta1 - 0.5) <= 0.015, fmt("eta_1 %.4f", eta1));

    bool bell_exact = true;
    for (int n = 1; n <= 5; ++n) {
        ExperimentSpec bs;
        bs.kind = ExperimentKind::BellLifetime;
        bs.cycles = n;
        const auto bb = run_shots(make_program(bs, ctx), 2000, 12 + n, ctx.engine);
        bell_exact &= postselect(bb, PostselectRule::WithFinalSubspace).acceptance.value() == 1.0;
    }
    c.require(bell_exact, "Bell eta_N = 1 for N = 1..5");

    bool logical_exact = true;
    for (const auto& in : lifetime_inputs()) {
        const auto target = encoded_target(in);
        for (int n = 1; n <= 3; ++n) {
            ExperimentSpec ls;
            ls.psi_in = in;
            ls.cycles = n;
            const auto lb = run_shots(make_program(ls, ctx), 1000, 20 + n, ctx.engine);
            const auto acc = postselect(lb, PostselectRule::WithFinalSubspace).accepted;
            logical_exact &= logical_expectation(lb, acc, 1).mean == target.eigenvalues[0] &&
                             logical_expectation(lb, acc, 2).mean == target.eigenvalues[1];
        }
    }
    c.require(logical_exact, "logical expectations exact for 8 inputs");

    TomographyOptions opt;
    opt.shots_per_setting = 200;
    opt.shadow.bootstrap = 200;
    const auto t = run_tomography("0000", opt, ctx);
    c.require(std::abs(t.f_l.value - 1.0) <= 3 * t.f_l.error,
              fmt("F_L %.4f", t.f_l.value) + fmt(" +- %.4f", t.f_l.error));
    const double dt = seconds_since(t0);
    c.require(dt < 5.0, fmt("%.1f s", dt));
    return c;
}

Check oracle_equivalence() {
    Check c;
    const auto t0 = Clock::now();
    EngineOptions eo;
    eo.backend = Backend::Tableau;
    eo.threads = threads();
    testing::RandomProgramOptions ro;
    ro.max_elements = 4;
    double worst = 0;
    for (uint64_t s = 0; s < 50; ++s) {
        const auto p = testing::random_program(1000 + s, ro);
        const auto exact = exact_distribution(p);
        const auto batch = run_shots(p, 100000, s, eo);
        worst = std::max(worst, total_variation_distance(exact, testing::empirical_distribution(batch)));
    }
    c.require(worst < 0.02, fmt("50 programs, worst TVD %.4f", worst));
    const double dt = seconds_since(t0);
    c.require(dt < 60.0, fmt("%.1f s", dt));
    return c;
}

std::size_t element(const DeviceModel& d, const std::string& name) {
    for (std::size_t k = 0; k < d.elements.size(); ++k) {
        if (d.elements[k].name == name) return k;
    }
    return d.elements.size();
}

Check closed_forms() {
    Check c;
    const DeviceModel a = device_preset("A");
    const double p = channel_params(a).p_sqg[element(a, "QB1")];
    c.require(std::abs(p - 0.0014) < 1e-9, fmt("p_SQG(QB1) %.10f", p));
    const auto eq = idling_channel(20000.0, 20.0, 20.0);
    bool equal = true;
    for (double v : eq) equal &= std::abs(v - 0.15803013970713942) < 1e-9;
    c.require(equal, fmt("T_idl = T1 = T2: px %.11f", eq[0]));
    const auto lim = idling_channel(500.0, 30.0, 60.0);
    c.require(std::abs(lim[2]) < 1e-9, fmt("T2 = 2 T1: pz %.2e", lim[2]));
    return c;
}

Check repeated_detection() {
    Check c;
    const auto t0 = Clock::now();
    const RunContext ctx = context("A", true);
    std::vector<LifetimeResult> rs;
    for (const auto& in : lifetime_inputs()) rs.push_back(run_lifetime(in, 20, ShotsPolicy{100000, false}, ctx));

    double ps_lo = 1, ps_hi = 0, pl_lo = 10, pl_hi = 0, r2_lo = 1;
    double eps_max = 0, tau_min = 1e300;
    bool fitted = true;
    for (const auto& r : rs) {
        ps_lo = std::min(ps_lo, r.acceptance.p_s);
        ps_hi = std::max(ps_hi, r.acceptance.p_s);
        pl_lo = std::min(pl_lo, r.acceptance.p_l);
        pl_hi = std::max(pl_hi, r.acceptance.p_l);
        r2_lo = std::min(r2_lo, r.acceptance.r2);
        for (const auto& f : r.fits) {
            if (!f) {
                fitted = false;
                continue;
            }
            eps_max = std::max(eps_max, f->epsilon);
            tau_min = std::min(tau_min, f->tau_us);
        }
    }
    c.require(ps_lo >= 0.60 && ps_hi <= 0.75, fmt("P_S [%.3f", ps_lo) + fmt(", %.3f]", ps_hi));
    c.require(pl_lo >= 0.80 && pl_hi <= 0.92, fmt("P_L [%.3f", pl_lo) + fmt(", %.3f]", pl_hi));
    c.require(r2_lo > 0.99, fmt("min R2 %.5f", r2_lo));
    const auto& zero = rs.front();
    bool in_band = true;
    std::string eps00;
    for (const auto& f : zero.fits) {
        const double e = f ? 100 * f->epsilon : NAN;
        in_band &= f && e >= 0.3 && e <= 0.9;
        eps00 += fmt(eps00.empty() ? "%.3f" : "/%.3f", e);
    }
    c.require(in_band, "|00>_L eps " + eps00 + " %");
    c.require(fitted && eps_max < 0.015, fmt("max eps %.3f %%", 100 * eps_max));
    c.require(fitted && tau_min > 80, fmt("min tau %.0f us", tau_min));
    const double dt = seconds_since(t0);
    c.require(dt < 120.0, fmt("%.1f s", dt));
    return c;
}

Check shadow_estimators() {
    Check c;
    const auto t0 = Clock::now();
    ShadowOptions fixed;
    fixed.bootstrap = 200;
    fixed.scheme = BootstrapScheme::Outcomes;
    const auto exhaustive = sample_settings(SettingMode::Exhaustive81, 0, 1);

    const auto data = sample_dataset(density_of(codeword("00")), exhaustive, 200, 5);
    CVector target = CVector::Zero(4);
    target(0) = 1.0;
    const auto f = logical_fidelity_estimate(data, target, fixed);
    c.require(std::abs(f.value - 1.0) <= 3 * f.error, fmt("F_L %.4f", f.value) + fmt(" +- %.4f", f.error));
    const auto p2 = logical_purity_estimate(data, fixed);
    c.require(std::abs(p2.value - 1.0) <= 0.05, fmt("p2_L %.4f", p2.value));

    // Mixed logical state 0.7 |00><00| + 0.3 |11><11|: purity 0.58.
    const CMatrix mixed = 0.7 * density_of(codeword("00")) + 0.3 * density_of(codeword("11"));
    const double oracle = (mixed * mixed).trace().real();
    const auto md = sample_dataset(mixed, exhaustive, 200, 6);
    const double pm = purity_estimate(md, fixed).value;
    c.require(std::abs(pm - oracle) <= 0.05, fmt("mixed purity %.4f", pm) + fmt(" vs %.4f", oracle));

    const RunContext ctx = context("B", true);
    TomographyOptions opt;
    opt.shadow.bootstrap = 200;
    double worst = 1;
    for (const auto& in : tomography_inputs()) worst = std::min(worst, run_tomography(in, opt, ctx).f_l.value);
    c.require(worst >= 0.95, fmt("config B min F_L %.4f", worst));
    const double dt = seconds_since(t0);
    c.require(dt < 120.0, fmt("%.1f s", dt));
    return c;
}

Check stabilizer_tomography() {
    Check c;
    bool exact = true;
    for (Basis b : {Basis::X, Basis::Z}) {
        const auto r = run_stabilizer_tomography(b, 2000, context("B", false));
        for (const auto& row : r.rows) exact &= row.s.mean == row.s_ideal;
    }
    c.require(exact, "noiseless s = +-1");
    for (Basis b : {Basis::X, Basis::Z}) {
        const auto r = run_stabilizer_tomography(b, 20000, context("B", true));
        c.require(r.fidelity >= 0.85 && r.fidelity <= 0.95,
                  std::string("S_") + basis_char(b) + fmt(" %.2f %%", 100 * r.fidelity));
    }
    return c;
}

Check error_budget() {
    Check c;
    const auto t0 = Clock::now();
    const auto r = run_error_budget("0000", 20, ShotsPolicy{10000, false}, context("A", true));
    std::vector<const BudgetRow*> rows;
    for (const auto& row : r.rows) {
        if (row.removed != "none") rows.push_back(&row);
    }
    std::sort(rows.begin(), rows.end(),
              [](const BudgetRow* a, const BudgetRow* b) { return a->epsilon_contribution > b->epsilon_contribution; });
    const std::string top = rows[0]->removed + "," + rows[1]->removed;
    c.require(top == "CZ,idling" || top == "idling,CZ", "top eps contributors " + top);
    double rej = 0, eps = 0;
    const BudgetRow* ro = nullptr;
    for (const auto* row : rows) {
        rej += std::max(0.0, row->rejection_contribution);
        eps += std::max(0.0, row->epsilon_contribution);
        if (row->removed == "readout") ro = row;
    }
    const double rej_share = ro && rej > 0 ? std::max(0.0, ro->rejection_contribution) / rej : 0;
    const double eps_share = ro && eps > 0 ? std::max(0.0, ro->epsilon_contribution) / eps : 0;
    c.require(rej_share > eps_share, fmt("readout share rejection %.3f", rej_share) + fmt(" vs eps %.3f", eps_share));
    const double dt = seconds_since(t0);
    c.require(dt < 300.0, fmt("%.1f s", dt));
    return c;
}

Check detector_statistics() {
    Check c;
    const ShotsPolicy shots{100000, false};
    const auto product = run_detectors("0000", 1, shots, context("B", true));
    const double sx = product.rows[0].sigma_x[0];
    c.require(std::abs(sx - 0.5) <= 0.02, fmt("product sigma_x(1) %.4f", sx));
    const auto plus = run_detectors("++++", 1, shots, context("B", true));
    const double sz = plus.rows[0].sigma_z[0];
    c.require(std::abs(sz - 0.5) <= 0.02, fmt("product sigma_z(1) %.4f", sz));

    const auto ideal = run_detectors("bell", 1, shots, context("B", false));
    const double bi = std::max(ideal.rows[0].sigma_x[0], ideal.rows[0].sigma_z[0]);
    c.require(bi < 0.05, fmt("Bell noiseless %.4f", bi));
    const auto noisy = run_detectors("bell", 1, shots, context("B", true));
    const double bx = noisy.rows[0].sigma_x[0], bz = noisy.rows[0].sigma_z[0];
    c.require(bx < 0.15 && bz < 0.15, fmt("Bell noisy sigma_x %.4f", bx) + fmt(" sigma_z %.4f", bz));
    return c;
}

Check determinism_and_speed() {
    Check c;
    const DeviceModel a = device_preset("A");
    ExperimentSpec spec;
    spec.cycles = 20;
    const auto program = compile_noise(build_experiment(spec, a), a);
    EngineOptions one, many;
    many.threads = 4;
    const auto b1 = run_shots(program, 20000, 77, one).serialize();
    const auto b4 = run_shots(program, 20000, 77, many).serialize();
    c.require(b1 == b4, "1 vs 4 threads identical bytes");

    const std::size_t shots = 200000;
    const auto t0 = Clock::now();
    const auto b = run_shots(program, shots, 5, one);
    const double rate = static_cast<double>(b.shots()) / seconds_since(t0);
    c.require(rate >= 1e5, fmt("%.3g shots/s single thread", rate));
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
        {"noiseless protocol invariants", noiseless_invariants},
        {"oracle equivalence", oracle_equivalence},
        {"noise channel closed forms", closed_forms},
        {"repeated detection config A", repeated_detection},
        {"shadow estimators", shadow_estimators},
        {"stabilizer tomography config B", stabilizer_tomography},
        {"error budget config A", error_budget},
        {"detector statistics", detector_statistics},
        {"determinism and performance", determinism_and_speed},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, fn] : criteria) {
        ++index;
        Check c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        failed += c.ok ? 0 : 1;
        std::printf("%s %d %s: %s\n", c.ok ? "PASS" : "FAIL", index, name, c.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
