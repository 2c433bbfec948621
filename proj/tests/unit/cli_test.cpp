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

#ifdef STARQED_HAVE_REPORT

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.h"
#include "report.h"

namespace starqed {
namespace {

namespace fs = std::filesystem;

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::string read_file(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("starqed_cli_" + name);
    fs::remove_all(d);
    return d;
}

TEST(Report, GoldenHeaders) {
    EXPECT_EQ(first_line(report::stabilizer_tomo_csv({})), "stabilizer,psi_in,s_ideal,s_mean,s_err,shots");
    EXPECT_EQ(first_line(report::stabilizer_fidelity_csv({})), "stabilizer,fidelity_pct");
    EXPECT_EQ(first_line(report::lifetime_series_csv({})),
              "psi_in,target,basis,N,shots,eta,eta_err,eta_stab,L1,L1_err,L2,L2_err,p_correct,p_correct_err");
    EXPECT_EQ(first_line(report::lifetime_table_csv({})),
              "psi_in,target,target_operator_order,basis,tau1_us,tau1_err_us,eps1_pct,eps1_err_pct,tau2_us,"
              "tau2_err_us,eps2_pct,eps2_err_pct,P_S,P_S_err,P_L,P_L_err,eta_log_r2");
    EXPECT_EQ(first_line(report::tomography_csv({})),
              "psi_in,psi_target,N,F_L,F_L_err,p2_L,p2_L_err,p2_phy,p2_phy_err,P_L,P_L_err,P_S,settings_used,"
              "settings_dropped");
    BellResult bell;
    EXPECT_EQ(first_line(report::bell_series_csv(bell)), "N,shots,eta,eta_err,p00,p01,p10,p11,p_phi,p_phi_err,zz,zz_err");
    EXPECT_EQ(first_line(report::bell_fit_csv(bell)), "quantity,tau_us,tau_err_us,eps_pct,eps_err_pct");
    EXPECT_EQ(first_line(report::budget_csv({})),
              "removed,P_S,P_L,rejection_rate_pct,epsilon_pct,rejection_contribution_pct,epsilon_contribution_pct");
    EXPECT_EQ(first_line(report::detectors_csv({})), "psi_in,N,n,sigma_x,sigma_z,shots");
}

TEST(Report, DetectorRowsPerCycle) {
    DetectorGrid g;
    g.psi_in = "0000";
    g.rows.push_back({1, {0.5}, {0.1}, 10});
    g.rows.push_back({2, {0.5, 0.2}, {0.1, 0.3}, 10});
    const std::string csv = report::detectors_csv({g});
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
    EXPECT_NE(csv.find("0000,2,2,0.2,0.3,10"), std::string::npos);
}

TEST(Cli, DefaultDevices) {
    EXPECT_EQ(cli::default_device("lifetime"), "A");
    EXPECT_EQ(cli::default_device("budget"), "A");
    EXPECT_EQ(cli::default_device("detectors"), "A");
    EXPECT_EQ(cli::default_device("tomography"), "B");
    EXPECT_EQ(cli::default_device("bell"), "B");
    EXPECT_EQ(cli::default_device("stabilizer-tomo"), "B");
}

TEST(Cli, ContextValidation) {
    cli::CliConfig c;
    c.command = "lifetime";
    EXPECT_EQ(cli::make_context(c).device.name, device_preset("A").name);
    auto bad = c;
    bad.shots = 0;
    EXPECT_THROW(cli::make_context(bad), std::invalid_argument);
    bad = c;
    bad.threads = 0;
    EXPECT_THROW(cli::make_context(bad), std::invalid_argument);
    bad = c;
    bad.inputs = {"01x0"};
    EXPECT_THROW(cli::make_context(bad), std::invalid_argument);
    bad = c;
    bad.device = "no_such_device";
    EXPECT_ANY_THROW(cli::make_context(bad));
    auto echo = c;
    echo.t2 = "echo";
    echo.noiseless = true;
    const auto ctx = cli::make_context(echo);
    EXPECT_TRUE(ctx.noise.t2_echo);
    EXPECT_FALSE(ctx.noisy);
}

TEST(Cli, ManifestDigestTracksConfig) {
    cli::CliConfig c;
    c.command = "lifetime";
    const auto ctx = cli::make_context(c);
    const auto a = nlohmann::json::parse(cli::manifest_json(c, ctx, {"x.csv"}));
    EXPECT_EQ(a["seed"], 1);
    EXPECT_EQ(a["tool"], "starqed");
    EXPECT_EQ(a["files"][0], "x.csv");
    c.seed = 2;
    const auto b = nlohmann::json::parse(cli::manifest_json(c, ctx, {}));
    EXPECT_NE(a["config_digest"], b["config_digest"]);
}

TEST(Cli, StabilizerTomoWritesFiles) {
    cli::CliConfig c;
    c.command = "stabilizer-tomo";
    c.shots = 100;
    c.noiseless = true;
    c.out = scratch_dir("stab").string();
    ASSERT_EQ(cli::cmd_stabilizer_tomo(c), 0);
    const fs::path out(c.out);
    ASSERT_TRUE(fs::exists(out / "manifest.json"));
    const std::string fid = read_file(out / "stabilizer_fidelity.csv");
    EXPECT_NE(fid.find("X,100"), std::string::npos);
    EXPECT_NE(fid.find("Z,100"), std::string::npos);
    const auto m = nlohmann::json::parse(read_file(out / "manifest.json"));
    EXPECT_EQ(m["files"].size(), 3u);
    fs::remove_all(out);
}

TEST(Cli, LifetimeIsReproducible) {
    cli::CliConfig c;
    c.command = "lifetime";
    c.shots = 500;
    c.cycles = 3;
    c.inputs = {"0000"};
    c.out = scratch_dir("life1").string();
    ASSERT_EQ(cli::cmd_lifetime(c), 0);
    auto c2 = c;
    c2.out = scratch_dir("life2").string();
    c2.threads = 3;
    ASSERT_EQ(cli::cmd_lifetime(c2), 0);
    EXPECT_EQ(read_file(fs::path(c.out) / "lifetime_series.csv"), read_file(fs::path(c2.out) / "lifetime_series.csv"));
    fs::remove_all(c.out);
    fs::remove_all(c2.out);
}

}  // namespace
}  // namespace starqed

#endif  // STARQED_HAVE_REPORT
