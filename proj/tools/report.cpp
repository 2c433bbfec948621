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

#include "report.h"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "starqed/code422.h"

namespace starqed::report {

namespace {

class Csv {
   public:
    explicit Csv(const std::string& header) { out_ << header << "\n"; }

    Csv& operator<<(const std::string& s) { return sep() << s, *this; }
    Csv& operator<<(const char* s) { return sep() << s, *this; }
    Csv& operator<<(double v) {
        auto& o = sep();
        if (std::isinf(v)) {
            o << (v > 0 ? "inf" : "-inf");
        } else if (std::isnan(v)) {
            o << "nan";
        } else {
            o << std::setprecision(8) << v;
        }
        return *this;
    }
    Csv& operator<<(std::size_t v) { return sep() << v, *this; }
    Csv& operator<<(int v) { return sep() << v, *this; }
    void end() {
        out_ << "\n";
        first_ = true;
    }
    std::string str() const { return out_.str(); }

   private:
    std::ostringstream& sep() {
        if (!first_) out_ << ",";
        first_ = false;
        return out_;
    }
    std::ostringstream out_;
    bool first_ = true;
};

std::string basis_name(Basis b) { return std::string(1, basis_char(b)); }

void fit_cells(Csv& c, const std::optional<FitResult>& f) {
    if (f) {
        c << f->tau_us << f->tau_error_us << 100.0 * f->epsilon << 100.0 * f->epsilon_error;
    } else {
        c << "nan" << "nan" << "nan" << "nan";
    }
}

}  // namespace

std::string stabilizer_tomo_csv(const std::vector<StabilizerTomoResult>& results) {
    Csv c("stabilizer,psi_in,s_ideal,s_mean,s_err,shots");
    for (const auto& r : results) {
        for (const auto& row : r.rows) {
            c << basis_name(r.stabilizer) << row.psi_in << row.s_ideal << row.s.mean << row.s.error << row.s.count;
            c.end();
        }
    }
    return c.str();
}

std::string stabilizer_fidelity_csv(const std::vector<StabilizerTomoResult>& results) {
    Csv c("stabilizer,fidelity_pct");
    for (const auto& r : results) {
        c << basis_name(r.stabilizer) << 100.0 * r.fidelity;
        c.end();
    }
    return c.str();
}

std::string lifetime_series_csv(const std::vector<LifetimeResult>& results) {
    Csv c("psi_in,target,basis,N,shots,eta,eta_err,eta_stab,L1,L1_err,L2,L2_err,p_correct,p_correct_err");
    for (const auto& r : results) {
        for (const auto& p : r.points) {
            c << r.psi_in << r.target.label << basis_name(r.target.basis) << p.cycles << p.eta.total << p.eta.value()
              << p.eta.error() << p.eta_stab.value() << p.l1.mean << p.l1.error << p.l2.mean << p.l2.error
              << p.correct.value() << p.correct.error();
            c.end();
        }
    }
    return c.str();
}

std::string lifetime_table_csv(const std::vector<LifetimeResult>& results) {
    Csv c("psi_in,target,target_operator_order,basis,tau1_us,tau1_err_us,eps1_pct,eps1_err_pct,tau2_us,tau2_err_us,"
          "eps2_pct,eps2_err_pct,P_S,P_S_err,P_L,P_L_err,eta_log_r2");
    for (const auto& r : results) {
        c << r.psi_in << r.target.label << operator_order_label(r.target.label) << basis_name(r.target.basis);
        fit_cells(c, r.fits[0]);
        fit_cells(c, r.fits[1]);
        c << r.acceptance.p_s << r.acceptance.p_s_error << r.acceptance.p_l << r.acceptance.p_l_error
          << r.acceptance.r2;
        c.end();
    }
    return c.str();
}

std::string tomography_csv(const std::vector<TomographyResult>& results) {
    Csv c("psi_in,psi_target,N,F_L,F_L_err,p2_L,p2_L_err,p2_phy,p2_phy_err,P_L,P_L_err,P_S,settings_used,"
          "settings_dropped");
    for (const auto& r : results) {
        c << r.psi_in << r.target.label << r.cycles << r.f_l.value << r.f_l.error << r.p2_l.value << r.p2_l.error
          << r.p2_phy.value << r.p2_phy.error << r.p_l.value << r.p_l.error << r.p_s << r.density.settings_used
          << r.density.settings_dropped;
        c.end();
    }
    return c.str();
}

std::string bell_series_csv(const BellResult& result) {
    Csv c("N,shots,eta,eta_err,p00,p01,p10,p11,p_phi,p_phi_err,zz,zz_err");
    for (const auto& p : result.points) {
        c << p.cycles << p.eta.total << p.eta.value() << p.eta.error();
        for (double v : p.probs.p) c << v;
        c << p.probs.p_phi << p.probs.p_phi_error << p.zz.mean << p.zz.error;
        c.end();
    }
    return c.str();
}

std::string bell_tomography_csv(const BellResult& result) { return tomography_csv(result.tomography); }

std::string bell_fit_csv(const BellResult& result) {
    Csv c("quantity,tau_us,tau_err_us,eps_pct,eps_err_pct");
    c << "P_S" << "nan" << "nan" << 100.0 * (1.0 - result.acceptance.p_s) << 100.0 * result.acceptance.p_s_error;
    c.end();
    c << "zz";
    fit_cells(c, result.zz_fit);
    c.end();
    c << "F_L";
    fit_cells(c, result.fidelity_fit);
    c.end();
    return c.str();
}

std::string budget_csv(const BudgetResult& result) {
    Csv c("removed,P_S,P_L,rejection_rate_pct,epsilon_pct,rejection_contribution_pct,epsilon_contribution_pct");
    auto row = [&](const BudgetRow& r) {
        c << r.removed << r.acceptance.p_s << r.acceptance.p_l << 100.0 * r.rejection_rate << 100.0 * r.epsilon
          << 100.0 * r.rejection_contribution << 100.0 * r.epsilon_contribution;
        c.end();
    };
    for (const auto& r : result.rows) row(r);
    if (result.all_removed) row(*result.all_removed);
    return c.str();
}

std::string detectors_csv(const std::vector<DetectorGrid>& grids) {
    Csv c("psi_in,N,n,sigma_x,sigma_z,shots");
    for (const auto& g : grids) {
        for (const auto& row : g.rows) {
            for (std::size_t n = 0; n < row.sigma_x.size(); ++n) {
                c << g.psi_in << row.cycles << static_cast<int>(n + 1) << row.sigma_x[n] << row.sigma_z[n] << row.shots;
                c.end();
            }
        }
    }
    return c.str();
}

}  // namespace starqed::report
