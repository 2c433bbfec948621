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

#include "starqed/shadows.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "starqed/code422.h"
#include "starqed/rng.h"

namespace starqed {

namespace {

constexpr std::size_t kDim = 16;

// Observed outcomes of one setting with the shadow of each outcome, so any
// reweighting of outcomes or settings is a linear combination.
struct SettingTerms {
    std::vector<double> frac;    // observed fraction per outcome
    std::vector<CMatrix> phys;   // 16 x 16 shadow per outcome
    std::vector<CMatrix> block;  // its 4 x 4 logical block
    std::vector<double> pop;     // block trace per outcome
    std::size_t count = 0;
};

struct Cached {
    std::vector<SettingTerms> s;
    std::size_t dropped = 0;
};

// Setting multiplicities and per-setting outcome fractions. The plain
// estimate uses w = 1 and the observed fractions.
struct Replicate {
    std::vector<double> w;
    std::vector<std::vector<double>> q;
};

CMatrix outcome_shadow(const TomographySetting& setting, std::size_t d);

Cached cache(const ShadowDataset& data) {
    static const CMatrix v = logical_basis_projectors();
    Cached c;
    for (const auto& e : data.entries) {
        if (e.outcomes.empty()) {
            ++c.dropped;
            continue;
        }
        std::array<std::size_t, kDim> hist{};
        for (uint8_t d : e.outcomes) {
            ++hist[d & 0xF];
        }
        SettingTerms t;
        t.count = e.outcomes.size();
        for (std::size_t d = 0; d < kDim; ++d) {
            if (hist[d] == 0) continue;
            CMatrix a = outcome_shadow(e.setting, d);
            CMatrix blk = v.adjoint() * a * v;
            t.frac.push_back(static_cast<double>(hist[d]) / static_cast<double>(t.count));
            t.pop.push_back(blk.trace().real());
            t.phys.push_back(std::move(a));
            t.block.push_back(std::move(blk));
        }
        c.s.push_back(std::move(t));
    }
    return c;
}

Replicate plain(const Cached& c) {
    Replicate r;
    r.w.assign(c.s.size(), 1.0);
    for (const auto& t : c.s) {
        r.q.push_back(t.frac);
    }
    return r;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

// Sum_r w_r f_r / Sum_r w_r, with f_r = Sum_d q_rd x_rd.
double setting_mean(const Replicate& rep, const std::vector<std::vector<double>>& x) {
    double s = 0, sw = 0;
    for (std::size_t r = 0; r < x.size(); ++r) {
        if (rep.w[r] == 0) continue;
        s += rep.w[r] * dot(rep.q[r], x[r]);
        sw += rep.w[r];
    }
    return s / sw;
}

std::vector<std::vector<double>> populations(const Cached& c) {
    std::vector<std::vector<double>> x;
    for (const auto& t : c.s) {
        x.push_back(t.pop);
    }
    return x;
}

// Re Tr(A B) for Hermitian A, B.
double trace_product(const CMatrix& a, const CMatrix& b) { return (a.array() * b.transpose().array()).sum().real(); }

// U-statistic of Tr(A_i A_j) over distinct draws, A_r = Sum_d q_rd M_rd.
// Estimate of Tr(rho^2). Random settings pair distinct settings. A fixed
// list pairs distinct shots instead: same-setting pairs then enter through
// a within-setting U-statistic, which keeps the estimate unbiased because
// the list averages exactly to the uniform measurement channel.
double pair_statistic(const Cached& c, bool logical, const Replicate& rep, bool fixed_design) {
    const long dim = logical ? 4 : static_cast<long>(kDim);
    CMatrix sum = CMatrix::Zero(dim, dim);
    double diag = 0, within = 0, n = 0;
    for (std::size_t r = 0; r < c.s.size(); ++r) {
        if (rep.w[r] == 0) continue;
        const auto& m = logical ? c.s[r].block : c.s[r].phys;
        CMatrix a = CMatrix::Zero(dim, dim);
        double self = 0;
        for (std::size_t d = 0; d < m.size(); ++d) {
            if (rep.q[r][d] == 0) continue;
            a += rep.q[r][d] * m[d];
            if (fixed_design) self += rep.q[r][d] * trace_product(m[d], m[d]);
        }
        sum += rep.w[r] * a;
        const double aa = trace_product(a, a);
        diag += rep.w[r] * aa;
        if (fixed_design) {
            const double k = static_cast<double>(c.s[r].count);
            within += rep.w[r] * (k > 1 ? (k * aa - self) / (k - 1) : aa);
        }
        n += rep.w[r];
    }
    if (fixed_design) {
        return (trace_product(sum, sum) - diag + within) / (n * n);
    }
    return (trace_product(sum, sum) - diag) / (n * (n - 1));
}

// Bootstrap standard deviation of `stat`.
double bootstrap(const Cached& c, const ShadowOptions& opt, const std::function<double(const Replicate&)>& stat) {
    const std::size_t n = c.s.size();
    if (opt.bootstrap < 2 || n < 2) {
        return 0.0;
    }
    CounterRng rng(stream_key(opt.bootstrap_seed, n, 7));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    Replicate rep = plain(c);
    double s = 0, s2 = 0;
    std::size_t used = 0;
    for (std::size_t b = 0; b < opt.bootstrap; ++b) {
        if (opt.scheme == BootstrapScheme::Settings) {
            std::fill(rep.w.begin(), rep.w.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                rep.w[pick(rng)] += 1.0;
            }
        } else {
            // Multinomial redraw of each setting's outcomes by sequential
            // binomials.
            for (std::size_t r = 0; r < n; ++r) {
                const auto& t = c.s[r];
                int left = static_cast<int>(t.count);
                double mass = 1.0;
                for (std::size_t d = 0; d < t.frac.size(); ++d) {
                    int k = left;
                    if (d + 1 < t.frac.size() && left > 0) {
                        double p = std::clamp(t.frac[d] / mass, 0.0, 1.0);
                        k = std::binomial_distribution<int>(left, p)(rng);
                    }
                    rep.q[r][d] = static_cast<double>(k) / static_cast<double>(t.count);
                    left -= k;
                    mass -= t.frac[d];
                }
            }
        }
        double v = stat(rep);
        if (std::isfinite(v)) {
            s += v;
            s2 += v * v;
            ++used;
        }
    }
    if (used < 2) {
        return 0.0;
    }
    double m = s / static_cast<double>(used);
    return std::sqrt(std::max(0.0, (s2 - static_cast<double>(used) * m * m) / static_cast<double>(used - 1)));
}

CMatrix rotation(Basis b) {
    switch (b) {
        case Basis::Z: return CMatrix::Identity(2, 2);
        case Basis::X: return gate_matrix(Gate::SQRT_Y_DAG);
        case Basis::Y: return gate_matrix(Gate::SQRT_X);
    }
    return CMatrix::Identity(2, 2);
}

// Kronecker product with bit k of the index belonging to factor k.
CMatrix tensor(const std::array<CMatrix, 4>& f) {
    CMatrix out(kDim, kDim);
    for (std::size_t i = 0; i < kDim; ++i) {
        for (std::size_t j = 0; j < kDim; ++j) {
            Complex v = 1.0;
            for (std::size_t k = 0; k < 4; ++k) {
                v *= f[k]((i >> k) & 1, (j >> k) & 1);
            }
            out(static_cast<long>(i), static_cast<long>(j)) = v;
        }
    }
    return out;
}

}  // namespace

std::string TomographySetting::label() const {
    std::string s;
    for (Basis b : bases) {
        s += basis_char(b);
    }
    return s;
}

std::vector<TomographySetting> sample_settings(SettingMode mode, std::size_t n_u, uint64_t seed) {
    constexpr std::array<Basis, 3> kBases{Basis::Z, Basis::X, Basis::Y};
    std::vector<TomographySetting> out;
    if (mode == SettingMode::Exhaustive81) {
        for (int r = 0; r < 81; ++r) {
            TomographySetting s;
            s.id = r;
            int v = r;
            for (int k = 3; k >= 0; --k) {
                s.bases[static_cast<std::size_t>(k)] = kBases[static_cast<std::size_t>(v % 3)];
                v /= 3;
            }
            out.push_back(s);
        }
        return out;
    }
    if (n_u < 2) {
        throw std::invalid_argument("sample_settings: need at least two settings");
    }
    CounterRng rng(stream_key(seed, 0, 3));
    std::uniform_int_distribution<int> pick(0, 2);
    for (std::size_t r = 0; r < n_u; ++r) {
        TomographySetting s;
        s.id = static_cast<int>(r);
        for (auto& b : s.bases) {
            b = kBases[static_cast<std::size_t>(pick(rng))];
        }
        out.push_back(s);
    }
    return out;
}

std::size_t ShadowDataset::usable_settings() const {
    std::size_t n = 0;
    for (const auto& e : entries) {
        n += e.outcomes.empty() ? 0 : 1;
    }
    return n;
}

CMatrix shadow_factor(Basis basis, bool outcome) {
    PauliString p(1);
    p.set(0, basis == Basis::Z ? Pauli::Z : basis == Basis::X ? Pauli::X : Pauli::Y);
    const double sign = outcome ? -1.0 : 1.0;
    return (CMatrix::Identity(2, 2) + 3.0 * sign * pauli_string_matrix(p)) / 2.0;
}

namespace {

CMatrix outcome_shadow(const TomographySetting& setting, std::size_t d) {
    std::array<CMatrix, 4> f;
    for (std::size_t k = 0; k < 4; ++k) {
        f[k] = shadow_factor(setting.bases[k], (d >> k) & 1);
    }
    return tensor(f);
}

}  // namespace

CMatrix shadow_from_setting(const TomographySetting& setting, std::span<const uint8_t> outcomes) {
    if (outcomes.empty()) {
        throw std::invalid_argument("shadow_from_setting: no outcomes");
    }
    std::array<std::size_t, kDim> hist{};
    for (uint8_t d : outcomes) {
        ++hist[d & 0xF];
    }
    CMatrix out = CMatrix::Zero(kDim, kDim);
    for (std::size_t d = 0; d < kDim; ++d) {
        if (hist[d] != 0) {
            out += static_cast<double>(hist[d]) * outcome_shadow(setting, d);
        }
    }
    return out / static_cast<double>(outcomes.size());
}

ShadowEntry shadow_entry(const ShotBatch& batch, std::span<const std::size_t> accepted, int setting_id) {
    ShadowEntry e;
    e.setting.id = setting_id;
    e.setting.bases = batch.readout().data_bases;
    e.raw_count = batch.shots();
    e.outcomes.reserve(accepted.size());
    for (std::size_t shot : accepted) {
        e.outcomes.push_back(static_cast<uint8_t>(batch.data_bits(shot)));
    }
    return e;
}

DensityEstimate estimate_density(const ShadowDataset& data, const ShadowOptions& options) {
    Cached c = cache(data);
    if (c.s.empty()) {
        throw std::runtime_error("estimate_density: no usable settings");
    }
    DensityEstimate e;
    e.settings_used = c.s.size();
    e.settings_dropped = c.dropped;
    e.physical = CMatrix::Zero(kDim, kDim);
    CMatrix block = CMatrix::Zero(4, 4);
    for (const auto& t : c.s) {
        for (std::size_t d = 0; d < t.frac.size(); ++d) {
            e.physical += t.frac[d] * t.phys[d];
            block += t.frac[d] * t.block[d];
        }
    }
    const double n = static_cast<double>(c.s.size());
    e.physical /= n;
    block /= n;
    e.p_l = block.trace().real();
    if (!(e.p_l > 0.0)) {
        throw std::runtime_error("estimate_density: logical population is not positive");
    }
    e.logical = block / e.p_l;
    e.p_l_error = logical_population_estimate(data, options).error;
    if (options.eigen_cleanup) {
        e.physical = eigen_cleanup(e.physical);
        e.logical = eigen_cleanup(e.logical);
    }
    return e;
}

ScalarEstimate fidelity_estimate(const ShadowDataset& data, const StateVector& target, const ShadowOptions& options) {
    if (target.size() != 4) {
        throw std::invalid_argument("fidelity_estimate: target must be a four-qubit state");
    }
    Cached c = cache(data);
    if (c.s.empty()) {
        throw std::runtime_error("fidelity_estimate: no usable settings");
    }
    const CVector& psi = target.amplitudes();
    std::vector<std::vector<double>> f;
    for (const auto& t : c.s) {
        auto& row = f.emplace_back();
        for (const auto& a : t.phys) {
            row.push_back(psi.dot(a * psi).real());
        }
    }
    auto stat = [&](const Replicate& rep) { return setting_mean(rep, f); };
    return {stat(plain(c)), bootstrap(c, options, stat)};
}

ScalarEstimate logical_fidelity_estimate(const ShadowDataset& data, const CVector& target_logical,
                                         const ShadowOptions& options) {
    if (target_logical.size() != 4) {
        throw std::invalid_argument("logical_fidelity_estimate: target must have four amplitudes");
    }
    Cached c = cache(data);
    if (c.s.empty()) {
        throw std::runtime_error("logical_fidelity_estimate: no usable settings");
    }
    const CVector psi = target_logical / target_logical.norm();
    std::vector<std::vector<double>> f;
    for (const auto& t : c.s) {
        auto& row = f.emplace_back();
        for (const auto& b : t.block) {
            row.push_back(psi.dot(b * psi).real());
        }
    }
    const auto pop = populations(c);
    auto stat = [&](const Replicate& rep) { return setting_mean(rep, f) / setting_mean(rep, pop); };
    if (!(setting_mean(plain(c), pop) > 0.0)) {
        throw std::runtime_error("logical_fidelity_estimate: logical population is not positive");
    }
    return {stat(plain(c)), bootstrap(c, options, stat)};
}

ScalarEstimate purity_estimate(const ShadowDataset& data, const ShadowOptions& options) {
    Cached c = cache(data);
    if (c.s.size() < 2) {
        throw std::invalid_argument("purity_estimate: need two usable settings");
    }
    const bool fixed = options.scheme == BootstrapScheme::Outcomes;
    auto stat = [&](const Replicate& rep) { return pair_statistic(c, false, rep, fixed); };
    return {stat(plain(c)), bootstrap(c, options, stat)};
}

ScalarEstimate logical_purity_estimate(const ShadowDataset& data, const ShadowOptions& options) {
    Cached c = cache(data);
    if (c.s.size() < 2) {
        throw std::invalid_argument("logical_purity_estimate: need two usable settings");
    }
    const bool fixed = options.scheme == BootstrapScheme::Outcomes;
    const auto pop = populations(c);
    auto stat = [&](const Replicate& rep) {
        double pl = setting_mean(rep, pop);
        return pair_statistic(c, true, rep, fixed) / (pl * pl);
    };
    return {stat(plain(c)), bootstrap(c, options, stat)};
}

ScalarEstimate logical_population_estimate(const ShadowDataset& data, const ShadowOptions& options) {
    Cached c = cache(data);
    if (c.s.empty()) {
        throw std::runtime_error("logical_population_estimate: no usable settings");
    }
    const auto pop = populations(c);
    auto stat = [&](const Replicate& rep) { return setting_mean(rep, pop); };
    return {stat(plain(c)), bootstrap(c, options, stat)};
}

ShadowDataset sample_dataset(const CMatrix& rho, std::span<const TomographySetting> settings, std::size_t n_m,
                             uint64_t seed) {
    if (rho.rows() != static_cast<long>(kDim) || rho.cols() != static_cast<long>(kDim)) {
        throw std::invalid_argument("sample_dataset: rho must be 16 x 16");
    }
    ShadowDataset data;
    for (std::size_t r = 0; r < settings.size(); ++r) {
        const auto& s = settings[r];
        std::array<CMatrix, 4> f;
        for (std::size_t k = 0; k < 4; ++k) {
            f[k] = rotation(s.bases[k]);
        }
        CMatrix u = tensor(f);
        CMatrix rotated = u * rho * u.adjoint();
        std::vector<double> probs(kDim);
        for (std::size_t d = 0; d < kDim; ++d) {
            probs[d] = std::max(0.0, rotated(static_cast<long>(d), static_cast<long>(d)).real());
        }
        std::discrete_distribution<int> dist(probs.begin(), probs.end());
        CounterRng rng(stream_key(seed, r, 2));
        ShadowEntry e;
        e.setting = s;
        e.raw_count = n_m;
        for (std::size_t i = 0; i < n_m; ++i) {
            e.outcomes.push_back(static_cast<uint8_t>(dist(rng)));
        }
        data.entries.push_back(std::move(e));
    }
    return data;
}

CMatrix eigen_cleanup(const CMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es((rho + rho.adjoint()) / 2.0);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    double tr = ev.sum();
    if (tr <= 0) {
        return rho;
    }
    return es.eigenvectors() * (ev / tr).cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

std::string matrix_to_json(const CMatrix& m) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (long i = 0; i < m.rows(); ++i) {
        nlohmann::json r = nlohmann::json::array();
        nlohmann::json c = nlohmann::json::array();
        for (long j = 0; j < m.cols(); ++j) {
            r.push_back(m(i, j).real());
            c.push_back(m(i, j).imag());
        }
        re.push_back(r);
        im.push_back(c);
    }
    return nlohmann::json{{"re", re}, {"im", im}}.dump();
}

std::string density_to_json(const DensityEstimate& e, bool cleanup) {
    nlohmann::json j;
    j["physical"] = nlohmann::json::parse(matrix_to_json(cleanup ? eigen_cleanup(e.physical) : e.physical));
    j["logical"] = nlohmann::json::parse(matrix_to_json(cleanup ? eigen_cleanup(e.logical) : e.logical));
    j["logical_basis"] = {"00", "01", "10", "11"};
    j["p_l"] = e.p_l;
    j["p_l_error"] = e.p_l_error;
    j["settings_used"] = e.settings_used;
    j["settings_dropped"] = e.settings_dropped;
    j["eigen_cleanup"] = cleanup;
    return j.dump(1);
}

void write_dataset(std::ostream& out, const ShadowDataset& data) {
    std::size_t n_m = 0;
    for (const auto& e : data.entries) {
        n_m = std::max(n_m, e.raw_count);
    }
    out << "shadow-dataset n_u=" << data.entries.size() << " n_m=" << n_m << "\n";
    for (const auto& e : data.entries) {
        out << e.setting.id << " " << e.setting.label() << " " << e.raw_count << " " << e.outcomes.size();
        for (uint8_t d : e.outcomes) {
            out << " ";
            for (int k = 0; k < 4; ++k) {
                out << (((d >> k) & 1) ? '1' : '0');
            }
        }
        out << "\n";
    }
}

ShadowDataset read_dataset(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("shadow-dataset", 0) != 0) {
        throw std::runtime_error("read_dataset: missing header");
    }
    std::size_t n_u = 0;
    if (std::sscanf(line.c_str(), "shadow-dataset n_u=%zu", &n_u) != 1) {
        throw std::runtime_error("read_dataset: bad header");
    }
    ShadowDataset data;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        ShadowEntry e;
        std::string bases;
        std::size_t k = 0;
        if (!(ss >> e.setting.id >> bases >> e.raw_count >> k) || bases.size() != 4) {
            throw std::runtime_error("read_dataset: bad record '" + line + "'");
        }
        for (std::size_t q = 0; q < 4; ++q) {
            e.setting.bases[q] = basis_from_char(bases[q]);
        }
        for (std::size_t i = 0; i < k; ++i) {
            std::string bits;
            if (!(ss >> bits) || bits.size() != 4) {
                throw std::runtime_error("read_dataset: bad outcome in '" + line + "'");
            }
            uint8_t d = 0;
            for (std::size_t q = 0; q < 4; ++q) {
                if (bits[q] == '1') d |= static_cast<uint8_t>(1u << q);
                else if (bits[q] != '0') throw std::runtime_error("read_dataset: bad bit");
            }
            e.outcomes.push_back(d);
        }
        if (k > e.raw_count) {
            throw std::runtime_error("read_dataset: more outcomes than raw shots");
        }
        data.entries.push_back(std::move(e));
    }
    if (data.entries.size() != n_u) {
        throw std::runtime_error("read_dataset: record count does not match header");
    }
    return data;
}

}  // namespace starqed
