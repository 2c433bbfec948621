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

// Classical shadows from random local Pauli measurements of the four data
// qubits.
//
// A setting measures data qubit j in basis P_j. Outcome d_j contributes the
// factor (I + 3 (-1)^d_j P_j) / 2, and a setting's shadow is the outcome
// average of the tensor products. Physical basis index: bit k is D(k+1).

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "starqed/circuit.h"
#include "starqed/dense.h"
#include "starqed/engine.h"

namespace starqed {

struct TomographySetting {
    int id = 0;
    std::array<Basis, 4> bases{Basis::Z, Basis::Z, Basis::Z, Basis::Z};

    std::string label() const;  // e.g. "ZXYZ"
    bool operator==(const TomographySetting&) const = default;
};

enum class SettingMode : uint8_t { Uniform, Exhaustive81 };

/// Uniform: n_u i.i.d. settings, n_u >= 2. Exhaustive81: all 81 once, in
/// lexicographic Z < X < Y order, n_u ignored.
std::vector<TomographySetting> sample_settings(SettingMode mode, std::size_t n_u, uint64_t seed);

struct ShadowEntry {
    TomographySetting setting;
    std::vector<uint8_t> outcomes;  // post-selected 4-bit strings, bit k = D(k+1)
    std::size_t raw_count = 0;      // shots before post-selection
};

struct ShadowDataset {
    std::vector<ShadowEntry> entries;

    std::size_t num_settings() const { return entries.size(); }
    /// Entries with at least one outcome.
    std::size_t usable_settings() const;
};

/// One setting's shadow. Throws for an empty outcome list.
CMatrix shadow_from_setting(const TomographySetting& setting, std::span<const uint8_t> outcomes);

/// Single-qubit factor (I + 3 (-1)^d P) / 2.
CMatrix shadow_factor(Basis basis, bool outcome);

/// Final data bits of the accepted shots of a tomography run.
ShadowEntry shadow_entry(const ShotBatch& batch, std::span<const std::size_t> accepted, int setting_id);

/// What a bootstrap replicate redraws. Settings suits i.i.d. random
/// settings; Outcomes keeps a fixed setting list (the exhaustive 81) and
/// redraws each setting's post-selected outcomes. The scheme also picks the
/// purity pairing: distinct settings for Settings, distinct shots for
/// Outcomes (unbiased on a fixed list).
enum class BootstrapScheme : uint8_t { Settings, Outcomes };

struct ShadowOptions {
    std::size_t bootstrap = 1000;
    BootstrapScheme scheme = BootstrapScheme::Settings;
    uint64_t bootstrap_seed = 1;
    bool eigen_cleanup = false;  // display only; estimates stay raw
};

struct DensityEstimate {
    CMatrix physical;  // 16 x 16
    CMatrix logical;   // 4 x 4 in the |00>_L .. |11>_L basis, trace one
    double p_l = 0.0;
    double p_l_error = 0.0;
    std::size_t settings_used = 0;
    std::size_t settings_dropped = 0;  // no outcomes after post-selection
};

/// Mean shadow, logical block and its population. Throws std::runtime_error
/// when the logical population is not positive.
DensityEstimate estimate_density(const ShadowDataset& data, const ShadowOptions& options = {});

struct ScalarEstimate {
    double value = 0.0;
    double error = 0.0;  // bootstrap standard deviation
};

/// <psi|rho|psi> for a 16-dimensional target.
ScalarEstimate fidelity_estimate(const ShadowDataset& data, const StateVector& target,
                                 const ShadowOptions& options = {});
/// Fidelity of the normalized logical state with a 4-dimensional target
/// given in the |00>_L .. |11>_L basis.
ScalarEstimate logical_fidelity_estimate(const ShadowDataset& data, const CVector& target_logical,
                                         const ShadowOptions& options = {});

/// U-statistic over pairs of distinct settings, or of distinct shots under
/// BootstrapScheme::Outcomes. Needs two usable settings.
ScalarEstimate purity_estimate(const ShadowDataset& data, const ShadowOptions& options = {});
ScalarEstimate logical_purity_estimate(const ShadowDataset& data, const ShadowOptions& options = {});

/// Bootstrap error of the logical population.
ScalarEstimate logical_population_estimate(const ShadowDataset& data, const ShadowOptions& options = {});

/// Draws n_m outcomes per setting from a 16 x 16 density matrix.
ShadowDataset sample_dataset(const CMatrix& rho, std::span<const TomographySetting> settings, std::size_t n_m,
                             uint64_t seed);

/// Clips negative eigenvalues and renormalizes the trace.
CMatrix eigen_cleanup(const CMatrix& rho);

/// JSON object with "re" and "im" row arrays.
std::string matrix_to_json(const CMatrix& m);
std::string density_to_json(const DensityEstimate& e, bool cleanup = false);

/// Text format: a header line "shadow-dataset n_u=<k> n_m=<max raw>" then one
/// line per setting "<id> <bases> <raw_count> <k> <outcome>...", outcomes as
/// four-character bit strings D1 first.
void write_dataset(std::ostream& out, const ShadowDataset& data);
ShadowDataset read_dataset(std::istream& in);

}  // namespace starqed
