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

// CSV tables written by the command line tool. Times in microseconds, rates
// in percent. The first line of every table is its header; the headers are
// part of the stable output format.

#pragma once

#include <string>
#include <vector>

#include "starqed/pipelines.h"

namespace starqed::report {

std::string stabilizer_tomo_csv(const std::vector<StabilizerTomoResult>& results);
std::string stabilizer_fidelity_csv(const std::vector<StabilizerTomoResult>& results);

std::string lifetime_series_csv(const std::vector<LifetimeResult>& results);
std::string lifetime_table_csv(const std::vector<LifetimeResult>& results);

std::string tomography_csv(const std::vector<TomographyResult>& results);

std::string bell_series_csv(const BellResult& result);
std::string bell_tomography_csv(const BellResult& result);
std::string bell_fit_csv(const BellResult& result);

std::string budget_csv(const BudgetResult& result);

std::string detectors_csv(const std::vector<DetectorGrid>& grids);

}  // namespace starqed::report
