// Copyright 2026 The qvtlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qvt/transpile.hpp"

// CSV tables behind the figures. Each function returns the full CSV text
// including a header row.
namespace qvt::cli {

/// Mean ideal heavy probability per width: per-circuit and pooled medians.
std::string fig2_csv(const std::vector<int>& n_list, int circuits, std::uint64_t seed);

/// Distance to the Haar output law and single-qubit entropy against depth.
std::string fig3_csv(int n, const std::vector<int>& depths, int circuits, std::uint64_t seed);

/// Arrangement counts and expected two-qubit gate savings.
std::string fig4_csv(int n_max, int trials, std::uint64_t seed);

/// Fraction of Haar blocks approximated with k CNOTs against tolerance.
std::string fig5_csv(const std::vector<double>& tols, int samples, std::uint64_t seed);

/// Histogram of the total interaction angle, with and without mirroring.
std::string fig6_csv(int samples, int bins, std::uint64_t seed);

/// Estimated passing thresholds per width and model.
std::string fig7_csv(const std::vector<int>& n_list, const std::vector<std::string>& models, OptLevel level);

}  // namespace qvt::cli
