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
#include <optional>
#include <string>
#include <vector>

#include "qvt/estimate.hpp"
#include "qvt/stats.hpp"
#include "qvt/transpile.hpp"

namespace qvt::cli {

struct ExperimentConfig {
  int n = 4;
  int circuits = 100;
  int shots = 100;
  std::string model = "TQ depolarizing";
  double eps = 0.0;
  OptLevel level = OptLevel::High;
  bool mirror = true;  // high level only
  NativeTwoQubit native = NativeTwoQubit::CNOT;
  std::uint64_t seed = 1;
  int n_bootstrap = 1000;
  bool state_fidelity = false;
};

/// Transpiler settings used for one experiment point. The high level takes
/// the error magnitude as its per-block tolerance.
TranspileConfig transpile_config(const ExperimentConfig& cfg);

struct CircuitRecord {
  std::uint64_t seed = 0;
  std::size_t two_qubit_gates = 0;
  double ideal_heavy = 0.0;
  double noisy_heavy = 0.0;
  std::uint64_t heavy_count = 0;
  std::uint64_t shots = 0;
  std::optional<double> state_fidelity;  // <psi_ideal| rho |psi_ideal>
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<CircuitRecord> records;
  double mean_ideal = 0.0;
  double mean_noisy = 0.0;
  double std_noisy = 0.0;

  ExperimentData data() const;
};

/// Circuit i is generated from (seed, i); shots for circuit i come from a
/// separate substream, so results do not depend on the thread count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string to_json(const ExperimentData& data);
ExperimentData experiment_data_from_json(const std::string& text);
std::string to_json(const CiResult& ci);

}  // namespace qvt::cli
