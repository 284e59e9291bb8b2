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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "experiment.hpp"

namespace qvt::cli {

/// Seven points exponentially spaced on [10^-3.25, 10^-1.25].
std::vector<double> default_eps_grid();

struct SweepSpec {
  std::vector<int> n_list{3, 4, 5, 6};
  std::vector<std::string> models{"TQ depolarizing"};
  std::vector<double> eps_list = default_eps_grid();
  std::vector<OptLevel> levels{OptLevel::High};
  int circuits = 100;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "sweep";

  /// Throws InvalidArgument on empty lists or eps outside a model's range.
  void check() const;
};

struct SweepPoint {
  int n = 0;
  std::string model;
  OptLevel level = OptLevel::High;
  double eps = 0.0;
  int circuits = 0;
  double mean_ideal = 0.0;
  double mean_noisy = 0.0;
  double std_noisy = 0.0;
  double mean_two_qubit_gates = 0.0;
};

std::string to_json(const SweepPoint& p);
SweepPoint sweep_point_from_json(const std::string& line);

/// Mean noisy heavy probability of one grid point. Circuits depend on
/// (seed, n) only, so every eps and model sees the same circuits.
SweepPoint evaluate_point(int n, const std::string& model, OptLevel level, double eps, int circuits,
                          std::uint64_t seed);

struct ThresholdRow {
  int n = 0;
  std::string model;
  OptLevel level = OptLevel::High;
  std::optional<double> simulated;  // interpolated 2/3 crossing
  double estimate_avg = 0.0;
  double estimate_proc = 0.0;
};

/// eps where a monotone cubic (PCHIP) interpolant of success against
/// log10(eps) first crosses `target`; empty if the data never cross.
std::optional<double> interpolate_crossing(const std::vector<double>& eps, const std::vector<double>& success,
                                           double target = 2.0 / 3.0);

struct SweepSummary {
  std::vector<SweepPoint> points;
  std::vector<ThresholdRow> thresholds;
  std::size_t computed = 0;  // points evaluated in this call
  std::size_t reused = 0;    // points found on disk
};

/// Evaluate every grid point not already present in out_dir, appending each
/// finished point to results.jsonl, then write summary.csv and thresholds.csv.
SweepSummary run_sweep(const SweepSpec& spec, bool quiet = true);

std::vector<ThresholdRow> thresholds_for(const std::vector<SweepPoint>& points);

}  // namespace qvt::cli
