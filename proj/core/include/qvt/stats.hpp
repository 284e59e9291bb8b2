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

#include "qvt/random.hpp"

namespace qvt {

struct CircuitCounts {
  std::uint64_t heavy = 0;
  std::uint64_t shots = 0;
  std::uint64_t circuit_seed = 0;
};

struct ExperimentData {
  std::vector<CircuitCounts> per_circuit;

  std::size_t n_circuits() const { return per_circuit.size(); }
  bool uniform_shots() const;
  std::uint64_t total_shots() const;
  std::uint64_t total_heavy() const;
  /// Throws DataError on heavy > shots, no circuits or zero total shots.
  void check() const;
};

enum class CiMethod { Original, Bootstrap };
const char* to_string(CiMethod m);

inline constexpr double kTwoSigmaConfidence = 97.73;

struct CiResult {
  double h_hat = 0.0;
  double lower = 0.0;
  CiMethod method = CiMethod::Original;
  double confidence = kTwoSigmaConfidence;
  std::size_t n_circuits = 0;
  std::uint64_t total_shots = 0;
  std::optional<int> n_bootstrap;
  double boot_mean = 0.0;
  double boot_std = 0.0;
  double boot_quantile = 0.0;
  bool passed = false;
};

/// Linear interpolation between closest order statistics of a sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double q);

/// h_hat - 2 sqrt(h_hat (1 - h_hat) / n_c); requires uniform shots.
CiResult ci_original(const ExperimentData& data);

/// Semi-parametric basic bootstrap: resample circuits, redraw heavy counts
/// binomially, lower = 2 mean - quantile(confidence).
CiResult ci_bootstrap(const ExperimentData& data, int n_b, double confidence, std::uint64_t seed);

struct CoverageResult {
  double coverage = 0.0;
  double mean_width = 0.0;  // mean of h_hat - lower
  int reps = 0;
};

CoverageResult coverage_experiment(const std::vector<double>& pool, double true_success, int n_c, int n_s, int reps,
                                   CiMethod method, std::uint64_t seed, int n_b = 1000,
                                   double confidence = kTwoSigmaConfidence);

struct CurvePoint {
  std::size_t prefix = 0;
  double lower_original = 0.0;
  double lower_bootstrap = 0.0;
};

/// Running lower bounds over prefixes min_prefix, min_prefix + stride, ...
/// and always the full length.
std::vector<CurvePoint> passing_curve(const ExperimentData& data, int n_b, std::uint64_t seed, std::size_t stride = 1,
                                      std::size_t min_prefix = 10);

/// First prefix after which the chosen lower bound stays above 2/3.
std::optional<std::size_t> crossing_prefix(const std::vector<CurvePoint>& curve, CiMethod method);

}  // namespace qvt
