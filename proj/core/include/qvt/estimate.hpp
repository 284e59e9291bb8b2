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

#include <array>
#include <string>
#include <vector>

#include "qvt/sim.hpp"
#include "qvt/transpile.hpp"

namespace qvt {

enum class FidelityKind { Avg, Proc, Dep };

/// Convert between average fidelity, process fidelity and the depolarizing
/// (keep) parameter of a d-dimensional depolarizing channel.
double convert(double x, FidelityKind from, FidelityKind to, int d);

/// Error sources in table order.
enum ErrorSource { kSqDep = 0, kTqDep, kTqCoherent, kTqMemory, kTqCrosstalk, kMeasure, kNumSources };

struct ErrorModelSpec {
  std::string name;
  std::array<double, kNumSources> scales{};
  /// Absolute average infidelities added on top of the scaled values.
  std::array<double, kNumSources> fixed{};

  /// (12/5) s_sq + s_tq_dep + s_tq_coh
  double normalization() const;
};

/// The eight table models plus "Unscaled" (TQ depolarizing with a fixed
/// 1e-3 crosstalk error).
const std::vector<ErrorModelSpec>& builtin_models();
const ErrorModelSpec& find_model(const std::string& name);

/// Largest eps for which the coherent rotation angle is defined.
double max_eps(const ErrorModelSpec& spec);

/// Average infidelity of each source at magnitude eps.
std::array<double, kNumSources> source_infidelities(const ErrorModelSpec& spec, double eps);

NoiseSpec resolve_model(const ErrorModelSpec& spec, double eps);

/// Mean CNOT count per block over a fixed sample of 10^4 Haar blocks under
/// approximate_su4(tol, mirror).
double gates_per_block(double tol, bool mirror);

struct EstimateResult {
  double success = 0.0;
  double p_tot = 1.0;
  double p_m = 1.0;
  FidelityKind method = FidelityKind::Avg;
  double blocks = 0.0;
  double gates_per_block = 3.0;
};

/// Scalable success estimate. Every source is folded into a per-gate
/// depolarizing channel: memory counts once per gate qubit, every other
/// source once per gate.
/// `h_ideal` overrides h_ideal_haar(N) when > 0.
EstimateResult scalable_success(const ErrorModelSpec& spec, double eps, int n, OptLevel opt, FidelityKind method,
                                double h_ideal = 0.0);

/// eps at which scalable_success crosses 2/3, to 1e-6 relative precision.
double passing_threshold(const ErrorModelSpec& spec, int n, OptLevel opt, FidelityKind method);

/// Largest N in [2, scan_limit] with success >= 2/3 (0 if none).
int passing_qubits(const ErrorModelSpec& spec, double eps, OptLevel opt, FidelityKind method, int scan_limit = 64);

}  // namespace qvt
