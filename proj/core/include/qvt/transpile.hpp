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
#include <optional>
#include <string>
#include <vector>

#include "qvt/model.hpp"

namespace qvt {

enum class OptLevel { Low, Medium, High };
enum class NativeTwoQubit { CNOT, ARB_ANGLE };

const char* to_string(OptLevel level);
OptLevel opt_level_from_string(const std::string& s);

struct TranspileConfig {
  OptLevel level = OptLevel::Low;
  double tol = 0.0;  // average infidelity accepted per block (high only)
  bool mirror = false;
  NativeTwoQubit native = NativeTwoQubit::CNOT;
  // When set, blocks minimize approximation error times gate error instead
  // of applying the tol rule.
  std::optional<double> noise_aware_gate_fidelity;
};

/// Throws InvalidArgument for unsupported combinations.
void check_config(const TranspileConfig& cfg);

/// Merge runs of single-qubit gates per qubit and drop identities.
std::vector<GateOp> pass_fuse_sq(const std::vector<GateOp>& gates);

/// Multiply blocks on the same pair in consecutive rounds into one block,
/// placed in the later round. The result may have partial rounds.
QvtCircuit pass_block_combine(const QvtCircuit& circuit);

struct TranspileStats {
  std::size_t blocks = 0;
  std::array<std::size_t, 4> cnot_histogram{};  // CNOT native only
  double fidelity_product = 1.0;                // product of block average fidelities
  double theta_total = 0.0;                     // summed over blocks, ARB_ANGLE only
  std::size_t mirrored_blocks = 0;
};

CompiledCircuit transpile(const QvtCircuit& circuit, const TranspileConfig& cfg, TranspileStats* stats = nullptr);

}  // namespace qvt
