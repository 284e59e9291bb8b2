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
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qvt/linalg.hpp"

namespace qvt {

using QubitPair = std::pair<int, int>;

/// One layer of a QVT circuit: a (partial) perfect matching of the qubits,
/// each pair carrying a 4x4 unitary block. The first qubit of a pair is the
/// high bit of its block's local index.
struct Round {
  std::vector<QubitPair> pairs;
  std::vector<Mat4> blocks;
  std::optional<int> idle;
};

struct QvtCircuit {
  int width = 0;
  std::vector<Round> rounds;
  std::uint64_t seed = 0;

  std::size_t block_count() const;
};

enum class GateKind { SQ, CNOT, RXX, RYY, RZZ, MEASURE_ALL };

const char* to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& s);

struct GateOp {
  GateKind kind = GateKind::SQ;
  std::array<int, 2> qubits{-1, -1};
  Mat2 matrix = Mat2::Identity();  // SQ only
  double theta = 0.0;               // RXX/RYY/RZZ only

  static GateOp sq(int q, const Mat2& m);
  static GateOp cnot(int control, int target);
  static GateOp rxx(int a, int b, double theta);
  static GateOp ryy(int a, int b, double theta);
  static GateOp rzz(int a, int b, double theta);
  static GateOp measure_all();

  bool is_two_qubit() const;
  /// 4x4 matrix of a two-qubit gate on (qubits[0], qubits[1]).
  Mat4 two_qubit_matrix() const;
};

/// A flat gate list. After the gates run, logical qubit l lives on physical
/// wire output_relabeling[l].
struct CompiledCircuit {
  int width = 0;
  std::vector<GateOp> gates;
  std::vector<int> output_relabeling;
  std::uint64_t source_seed = 0;
};

std::size_t count_two_qubit_gates(const CompiledCircuit& c);
std::size_t count_single_qubit_gates(const CompiledCircuit& c);

/// Dense construction is limited to this width.
inline constexpr int kMaxDenseWidth = 10;

MatX circuit_unitary(const QvtCircuit& circuit);
MatX circuit_unitary(const CompiledCircuit& circuit);

struct ValidateOptions {
  bool require_square = true;       // exactly N rounds
  bool require_full_rounds = true;  // floor(N/2) pairs per round
};

std::vector<std::string> validate(const QvtCircuit& circuit, const ValidateOptions& opts = {});
std::vector<std::string> validate(const CompiledCircuit& circuit);

/// Map a physical-wire basis index to the logical index.
std::uint64_t physical_to_logical(std::uint64_t phys, const std::vector<int>& relabeling);

// Circuit JSON. Floats are written with 17 significant digits.
std::string to_json(const QvtCircuit& circuit);
std::string to_json(const CompiledCircuit& circuit);
QvtCircuit qvt_circuit_from_json(const std::string& text);
CompiledCircuit compiled_circuit_from_json(const std::string& text);
/// True if the document holds a compiled circuit ("gates" key).
bool is_compiled_json(const std::string& text);

std::string format_double(double x);

}  // namespace qvt
