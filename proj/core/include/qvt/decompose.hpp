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

#include "qvt/linalg.hpp"
#include "qvt/model.hpp"

namespace qvt {

/// U = phase * (k1 (x) k2) * exp(-i (tx XX + ty YY + tz ZZ) / 2) * (k3 (x) k4)
/// with pi/2 >= tx >= ty >= |tz|, and tz >= 0 whenever tx = pi/2.
struct WeylDecomposition {
  Mat2 k1, k2, k3, k4;
  std::array<double, 3> theta{0, 0, 0};
  cplx phase{1, 0};

  Mat4 reconstruct() const;
  double theta_total() const;
};

WeylDecomposition weyl_decompose(const Mat4& u);

/// Fragments are width-2 circuits on local qubits 0 (high bit of the 4x4
/// block) and 1. A mirrored fragment implements SWAP * U and records the
/// swap as output_relabeling {1, 0}.
Mat4 fragment_matrix(const CompiledCircuit& fragment);

/// Exact 3-CNOT synthesis of the decomposed unitary (up to global phase).
CompiledCircuit cnot_synthesize(const WeylDecomposition& dec);

/// Best average fidelity of a k-CNOT circuit to the decomposed unitary,
/// for k = 0..3 (closed form over the Weyl coordinates).
std::array<double, 4> cnot_class_fidelities(const WeylDecomposition& dec);

struct ApproxResult {
  CompiledCircuit circuit;
  int cnot_count = 3;
  double avg_fidelity = 1.0;
  bool mirrored = false;
};

/// k-CNOT synthesis of U (or of SWAP * U when mirrored) with optimal dressing.
ApproxResult synthesize_k_cnot(const Mat4& u, int k, bool mirrored = false);

/// Fewest-CNOT candidate with average fidelity >= 1 - tol.
ApproxResult approximate_su4(const Mat4& u, double tol, bool mirror);

/// Candidate maximizing avg_fidelity * gate_fidelity^k.
ApproxResult approximate_su4_noise_aware(const Mat4& u, double gate_fidelity, bool mirror);

struct ArbAngleResult {
  CompiledCircuit circuit;
  double theta_total = 0.0;
  bool mirrored = false;
};

/// RXX/RYY/RZZ synthesis; with mirror the smaller-total-angle variant wins.
ArbAngleResult arb_angle_synthesize(const Mat4& u, bool mirror);

}  // namespace qvt
