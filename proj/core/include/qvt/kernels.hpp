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
#include <span>

#include "qvt/linalg.hpp"

// In-place gate kernels on a 2^n amplitude array. Qubit q is bit q of the
// basis index. Two-qubit kernels use local index 2*bit(q0) + bit(q1), so a
// 4x4 kron(A, B) applies A to q0 and B to q1.
namespace qvt::kernels {

void apply_1q(std::span<cplx> amp, int q, const Mat2& m);
void apply_2q(std::span<cplx> amp, int q0, int q1, const Mat4& m);
void apply_cnot(std::span<cplx> amp, int control, int target);

/// Multiply amplitude k by diag[local index of (q0, q1)].
void apply_diag_2q(std::span<cplx> amp, int q0, int q1, const std::array<cplx, 4>& diag);

inline std::uint64_t bit(std::uint64_t x, int q) { return (x >> q) & 1ULL; }

}  // namespace qvt::kernels
