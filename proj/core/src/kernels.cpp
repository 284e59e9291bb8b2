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

#include "qvt/kernels.hpp"

#include <array>
#include <algorithm>
#include <utility>

namespace qvt::kernels {

void apply_1q(std::span<cplx> amp, int q, const Mat2& m) {
  const std::uint64_t stride = 1ULL << q;
  const std::uint64_t size = amp.size();
  const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::uint64_t base = 0; base < size; base += 2 * stride) {
    for (std::uint64_t k = base; k < base + stride; ++k) {
      const cplx a0 = amp[k], a1 = amp[k + stride];
      amp[k] = m00 * a0 + m01 * a1;
      amp[k + stride] = m10 * a0 + m11 * a1;
    }
  }
}

void apply_2q(std::span<cplx> amp, int q0, int q1, const Mat4& m) {
  const std::uint64_t s0 = 1ULL << q0, s1 = 1ULL << q1;
  const std::uint64_t size = amp.size();
  // local index 2*b0 + b1 -> offset
  const std::array<std::uint64_t, 4> off{0, s1, s0, s0 | s1};
  std::array<cplx, 16> mm;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) mm[4 * r + c] = m(r, c);
  for (std::uint64_t k = 0; k < size; ++k) {
    if (k & (s0 | s1)) continue;
    std::array<cplx, 4> in{amp[k + off[0]], amp[k + off[1]], amp[k + off[2]], amp[k + off[3]]};
    for (int r = 0; r < 4; ++r)
      amp[k + off[r]] = mm[4 * r] * in[0] + mm[4 * r + 1] * in[1] + mm[4 * r + 2] * in[2] + mm[4 * r + 3] * in[3];
  }
}

void apply_cnot(std::span<cplx> amp, int control, int target) {
  const std::uint64_t c = 1ULL << control, t = 1ULL << target;
  const std::uint64_t size = amp.size();
  for (std::uint64_t k = 0; k < size; ++k)
    if ((k & c) && !(k & t)) std::swap(amp[k], amp[k | t]);
}

void apply_diag_2q(std::span<cplx> amp, int q0, int q1, const std::array<cplx, 4>& diag) {
  const std::uint64_t size = amp.size();
  for (std::uint64_t k = 0; k < size; ++k) amp[k] *= diag[2 * bit(k, q0) + bit(k, q1)];
}

}  // namespace qvt::kernels
