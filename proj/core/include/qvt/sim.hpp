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
#include <vector>

#include "qvt/model.hpp"

namespace qvt {

inline constexpr int kMaxStatevectorWidth = 20;
inline constexpr int kMaxDensityWidth = 10;

/// Channel parameters are error probabilities; the matching keep
/// probability is 1 - value.
struct NoiseSpec {
  double p_sq_dep = 0.0;
  double p_tq_dep = 0.0;
  double theta_zz = 0.0;
  double q_dephase = 0.0;
  double p_xtalk = 0.0;
  double e_meas = 0.0;

  bool is_zero() const;
  /// Throws InvalidArgument if a probability leaves [0, 1] or theta is not finite.
  void check() const;
};

struct OutputDistribution {
  int width = 0;
  std::vector<double> probs;
};

/// Final state in physical wire order (no relabeling).
VecX statevector(const CompiledCircuit& circuit);
/// Final state of the logical circuit.
VecX statevector(const QvtCircuit& circuit);

/// Reorder a physical-order state into logical order.
VecX to_logical_order(const VecX& phys, const std::vector<int>& relabeling);

OutputDistribution probabilities(const VecX& state);
OutputDistribution statevector_run(const CompiledCircuit& circuit);
OutputDistribution statevector_run(const QvtCircuit& circuit);

/// Dense N-qubit density matrix stored as a 2N-qubit vector: element
/// rho(r, c) sits at index c + (r << N).
class DensityMatrix {
 public:
  explicit DensityMatrix(int width);  // |0...0><0...0|
  static DensityMatrix from_matrix(const MatX& rho);

  int width() const { return width_; }
  cplx operator()(std::uint64_t r, std::uint64_t c) const { return data_[c | (r << width_)]; }
  MatX matrix() const;
  double trace() const;
  std::vector<double> diagonal() const;
  /// <psi| rho |psi>
  double fidelity(const VecX& psi) const;

  void apply_unitary(int q, const Mat2& u);
  void apply_unitary(int q0, int q1, const Mat4& u);
  /// rho -> (1 - p) rho + p I/2 (x) Tr_q rho
  void depolarize1(int q, double p);
  /// rho -> (1 - p) rho + p I/4 (x) Tr_{q0 q1} rho
  void depolarize2(int q0, int q1, double p);
  /// rho -> (1 - q) rho + q Z rho Z
  void dephase(int q, double q_err);

 private:
  int width_;
  std::vector<cplx> data_;
};

/// Noisy evolution, without readout error, in physical wire order.
DensityMatrix density_evolve(const CompiledCircuit& circuit, const NoiseSpec& noise);
/// Symmetric readout flips applied to a physical-order distribution.
std::vector<double> apply_readout_error(std::vector<double> probs, int width, double e_meas);
/// Noisy output distribution in logical order.
OutputDistribution density_run(const CompiledCircuit& circuit, const NoiseSpec& noise);

/// Permute a physical-order probability vector into logical order.
std::vector<double> to_logical_order(const std::vector<double>& phys, const std::vector<int>& relabeling);

}  // namespace qvt
