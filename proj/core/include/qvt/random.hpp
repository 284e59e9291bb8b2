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
#include <random>
#include <vector>

#include "qvt/linalg.hpp"
#include "qvt/model.hpp"

namespace qvt {

/// Mix a master seed with a stream index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Seeded 64-bit generator. Identical seeds give identical sequences.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() {
    ++draws_;
    return engine_();
  }

  std::uint64_t seed() const { return seed_; }
  /// Raw 64-bit draws consumed so far.
  std::uint64_t position() const { return draws_; }

  /// Independent generator for sub-task `index`; does not advance this one.
  Rng substream(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(*this); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(*this); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(*this); }

 private:
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
};

/// Haar-random d x d unitary (QR of a complex Ginibre matrix, phases fixed).
MatX haar_unitary(int d, Rng& rng);
Mat4 haar_su4(Rng& rng);

struct Arrangement {
  std::vector<QubitPair> pairs;
  std::optional<int> idle;
};

/// Uniform perfect matching of N qubits (one idle qubit for odd N).
Arrangement random_arrangement(int n, Rng& rng);
/// (0,1), (2,3), ...; the last qubit idles for odd N.
Arrangement nearest_neighbor_arrangement(int n);

/// N rounds by default; `depth` overrides the round count.
QvtCircuit generate_qvt_circuit(int n, Rng& rng, std::optional<int> depth = std::nullopt);

/// Circuit i of a batch: generated from the substream (master, i) and
/// stamped with that substream's seed.
QvtCircuit generate_indexed_circuit(int n, std::uint64_t master_seed, std::uint64_t index,
                                    std::optional<int> depth = std::nullopt);

}  // namespace qvt
