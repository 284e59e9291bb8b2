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

#include "qvt/random.hpp"

#include <cmath>
#include <numeric>

namespace qvt {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MatX haar_unitary(int d, Rng& rng) {
  if (d < 1) throw InvalidArgument("haar_unitary: dimension must be >= 1");
  MatX g(d, d);
  const double scale = 1.0 / std::sqrt(2.0);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(r, c) = cplx(re, im) * scale;
    }
  Eigen::HouseholderQR<MatX> qr(g);
  MatX q = qr.householderQ() * MatX::Identity(d, d);
  const MatX& r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const cplx rkk = r(k, k);
    const double mag = std::abs(rkk);
    if (mag > 0) q.col(k) *= rkk / mag;
  }
  return q;
}

Mat4 haar_su4(Rng& rng) {
  Mat4 u = haar_unitary(4, rng);
  return u * std::pow(u.determinant(), -0.25);
}

Arrangement random_arrangement(int n, Rng& rng) {
  if (n < 2) throw InvalidArgument("random_arrangement: N must be >= 2");
  // Odd N gets a phantom vertex n; whoever is matched with it idles.
  const int m = n % 2 ? n + 1 : n;
  std::vector<int> rest(static_cast<std::size_t>(m));
  std::iota(rest.begin(), rest.end(), 0);
  Arrangement a;
  while (!rest.empty()) {
    const int low = rest.front();
    rest.erase(rest.begin());
    const std::size_t j = static_cast<std::size_t>(rng.below(rest.size()));
    const int partner = rest[j];
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
    if (partner == n)
      a.idle = low;
    else
      a.pairs.emplace_back(low, partner);
  }
  return a;
}

Arrangement nearest_neighbor_arrangement(int n) {
  if (n < 2) throw InvalidArgument("nearest_neighbor_arrangement: N must be >= 2");
  Arrangement a;
  for (int q = 0; q + 1 < n; q += 2) a.pairs.emplace_back(q, q + 1);
  if (n % 2) a.idle = n - 1;
  return a;
}

QvtCircuit generate_qvt_circuit(int n, Rng& rng, std::optional<int> depth) {
  if (n < 2) throw InvalidArgument("generate_qvt_circuit: N must be >= 2");
  const int rounds = depth.value_or(n);
  if (rounds < 1) throw InvalidArgument("generate_qvt_circuit: depth must be >= 1");
  QvtCircuit c;
  c.width = n;
  c.seed = rng.seed();
  for (int r = 0; r < rounds; ++r) {
    Arrangement a = r == 0 ? nearest_neighbor_arrangement(n) : random_arrangement(n, rng);
    Round round;
    round.pairs = std::move(a.pairs);
    round.idle = a.idle;
    for (std::size_t i = 0; i < round.pairs.size(); ++i) round.blocks.push_back(haar_su4(rng));
    c.rounds.push_back(std::move(round));
  }
  return c;
}

QvtCircuit generate_indexed_circuit(int n, std::uint64_t master_seed, std::uint64_t index,
                                    std::optional<int> depth) {
  Rng rng(derive_seed(master_seed, index));
  return generate_qvt_circuit(n, rng, depth);
}

}  // namespace qvt
