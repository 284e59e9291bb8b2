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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "qvt/heavy.hpp"
#include "qvt/random.hpp"

using namespace qvt;
using Catch::Approx;

namespace {

OutputDistribution dist(std::vector<double> p) {
  OutputDistribution d;
  d.probs = std::move(p);
  int n = 0;
  while ((std::size_t{1} << n) < d.probs.size()) ++n;
  d.width = n;
  return d;
}

// Expected heavy probability by integrating p * D * pdf(p) above the median
// p_med = 1 - 2^(-1/(D-1)) of the single-output law.
double heavy_by_quadrature(int n) {
  const double d = std::ldexp(1.0, n);
  const double med = 1 - std::pow(2.0, -1 / (d - 1));
  return oracle::simpson([&](double p) { return d * p * (d - 1) * std::pow(1 - p, d - 2); }, med, 1.0, 200000);
}

VecX basis_state(int n, std::uint64_t k) {
  VecX v = VecX::Zero(1LL << n);
  v(static_cast<Eigen::Index>(k)) = 1;
  return v;
}

}  // namespace

TEST_CASE("median and heavy set on small distributions", "[heavy]") {
  HeavyAnalysis h = heavy_set(dist({0.4, 0.3, 0.2, 0.1}));
  CHECK(h.median == Approx(0.25));
  CHECK(h.heavy_set == std::vector<std::uint64_t>{0, 1});
  CHECK(h.ideal_heavy_prob == Approx(0.7));

  HeavyAnalysis flat = heavy_set(dist({0.25, 0.25, 0.25, 0.25}));
  CHECK(flat.heavy_set.empty());
  CHECK(flat.ideal_heavy_prob == 0.0);

  CHECK(median_of({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median_of({4.0, 1.0, 3.0, 2.0}) == 2.5);
  CHECK(heavy_probability({0, 1}, dist({0.1, 0.2, 0.3, 0.4})) == Approx(0.3));
}

TEST_CASE("analyze attaches the noisy heavy probability", "[heavy]") {
  HeavyAnalysis h = analyze(dist({0.4, 0.3, 0.2, 0.1}), dist({0.25, 0.25, 0.25, 0.25}));
  REQUIRE(h.noisy_heavy_prob);
  CHECK(*h.noisy_heavy_prob == Approx(0.5));
  CHECK_THROWS_AS(analyze(dist({0.5, 0.5}), dist({0.25, 0.25, 0.25, 0.25})), InvalidArgument);
}

TEST_CASE("h_ideal_haar matches quadrature of the output law", "[heavy]") {
  CHECK(h_ideal_haar(1) == Approx(0.75).margin(1e-12));
  CHECK(h_ideal_haar(2) == Approx(0.8095).margin(1e-4));
  for (int n = 1; n <= 10; ++n) CHECK(h_ideal_haar(n) == Approx(heavy_by_quadrature(n)).margin(1e-8));
  CHECK(h_ideal_haar(20) == Approx((1 + std::log(2.0)) / 2).margin(1e-4));
  CHECK(h_ideal_haar(60) == Approx((1 + std::log(2.0)) / 2).margin(1e-9));
}

TEST_CASE("Haar output density is normalized", "[heavy]") {
  CHECK(haar_output_pdf(0.0, 1) == Approx(1.0));
  for (int n = 1; n <= 10; ++n) {
    CHECK(oracle::simpson([&](double p) { return haar_output_pdf(p, n); }, 0.0, 1.0, 100000) ==
          Approx(1.0).margin(1e-8));
    CHECK(haar_output_cdf(0.3, n) ==
          Approx(oracle::simpson([&](double p) { return haar_output_pdf(p, n); }, 0.0, 0.3, 20000)).margin(1e-9));
  }
  // Porter-Thomas limit D exp(-D p) at N = 12.
  const double d = 4096;
  for (double x : {0.5, 1.0, 2.0}) CHECK(haar_output_pdf(x / d, 12) / d == Approx(std::exp(-x)).epsilon(0.01));
}

TEST_CASE("KS statistic of exact Haar samples is small", "[heavy]") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> sample;
  const int n = 4;
  const double d = 16;
  for (int i = 0; i < 100000; ++i) sample.push_back(1 - std::pow(1 - u(gen), 1 / (d - 1)));
  CHECK(ks_statistic(sample, n) < 0.006);
  CHECK(ks_statistic_binned(sample, n, 100) < 0.006);
  CHECK(ks_statistic(std::vector<double>(100, 0.0), n) == Approx(1.0));
}

TEST_CASE("N-deep circuits already look Haar at N = 4", "[heavy]") {
  std::vector<double> shallow, deep;
  for (int i = 0; i < 5000; ++i) {
    auto a = statevector_run(generate_indexed_circuit(4, 11, i));
    auto b = statevector_run(generate_indexed_circuit(4, 12, i, 24));
    shallow.insert(shallow.end(), a.probs.begin(), a.probs.end());
    deep.insert(deep.end(), b.probs.begin(), b.probs.end());
  }
  double ks_n = ks_statistic(shallow, 4), ks_6n = ks_statistic(deep, 4);
  CHECK(ks_n < 0.02);
  CHECK(ks_6n < 0.02);
}

TEST_CASE("single-qubit entropy of reference states", "[heavy]") {
  CHECK(mean_single_qubit_entropy(basis_state(3, 5)) == Approx(0.0).margin(1e-12));
  VecX bell = VecX::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  CHECK(mean_single_qubit_entropy(bell) == Approx(1.0).margin(1e-12));
  VecX ghz = VecX::Zero(8);
  ghz(0) = ghz(7) = 1 / std::sqrt(2.0);
  CHECK(mean_single_qubit_entropy(ghz) == Approx(1.0).margin(1e-12));
}

TEST_CASE("circuit fidelity estimate endpoints", "[heavy]") {
  for (int n : {2, 5, 8}) {
    double hi = h_ideal_haar(n);
    CHECK(circuit_fidelity_estimate(hi, hi, n).value == Approx(1.0).margin(1e-9));
    CHECK(circuit_fidelity_estimate(0.5, hi, n).value == Approx(std::ldexp(1.0, -n)).margin(1e-9));
  }
  double big = (1 + std::log(2.0)) / 2;
  CHECK(circuit_fidelity_estimate(2.0 / 3, big, 60).value == Approx(1 / (3 * std::log(2.0))).margin(1e-9));
  auto c = circuit_fidelity_estimate(0.3, 0.8, 3);
  CHECK(c.clamped);
  CHECK(c.value == Approx(0.125));
}

TEST_CASE("distribution moments are central population moments", "[heavy]") {
  auto m = distribution_moments({1.0, 2.0, 3.0, 4.0}, {2, 3, 4});
  CHECK(m[0] == Approx(1.25));
  CHECK(m[1] == Approx(0.0).margin(1e-15));
  CHECK(m[2] == Approx((2 * 81.0 / 16 + 2 * 1.0 / 16) / 4));
}

TEST_CASE("per-circuit QVT_2 heavy mean matches the Dirichlet order statistics", "[heavy]") {
  const double exact = oracle::dirichlet_top_half_mean(4);
  CHECK(exact == Approx(0.7917).margin(1e-4));
  double s = 0;
  const int draws = 2000;
  for (int i = 0; i < draws; ++i) s += heavy_set(statevector_run(generate_indexed_circuit(2, 21, i))).ideal_heavy_prob;
  CHECK(s / draws == Approx(exact).margin(0.01));
}

TEST_CASE("pooled-median heavy mean approaches the integral law", "[heavy]") {
  std::vector<OutputDistribution> ideals;
  for (int i = 0; i < 2000; ++i) ideals.push_back(statevector_run(generate_indexed_circuit(2, 22, i)));
  CHECK(pooled_median_heavy_mean(ideals) == Approx(h_ideal_haar(2)).margin(0.01));
}

TEST_CASE("odd widths have a higher ideal heavy mean than the next even width", "[heavy]") {
  auto mean = [](int n) {
    double s = 0;
    const int draws = 2000;
    for (int i = 0; i < draws; ++i) s += heavy_set(statevector_run(generate_indexed_circuit(n, 23, i))).ideal_heavy_prob;
    return s / draws;
  };
  CHECK(mean(3) > mean(4));
  CHECK(mean(5) > mean(6));
}

TEST_CASE("an always-idle qubit gives heavy probability one", "[heavy]") {
  QvtCircuit c = generate_indexed_circuit(3, 24, 0);
  for (auto& r : c.rounds) {
    r.pairs = {{0, 1}};
    r.idle = 2;
  }
  CHECK(heavy_set(statevector_run(c)).ideal_heavy_prob == Approx(1.0).margin(1e-12));
}

TEST_CASE("heavy sets relabel with the qubits", "[heavy]") {
  QvtCircuit c = generate_indexed_circuit(3, 25, 0);
  QvtCircuit p = c;
  // Relabel qubit q -> perm[q].
  const std::vector<int> perm = {2, 0, 1};
  for (auto& r : p.rounds) {
    for (auto& [a, b] : r.pairs) {
      a = perm[a];
      b = perm[b];
    }
    if (r.idle) r.idle = perm[*r.idle];
  }
  auto hc = heavy_set(statevector_run(c)), hp = heavy_set(statevector_run(p));
  std::vector<std::uint64_t> mapped;
  for (std::uint64_t x : hc.heavy_set) {
    std::uint64_t y = 0;
    for (int q = 0; q < 3; ++q)
      if ((x >> q) & 1) y |= 1ULL << perm[q];
    mapped.push_back(y);
  }
  std::sort(mapped.begin(), mapped.end());
  CHECK(mapped == hp.heavy_set);
  CHECK(hc.ideal_heavy_prob == Approx(hp.ideal_heavy_prob).margin(1e-12));
}
