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
#include "qvt/sim.hpp"
#include "qvt/transpile.hpp"

using namespace qvt;
using Catch::Approx;

namespace {

CompiledCircuit compile(const QvtCircuit& c, OptLevel level = OptLevel::Medium) {
  TranspileConfig cfg;
  cfg.level = level;
  return transpile(c, cfg);
}

// Superoperator trace of a channel on `n` qubits, from its action on every
// matrix unit |i><j|; process fidelity is trace / d^2.
template <class Channel>
double process_fidelity(int n, Channel channel) {
  const std::uint64_t d = 1ULL << n;
  double tr = 0;
  for (std::uint64_t i = 0; i < d; ++i)
    for (std::uint64_t j = 0; j < d; ++j) {
      MatX unit = MatX::Zero(d, d);
      unit(i, j) = 1.0;
      DensityMatrix rho = DensityMatrix::from_matrix(unit);
      channel(rho);
      tr += rho(i, j).real();
    }
  return tr / double(d * d);
}

double max_abs_diff(const MatX& a, const MatX& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("empty circuit leaves |0...0>", "[sim]") {
  CompiledCircuit c;
  c.width = 3;
  OutputDistribution d = statevector_run(c);
  REQUIRE(d.probs.size() == 8);
  CHECK(d.probs[0] == Approx(1.0));
  for (std::size_t k = 1; k < 8; ++k) CHECK(d.probs[k] == 0.0);
}

TEST_CASE("Hadamard on qubit 0 splits the low bit", "[sim]") {
  CompiledCircuit c;
  c.width = 2;
  c.gates = {GateOp::sq(0, pauli::H())};
  OutputDistribution d = statevector_run(c);
  CHECK(d.probs[0] == Approx(0.5));
  CHECK(d.probs[1] == Approx(0.5));
  CHECK(d.probs[2] == Approx(0.0).margin(1e-15));
  CHECK(d.probs[3] == Approx(0.0).margin(1e-15));
}

TEST_CASE("statevector agrees with the dense circuit unitary", "[sim]") {
  for (int n = 2; n <= 6; ++n) {
    QvtCircuit c = generate_indexed_circuit(n, 1, n);
    VecX psi = statevector(c);
    VecX ref = oracle::dense_unitary(c).col(0);
    CHECK((psi - ref).norm() < 1e-12);

    CompiledCircuit cc = compile(c, OptLevel::High);
    VecX phys = statevector(cc);
    CHECK((phys - oracle::dense_unitary(cc).col(0)).norm() < 1e-12);
    VecX logical = to_logical_order(phys, cc.output_relabeling);
    CHECK(std::abs(logical.dot(ref)) > 1 - 1e-9);
  }
}

TEST_CASE("zero-noise density run equals the statevector run", "[sim]") {
  for (int n = 2; n <= 6; ++n) {
    CompiledCircuit cc = compile(generate_indexed_circuit(n, 2, n));
    OutputDistribution a = statevector_run(cc);
    OutputDistribution b = density_run(cc, NoiseSpec{});
    for (std::size_t k = 0; k < a.probs.size(); ++k) CHECK(a.probs[k] == Approx(b.probs[k]).margin(1e-10));
  }
}

TEST_CASE("density matrix unitaries match dense conjugation", "[sim]") {
  Rng rng(3);
  const int n = 3;
  MatX psi0 = MatX::Zero(8, 8);
  psi0(0, 0) = 1;
  MatX rho = psi0;
  DensityMatrix dm(n);
  for (int i = 0; i < 10; ++i) {
    Mat2 u1 = haar_unitary(2, rng);
    Mat4 u2 = haar_su4(rng);
    int q = static_cast<int>(rng.below(3));
    int a = static_cast<int>(rng.below(3)), b = (a + 1 + static_cast<int>(rng.below(2))) % 3;
    dm.apply_unitary(q, u1);
    dm.apply_unitary(a, b, u2);
    MatX e1 = oracle::embed1(n, q, u1), e2 = oracle::embed2(n, a, b, u2);
    rho = e2 * e1 * rho * e1.adjoint() * e2.adjoint();
  }
  CHECK(max_abs_diff(dm.matrix(), rho) < 1e-12);
}

TEST_CASE("depolarizing and dephasing channels match Pauli twirls", "[sim]") {
  Rng rng(4);
  const int n = 3;
  VecX psi = haar_unitary(8, rng).col(0);
  MatX rho = psi * psi.adjoint();
  DensityMatrix dm = DensityMatrix::from_matrix(rho);

  dm.depolarize1(1, 0.3);
  rho = oracle::twirl_depolarize(rho, n, {1}, 0.3);
  CHECK(max_abs_diff(dm.matrix(), rho) < 1e-12);

  dm.depolarize2(2, 0, 0.2);
  rho = oracle::twirl_depolarize(rho, n, {2, 0}, 0.2);
  CHECK(max_abs_diff(dm.matrix(), rho) < 1e-12);

  dm.dephase(2, 0.15);
  MatX z = oracle::embed1(n, 2, pauli::Z());
  rho = 0.85 * rho + 0.15 * z * rho * z;
  CHECK(max_abs_diff(dm.matrix(), rho) < 1e-12);

  CHECK(dm.trace() == Approx(1.0).margin(1e-12));
  MatX m = dm.matrix();
  CHECK(max_abs_diff(m, m.adjoint()) < 1e-14);
}

TEST_CASE("channel endpoints", "[sim]") {
  MatX plus = MatX::Constant(2, 2, 0.5);
  DensityMatrix a = DensityMatrix::from_matrix(plus);
  a.depolarize1(0, 0.0);
  CHECK(max_abs_diff(a.matrix(), plus) < 1e-15);
  a.depolarize1(0, 1.0);
  CHECK(max_abs_diff(a.matrix(), MatX::Identity(2, 2) / 2) < 1e-15);

  DensityMatrix b = DensityMatrix::from_matrix(plus);
  b.dephase(0, 0.5);
  CHECK(max_abs_diff(b.matrix(), MatX::Identity(2, 2) / 2) < 1e-15);
}

TEST_CASE("depolarizing composition and parallel laws", "[sim]") {
  // Serial: keep parameters multiply.
  double serial = process_fidelity(2, [](DensityMatrix& r) {
    r.depolarize2(0, 1, 0.1);
    r.depolarize2(0, 1, 0.2);
  });
  double single = process_fidelity(2, [](DensityMatrix& r) { r.depolarize2(0, 1, 1 - 0.9 * 0.8); });
  CHECK(serial == Approx(single).margin(1e-12));

  // Parallel: process fidelities multiply.
  double f1 = process_fidelity(1, [](DensityMatrix& r) { r.depolarize1(0, 0.12); });
  double f2 = process_fidelity(1, [](DensityMatrix& r) { r.depolarize1(0, 0.05); });
  double both = process_fidelity(2, [](DensityMatrix& r) {
    r.depolarize1(0, 0.12);
    r.depolarize1(1, 0.05);
  });
  CHECK(both == Approx(f1 * f2).margin(1e-12));
  // Process fidelity of a d-dim depolarizer with keep p is p + (1 - p)/d^2.
  CHECK(f1 == Approx(0.88 + 0.12 / 4).margin(1e-12));
}

TEST_CASE("readout error on one qubit", "[sim]") {
  CompiledCircuit c;
  c.width = 1;
  NoiseSpec noise;
  noise.e_meas = 0.1;
  OutputDistribution d = density_run(c, noise);
  CHECK(d.probs[0] == Approx(0.9));
  CHECK(d.probs[1] == Approx(0.1));
}

TEST_CASE("single-block depolarizing circuit follows the closed form", "[sim]") {
  for (int i = 0; i < 10; ++i) {
    QvtCircuit c = generate_indexed_circuit(2, 5, i);
    c.rounds.resize(1);
    CompiledCircuit cc = compile(c);
    REQUIRE(count_two_qubit_gates(cc) == 3);
    NoiseSpec noise;
    noise.p_tq_dep = 0.07;
    HeavyAnalysis h = analyze(statevector_run(c), density_run(cc, noise));
    const double keep = std::pow(1 - 0.07, 3);
    CHECK(*h.noisy_heavy_prob == Approx(h.ideal_heavy_prob * keep + (1 - keep) / 2).margin(1e-9));
  }
}

TEST_CASE("noise lowers the mean heavy probability", "[sim]") {
  std::vector<QvtCircuit> circuits;
  std::vector<CompiledCircuit> compiled;
  std::vector<HeavyAnalysis> ideal;
  for (int i = 0; i < 50; ++i) {
    circuits.push_back(generate_indexed_circuit(4, 6, i));
    compiled.push_back(compile(circuits.back()));
    ideal.push_back(heavy_set(statevector_run(circuits.back())));
  }
  auto mean_heavy = [&](const NoiseSpec& noise) {
    double s = 0;
    for (std::size_t i = 0; i < circuits.size(); ++i)
      s += heavy_probability(ideal[i].heavy_set, density_run(compiled[i], noise));
    return s / double(circuits.size());
  };
  const std::vector<double> grid = {0.0, 0.01, 0.03, 0.1};
  for (int field = 0; field < 6; ++field) {
    double prev = 2.0;
    for (double v : grid) {
      NoiseSpec noise;
      switch (field) {
        case 0: noise.p_sq_dep = v; break;
        case 1: noise.p_tq_dep = v; break;
        case 2: noise.theta_zz = 3 * v; break;
        case 3: noise.q_dephase = v; break;
        case 4: noise.p_xtalk = v; break;
        case 5: noise.e_meas = v; break;
      }
      double h = mean_heavy(noise);
      CHECK(h <= prev + 1e-12);
      prev = h;
    }
  }
}

TEST_CASE("crosstalk touches the neighbours of a gate only", "[sim]") {
  CompiledCircuit c;
  c.width = 4;
  c.gates = {GateOp::sq(0, pauli::X()), GateOp::sq(3, pauli::X()), GateOp::cnot(1, 2)};
  NoiseSpec noise;
  noise.p_xtalk = 1.0;
  DensityMatrix rho = density_evolve(c, noise);
  // Qubits 0 and 3 are fully depolarized, 1 and 2 untouched in |0>.
  auto diag = rho.diagonal();
  double p_q1_one = 0, p_q0_one = 0;
  for (std::size_t k = 0; k < diag.size(); ++k) {
    if (k & 2) p_q1_one += diag[k];
    if (k & 1) p_q0_one += diag[k];
  }
  CHECK(p_q1_one == Approx(0.0).margin(1e-15));
  CHECK(p_q0_one == Approx(0.5).margin(1e-15));
}

TEST_CASE("density fidelity against a pure state", "[sim]") {
  QvtCircuit c = generate_indexed_circuit(3, 9, 0);
  CompiledCircuit cc = compile(c);
  DensityMatrix rho = density_evolve(cc, NoiseSpec{});
  CHECK(rho.fidelity(statevector(cc)) == Approx(1.0).margin(1e-10));
  NoiseSpec noise;
  noise.p_tq_dep = 0.05;
  double f = density_evolve(cc, noise).fidelity(statevector(cc));
  CHECK(f < 1.0);
  CHECK(f > 0.0);
}

TEST_CASE("simulators enforce width caps and parameter ranges", "[sim]") {
  CompiledCircuit big;
  big.width = kMaxDensityWidth + 1;
  CHECK_THROWS_AS(density_run(big, NoiseSpec{}), InvalidArgument);
  CompiledCircuit c;
  c.width = 2;
  NoiseSpec bad;
  bad.p_tq_dep = 1.5;
  CHECK_THROWS_AS(density_run(c, bad), InvalidArgument);
  DensityMatrix rho(2);
  CHECK_THROWS_AS(rho.depolarize1(2, 0.1), InvalidArgument);
}
