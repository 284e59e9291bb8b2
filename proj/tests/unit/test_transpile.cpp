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

TranspileConfig config(OptLevel level, double tol = 0.0, bool mirror = false,
                       NativeTwoQubit native = NativeTwoQubit::CNOT) {
  TranspileConfig c;
  c.level = level;
  c.tol = tol;
  c.mirror = mirror;
  c.native = native;
  return c;
}

}  // namespace

TEST_CASE("pass_fuse_sq merges and drops single-qubit runs", "[transpile]") {
  auto hh = pass_fuse_sq({GateOp::sq(0, pauli::H()), GateOp::sq(0, pauli::H())});
  CHECK(hh.empty());

  auto two = pass_fuse_sq({GateOp::sq(0, pauli::H()), GateOp::sq(1, pauli::X())});
  CHECK(two.size() == 2);

  auto blocked = pass_fuse_sq({GateOp::sq(0, pauli::H()), GateOp::cnot(0, 1), GateOp::sq(0, pauli::H())});
  CHECK(blocked.size() == 3);

  // A gate on another qubit does not stop the merge.
  auto merged = pass_fuse_sq({GateOp::sq(0, pauli::S()), GateOp::sq(1, pauli::X()), GateOp::sq(0, pauli::H())});
  REQUIRE(merged.size() == 2);
  CompiledCircuit a, b;
  a.width = b.width = 2;
  a.gates = {GateOp::sq(0, pauli::S()), GateOp::sq(1, pauli::X()), GateOp::sq(0, pauli::H())};
  b.gates = merged;
  CHECK(trace_fidelity(oracle::dense_unitary(a), oracle::dense_unitary(b)) > 1 - 1e-12);
}

TEST_CASE("pass_block_combine collapses QVT_2 to one block", "[transpile]") {
  Rng rng(1);
  QvtCircuit c = generate_qvt_circuit(2, rng);
  QvtCircuit combined = pass_block_combine(c);
  CHECK(combined.block_count() == 1);
  CHECK(trace_fidelity(circuit_unitary(combined), circuit_unitary(c)) > 1 - 1e-12);
}

TEST_CASE("pass_block_combine leaves disjoint arrangements alone", "[transpile]") {
  Rng rng(2);
  QvtCircuit c = generate_qvt_circuit(4, rng, 3);
  c.rounds[0].pairs = {{0, 1}, {2, 3}};
  c.rounds[1].pairs = {{0, 2}, {1, 3}};
  c.rounds[2].pairs = {{0, 3}, {1, 2}};
  QvtCircuit combined = pass_block_combine(c);
  CHECK(combined.block_count() == 6);
  CHECK(trace_fidelity(circuit_unitary(combined), circuit_unitary(c)) > 1 - 1e-12);
}

TEST_CASE("pass_block_combine handles reversed pair orientation", "[transpile]") {
  Rng rng(3);
  QvtCircuit c = generate_qvt_circuit(2, rng);
  c.rounds[1].pairs[0] = {1, 0};
  QvtCircuit combined = pass_block_combine(c);
  CHECK(combined.block_count() == 1);
  CHECK(trace_fidelity(circuit_unitary(combined), circuit_unitary(c)) > 1 - 1e-12);
}

TEST_CASE("low level uses three CNOTs per block and fuses across blocks", "[transpile]") {
  for (int n : {4, 6}) {
    Rng rng(10 + n);
    QvtCircuit c = generate_qvt_circuit(n, rng);
    CompiledCircuit out = transpile(c, config(OptLevel::Low));
    CHECK(count_two_qubit_gates(out) == static_cast<std::size_t>(3 * (n / 2) * n));
    // Seven single-qubit gates per block, one merge per qubit per round boundary.
    CHECK(count_single_qubit_gates(out) == static_cast<std::size_t>(7 * (n / 2) * n - n * (n - 1)));
    CHECK(out.gates.back().kind == GateKind::MEASURE_ALL);
  }
}

TEST_CASE("medium level on QVT_2 needs exactly three CNOTs", "[transpile]") {
  for (int i = 0; i < 20; ++i) {
    CompiledCircuit out = transpile(generate_indexed_circuit(2, 5, i), config(OptLevel::Medium));
    CHECK(count_two_qubit_gates(out) == 3);
  }
}

TEST_CASE("medium level averages 18 CNOTs on QVT_4", "[transpile]") {
  const int draws = 10000;
  double blocks = 0;
  for (int i = 0; i < draws; ++i) blocks += double(pass_block_combine(generate_indexed_circuit(4, 6, i)).block_count());
  CHECK(3 * blocks / draws == Approx(18.0).margin(0.2));

  double tq = 0;
  const int compiled = 1000;
  for (int i = 0; i < compiled; ++i)
    tq += double(count_two_qubit_gates(transpile(generate_indexed_circuit(4, 6, i), config(OptLevel::Medium))));
  CHECK(tq / compiled == Approx(18.0).margin(0.5));
}

TEST_CASE("high level with zero tolerance keeps medium gate counts", "[transpile]") {
  for (int i = 0; i < 50; ++i) {
    QvtCircuit c = generate_indexed_circuit(4, 7, i);
    CHECK(count_two_qubit_gates(transpile(c, config(OptLevel::High, 0.0))) ==
          count_two_qubit_gates(transpile(c, config(OptLevel::Medium))));
  }
}

TEST_CASE("high level with tolerance and mirroring saves about a quarter at N=10", "[transpile]") {
  const int n = 10, draws = 200;
  double ratio = 0;
  for (int i = 0; i < draws; ++i) {
    CompiledCircuit out = transpile(generate_indexed_circuit(n, 8, i), config(OptLevel::High, std::pow(10, -2.5), true));
    ratio += double(count_two_qubit_gates(out)) / (3.0 * (n / 2) * n);
  }
  CHECK(ratio / draws == Approx(0.74).margin(0.03));
}

TEST_CASE("exact levels preserve the logical unitary", "[transpile]") {
  for (int n = 2; n <= 6; ++n) {
    for (int i = 0; i < 5; ++i) {
      QvtCircuit c = generate_indexed_circuit(n, 9, i);
      MatX ref = circuit_unitary(c);
      for (const TranspileConfig& cfg : {config(OptLevel::Low), config(OptLevel::Medium), config(OptLevel::High, 0.0),
                                         config(OptLevel::High, 0.0, true),
                                         config(OptLevel::Low, 0.0, false, NativeTwoQubit::ARB_ANGLE),
                                         config(OptLevel::Medium, 0.0, true, NativeTwoQubit::ARB_ANGLE)}) {
        CompiledCircuit out = transpile(c, cfg);
        CHECK(validate(out).empty());
        CHECK(trace_fidelity(circuit_unitary(out), ref) > 1 - 1e-9);
        CHECK(trace_fidelity(oracle::logical_unitary(out), ref) > 1 - 1e-9);
      }
    }
  }
}

TEST_CASE("approximate compilation stays above the block fidelity product", "[transpile]") {
  for (int i = 0; i < 20; ++i) {
    QvtCircuit c = generate_indexed_circuit(4, 10, i);
    TranspileStats st;
    CompiledCircuit out = transpile(c, config(OptLevel::High, 1e-2, true), &st);
    CHECK(st.fidelity_product < 1.0);
    // Per-block errors add up no faster than the product predicts, loosely.
    double f = trace_fidelity(circuit_unitary(out), circuit_unitary(c));
    CHECK(f > 0.8);
    CHECK(st.blocks == pass_block_combine(c).block_count());
  }
}

TEST_CASE("exact levels leave heavy sets unchanged", "[transpile]") {
  for (int i = 0; i < 20; ++i) {
    QvtCircuit c = generate_indexed_circuit(5, 11, i);
    OutputDistribution ideal = statevector_run(c);
    for (OptLevel level : {OptLevel::Low, OptLevel::Medium}) {
      OutputDistribution compiled = statevector_run(transpile(c, config(level)));
      double tv = 0;
      for (std::size_t k = 0; k < ideal.probs.size(); ++k) tv += std::abs(ideal.probs[k] - compiled.probs[k]);
      CHECK(tv / 2 < 1e-9);
      CHECK(heavy_set(ideal).heavy_set == heavy_set(compiled).heavy_set);
    }
  }
}

TEST_CASE("unsupported configurations are rejected", "[transpile]") {
  QvtCircuit c = generate_indexed_circuit(2, 1, 0);
  CHECK_THROWS_AS(transpile(c, config(OptLevel::Low, 0.0, true)), InvalidArgument);
  CHECK_THROWS_AS(transpile(c, config(OptLevel::High, 2.0)), InvalidArgument);
  CHECK_THROWS_AS(opt_level_from_string("ultra"), InvalidArgument);
  CHECK(opt_level_from_string("high") == OptLevel::High);
  QvtCircuit bad = c;
  bad.rounds[0].blocks[0] *= 2.0;
  CHECK_THROWS_AS(transpile(bad, config(OptLevel::Low)), DataError);
}
