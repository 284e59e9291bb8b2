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

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qvt/model.hpp"
#include "qvt/random.hpp"

using namespace qvt;
using Catch::Matchers::ContainsSubstring;

namespace {

bool has_message(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("circuit_unitary of an empty gate list is the identity", "[model]") {
  CompiledCircuit c;
  c.width = 2;
  MatX u = circuit_unitary(c);
  CHECK((u - MatX::Identity(4, 4)).norm() < 1e-14);
}

TEST_CASE("circuit_unitary of one CNOT matches the permutation matrix", "[model]") {
  CompiledCircuit c;
  c.width = 2;
  c.gates.push_back(GateOp::cnot(0, 1));
  // Control is qubit 0 (the low bit): basis states 1 and 3 swap.
  MatX expect = MatX::Zero(4, 4);
  expect(0, 0) = expect(2, 2) = expect(1, 3) = expect(3, 1) = 1.0;
  CHECK((circuit_unitary(c) - expect).norm() < 1e-14);
}

TEST_CASE("two-round QVT_2 unitary is the block product", "[model]") {
  Rng rng(11);
  QvtCircuit c = generate_qvt_circuit(2, rng);
  REQUIRE(c.rounds.size() == 2);
  // Block local index puts the first pair qubit in the high bit.
  Mat4 prod = c.rounds[1].blocks[0] * c.rounds[0].blocks[0];
  if (c.rounds[0].pairs[0].first == 0 && c.rounds[1].pairs[0].first == 0) {
    MatX swapped = oracle::swap4() * prod * oracle::swap4();
    CHECK(trace_fidelity(circuit_unitary(c), swapped) > 1 - 1e-12);
  }
  CHECK(trace_fidelity(circuit_unitary(c), oracle::dense_unitary(c)) > 1 - 1e-12);
}

TEST_CASE("circuit_unitary respects concatenation", "[model]") {
  for (int n = 2; n <= 4; ++n) {
    Rng rng(100 + n);
    QvtCircuit a = generate_qvt_circuit(n, rng);
    QvtCircuit b = generate_qvt_circuit(n, rng);
    QvtCircuit ab = a;
    ab.rounds.insert(ab.rounds.end(), b.rounds.begin(), b.rounds.end());
    MatX lhs = circuit_unitary(ab);
    MatX rhs = circuit_unitary(b) * circuit_unitary(a);
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("circuit_unitary rejects widths beyond the dense cap", "[model]") {
  CompiledCircuit c;
  c.width = kMaxDenseWidth + 1;
  CHECK_THROWS_AS(circuit_unitary(c), InvalidArgument);
}

TEST_CASE("validate accepts generated circuits", "[model]") {
  for (int n = 2; n <= 7; ++n) {
    Rng rng(n);
    CHECK(validate(generate_qvt_circuit(n, rng)).empty());
  }
}

TEST_CASE("validate reports a repeated qubit", "[model]") {
  Rng rng(3);
  QvtCircuit c = generate_qvt_circuit(4, rng);
  c.rounds[1].pairs[0] = {0, 0};
  auto v = validate(c);
  CHECK(has_message(v, "pair not disjoint"));
}

TEST_CASE("validate requires an idle qubit for odd N", "[model]") {
  Rng rng(5);
  QvtCircuit c = generate_qvt_circuit(5, rng);
  c.rounds[0].pairs = {{0, 1}, {2, 3}, {4, 0}};
  c.rounds[0].blocks.push_back(Mat4::Identity());
  c.rounds[0].idle.reset();
  auto v = validate(c);
  CHECK(has_message(v, "odd N requires one idle qubit"));
  CHECK(has_message(v, "pair not disjoint"));
  CHECK(v.size() >= 3);  // all violations are returned
}

TEST_CASE("validate flags non-unitary blocks and wrong round counts", "[model]") {
  Rng rng(9);
  QvtCircuit c = generate_qvt_circuit(4, rng);
  c.rounds[2].blocks[1] *= 1.01;
  c.rounds.pop_back();
  auto v = validate(c);
  CHECK(has_message(v, "not unitary"));
  CHECK(has_message(v, "expected 4 rounds"));
}

TEST_CASE("QVT circuit JSON round trip is byte-identical", "[model]") {
  for (int n = 2; n <= 6; ++n) {
    Rng rng(40 + n);
    QvtCircuit c = generate_qvt_circuit(n, rng);
    std::string s1 = to_json(c);
    QvtCircuit back = qvt_circuit_from_json(s1);
    CHECK(to_json(back) == s1);
    CHECK(back.seed == c.seed);
    CHECK(!is_compiled_json(s1));
  }
}

TEST_CASE("compiled circuit JSON round trip is byte-identical", "[model]") {
  CompiledCircuit c;
  c.width = 3;
  c.source_seed = 77;
  std::mt19937_64 gen(1);
  c.gates.push_back(GateOp::sq(0, oracle::gram_schmidt_haar(2, gen)));
  c.gates.push_back(GateOp::cnot(2, 1));
  c.gates.push_back(GateOp::rxx(0, 2, 0.3));
  c.gates.push_back(GateOp::rzz(1, 0, -1.25));
  c.gates.push_back(GateOp::measure_all());
  c.output_relabeling = {2, 0, 1};
  std::string s1 = to_json(c);
  CHECK(is_compiled_json(s1));
  CompiledCircuit back = compiled_circuit_from_json(s1);
  CHECK(to_json(back) == s1);
  CHECK((circuit_unitary(back) - circuit_unitary(c)).norm() < 1e-15);
}

TEST_CASE("matrix loading re-projects small errors and rejects large ones", "[model]") {
  Rng rng(2);
  QvtCircuit c = generate_qvt_circuit(2, rng);
  QvtCircuit slightly = c;
  slightly.rounds[0].blocks[0](0, 0) += 1e-10;
  QvtCircuit loaded = qvt_circuit_from_json(to_json(slightly));
  CHECK(unitarity_error(loaded.rounds[0].blocks[0]) < 1e-13);

  QvtCircuit badly = c;
  badly.rounds[0].blocks[0](0, 0) += 1e-5;
  CHECK_THROWS_AS(qvt_circuit_from_json(to_json(badly)), DataError);
}

TEST_CASE("malformed JSON raises DataError", "[model]") {
  CHECK_THROWS_AS(qvt_circuit_from_json("{not json"), DataError);
  CHECK_THROWS_AS(qvt_circuit_from_json("{\"width\":2}"), DataError);
  CHECK_THROWS_AS(compiled_circuit_from_json("{\"width\":2,\"gates\":[{\"kind\":\"FOO\",\"qubits\":[0]}]}"), DataError);
}

TEST_CASE("compiled circuit unitary maps physical rows to logical rows", "[model]") {
  Rng rng(21);
  CompiledCircuit c;
  c.width = 3;
  for (int i = 0; i < 6; ++i) {
    c.gates.push_back(GateOp::sq(static_cast<int>(rng.below(3)), haar_unitary(2, rng)));
    c.gates.push_back(GateOp::cnot(i % 3, (i + 1) % 3));
  }
  c.output_relabeling = {1, 2, 0};
  CHECK((circuit_unitary(c) - oracle::logical_unitary(c)).norm() < 1e-12);
}

TEST_CASE("gate kind names round trip", "[model]") {
  for (GateKind k : {GateKind::SQ, GateKind::CNOT, GateKind::RXX, GateKind::RYY, GateKind::RZZ, GateKind::MEASURE_ALL})
    CHECK(gate_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(gate_kind_from_string("CZ"), DataError);
}

TEST_CASE("gate counters", "[model]") {
  CompiledCircuit c;
  c.width = 2;
  c.gates = {GateOp::sq(0, pauli::H()), GateOp::cnot(0, 1), GateOp::rzz(0, 1, 0.1), GateOp::measure_all()};
  CHECK(count_two_qubit_gates(c) == 2);
  CHECK(count_single_qubit_gates(c) == 1);
}
