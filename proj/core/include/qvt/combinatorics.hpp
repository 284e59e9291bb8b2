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

#include <boost/multiprecision/cpp_int.hpp>

#include "qvt/random.hpp"

namespace qvt {

using BigInt = boost::multiprecision::cpp_int;

/// Number of arrangements (perfect matchings, one idle qubit for odd N).
BigInt f_arrangements(int n);
/// Arrangements sharing no pair with a fixed reference arrangement.
BigInt g_no_repeats(int n);
/// Arrangements sharing exactly m pairs with a fixed reference arrangement.
BigInt h_exact_repeats(int n, int m);

/// Expected two-qubit gate count of a combined N-round circuit with 3 CNOTs
/// per block.
double expected_tq_gates(int n);
/// expected_tq_gates(n) / (3 floor(N/2)).
double expected_rounds(int n);

struct SavingsSample {
  double mean = 0.0;
  double std_dev = 0.0;
};

/// Sample two-qubit gate counts after combining repeated pairs.
SavingsSample monte_carlo_savings(int n, int trials, Rng& rng);

struct GateCountReport {
  int n = 0;
  BigInt f;
  double expected_tq = 0.0;
  double expected_rounds = 0.0;
  double savings_ratio = 0.0;
  double std_dev = 0.0;  // of the savings ratio, by Monte Carlo
};

GateCountReport gate_count_report(int n, int trials, Rng& rng);

}  // namespace qvt
