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
#include <vector>

#include "qvt/sim.hpp"

namespace qvt {

struct HeavyAnalysis {
  double median = 0.0;
  std::vector<std::uint64_t> heavy_set;  // ascending output indices
  double ideal_heavy_prob = 0.0;
  std::optional<double> noisy_heavy_prob;
};

/// Median of an even-length list is the mean of the two central values;
/// outputs strictly above it are heavy.
double median_of(std::vector<double> values);
HeavyAnalysis heavy_set(const OutputDistribution& ideal);
double heavy_probability(const std::vector<std::uint64_t>& heavy, const OutputDistribution& dist);
HeavyAnalysis analyze(const OutputDistribution& ideal, const OutputDistribution& noisy);

/// Mean heavy probability when one median is taken over the pooled outputs
/// of all circuits instead of per circuit.
double pooled_median_heavy_mean(const std::vector<OutputDistribution>& ideals);

/// Expected ideal heavy probability over Haar-random N-qubit states.
double h_ideal_haar(int n);
/// Density of a single output probability of a Haar-random state.
double haar_output_pdf(double p, int n);
double haar_output_cdf(double p, int n);

/// Sup distance between the empirical CDF of `sample` and the Haar CDF.
double ks_statistic(std::vector<double> sample, int n);
/// Same distance evaluated only at the edges of `bins` equal bins of p * 2^N
/// over [0, p_max_scaled].
double ks_statistic_binned(const std::vector<double>& sample, int n, int bins, double p_max_scaled = 10.0);

/// Mean von Neumann entropy (bits) of the single-qubit reduced states.
double mean_single_qubit_entropy(const VecX& state);

struct CircuitFidelityEstimate {
  double value = 0.0;
  bool clamped = false;
};

CircuitFidelityEstimate circuit_fidelity_estimate(double h_hat, double h_ideal, int n);

/// Central sample moments of the given orders (default 2..6).
std::vector<double> distribution_moments(const std::vector<double>& values, const std::vector<int>& orders = {2, 3, 4, 5, 6});

}  // namespace qvt
