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

#include "qvt/heavy.hpp"

#include <algorithm>
#include <cmath>

namespace qvt {

double median_of(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median_of: empty list");
  const std::size_t n = values.size();
  const std::size_t mid = n / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (n % 2) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

HeavyAnalysis heavy_set(const OutputDistribution& ideal) {
  HeavyAnalysis h;
  h.median = median_of(ideal.probs);
  for (std::size_t k = 0; k < ideal.probs.size(); ++k)
    if (ideal.probs[k] > h.median) {
      h.heavy_set.push_back(k);
      h.ideal_heavy_prob += ideal.probs[k];
    }
  return h;
}

double heavy_probability(const std::vector<std::uint64_t>& heavy, const OutputDistribution& dist) {
  double s = 0;
  for (std::uint64_t k : heavy) {
    if (k >= dist.probs.size()) throw InvalidArgument("heavy_probability: index outside distribution");
    s += dist.probs[k];
  }
  return s;
}

HeavyAnalysis analyze(const OutputDistribution& ideal, const OutputDistribution& noisy) {
  if (ideal.probs.size() != noisy.probs.size()) throw InvalidArgument("analyze: distribution sizes differ");
  HeavyAnalysis h = heavy_set(ideal);
  h.noisy_heavy_prob = heavy_probability(h.heavy_set, noisy);
  return h;
}

double pooled_median_heavy_mean(const std::vector<OutputDistribution>& ideals) {
  if (ideals.empty()) throw InvalidArgument("pooled_median_heavy_mean: no circuits");
  std::vector<double> pool;
  for (const auto& d : ideals) pool.insert(pool.end(), d.probs.begin(), d.probs.end());
  const double med = median_of(pool);
  double total = 0;
  for (const auto& d : ideals)
    for (double p : d.probs)
      if (p > med) total += p;
  return total / static_cast<double>(ideals.size());
}

double h_ideal_haar(int n) {
  if (n < 1) throw InvalidArgument("h_ideal_haar: N must be >= 1");
  const double d = std::ldexp(1.0, n);
  return std::pow(2.0, d / (1 - d)) * (1 + d * std::expm1(std::log(2.0) / (d - 1)));
}

double haar_output_pdf(double p, int n) {
  if (n < 1) throw InvalidArgument("haar_output_pdf: N must be >= 1");
  if (!(p >= 0 && p <= 1)) throw InvalidArgument("haar_output_pdf: p must be in [0, 1]");
  const double d = std::ldexp(1.0, n);
  return (d - 1) * std::pow(1 - p, d - 2);
}

double haar_output_cdf(double p, int n) {
  if (n < 1) throw InvalidArgument("haar_output_cdf: N must be >= 1");
  p = std::clamp(p, 0.0, 1.0);
  const double d = std::ldexp(1.0, n);
  return -std::expm1((d - 1) * std::log1p(-p));
}

double ks_statistic(std::vector<double> sample, int n) {
  if (sample.empty()) throw InvalidArgument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double m = static_cast<double>(sample.size());
  double d = 0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = haar_output_cdf(sample[i], n);
    d = std::max({d, (static_cast<double>(i) + 1) / m - f, f - static_cast<double>(i) / m});
  }
  return d;
}

double ks_statistic_binned(const std::vector<double>& sample, int n, int bins, double p_max_scaled) {
  if (sample.empty()) throw InvalidArgument("ks_statistic_binned: empty sample");
  if (bins < 1 || !(p_max_scaled > 0)) throw InvalidArgument("ks_statistic_binned: bad binning");
  const double d = std::ldexp(1.0, n);
  std::vector<double> counts(static_cast<std::size_t>(bins) + 1, 0.0);
  for (double p : sample) {
    const double x = p * d / p_max_scaled * bins;
    const std::size_t b = x >= bins ? static_cast<std::size_t>(bins) : static_cast<std::size_t>(std::max(0.0, x));
    counts[b] += 1;
  }
  double cum = 0, stat = 0;
  const double m = static_cast<double>(sample.size());
  for (int b = 0; b < bins; ++b) {
    cum += counts[static_cast<std::size_t>(b)];
    const double edge = (b + 1) * p_max_scaled / bins / d;
    stat = std::max(stat, std::abs(cum / m - haar_output_cdf(edge, n)));
  }
  return stat;
}

double mean_single_qubit_entropy(const VecX& state) {
  int n = 0;
  while ((Eigen::Index{1} << n) < state.size()) ++n;
  if ((Eigen::Index{1} << n) != state.size() || n == 0)
    throw InvalidArgument("mean_single_qubit_entropy: state size must be a power of two >= 2");
  double total = 0;
  for (int q = 0; q < n; ++q) {
    const Eigen::Index bit = Eigen::Index{1} << q;
    double r00 = 0, r11 = 0;
    cplx r01 = 0;
    for (Eigen::Index k = 0; k < state.size(); ++k) {
      if (k & bit) continue;
      r00 += std::norm(state(k));
      r11 += std::norm(state(k | bit));
      r01 += state(k) * std::conj(state(k | bit));
    }
    const double tr = r00 + r11;
    const double disc = std::sqrt(std::max(0.0, (r00 - r11) * (r00 - r11) / 4 + std::norm(r01)));
    for (double lam : {tr / 2 + disc, tr / 2 - disc}) {
      const double l = lam / tr;
      if (l > 1e-15) total -= l * std::log2(l);
    }
  }
  return total / n;
}

CircuitFidelityEstimate circuit_fidelity_estimate(double h_hat, double h_ideal, int n) {
  if (!(h_ideal > 0.5)) throw InvalidArgument("circuit_fidelity_estimate: h_ideal must exceed 1/2");
  if (n < 1) throw InvalidArgument("circuit_fidelity_estimate: N must be >= 1");
  const double d = std::ldexp(1.0, n);
  const double raw = 1 - (d - 1) / d * (h_ideal - h_hat) / (h_ideal - 0.5);
  CircuitFidelityEstimate e;
  e.value = std::clamp(raw, 1 / d, 1.0);
  e.clamped = e.value != raw;
  return e;
}

std::vector<double> distribution_moments(const std::vector<double>& values, const std::vector<int>& orders) {
  if (values.size() < 2) throw InvalidArgument("distribution_moments: need at least two values");
  const double m = static_cast<double>(values.size());
  double mean = 0;
  for (double v : values) mean += v;
  mean /= m;
  std::vector<double> out;
  for (int k : orders) {
    if (k < 1) throw InvalidArgument("distribution_moments: order must be >= 1");
    double s = 0;
    for (double v : values) s += std::pow(v - mean, k);
    out.push_back(s / m);
  }
  return out;
}

}  // namespace qvt
