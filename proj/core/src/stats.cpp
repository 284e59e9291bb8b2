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

#include "qvt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "qvt/parallel.hpp"

namespace qvt {

bool ExperimentData::uniform_shots() const {
  return std::all_of(per_circuit.begin(), per_circuit.end(),
                     [&](const CircuitCounts& c) { return c.shots == per_circuit.front().shots; });
}

std::uint64_t ExperimentData::total_shots() const {
  std::uint64_t s = 0;
  for (const auto& c : per_circuit) s += c.shots;
  return s;
}

std::uint64_t ExperimentData::total_heavy() const {
  std::uint64_t s = 0;
  for (const auto& c : per_circuit) s += c.heavy;
  return s;
}

void ExperimentData::check() const {
  if (per_circuit.empty()) throw DataError("experiment data has no circuits");
  for (const auto& c : per_circuit)
    if (c.heavy > c.shots) throw DataError("heavy count exceeds shots");
  if (total_shots() == 0) throw DataError("experiment data has zero shots");
}

const char* to_string(CiMethod m) { return m == CiMethod::Original ? "original" : "bootstrap"; }

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw InvalidArgument("quantile_sorted: empty sample");
  if (!(q >= 0 && q <= 1)) throw InvalidArgument("quantile_sorted: q must be in [0, 1]");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

CiResult ci_original(const ExperimentData& data) {
  data.check();
  if (!data.uniform_shots()) throw DataError("ci_original: requires the same number of shots for every circuit");
  CiResult r;
  r.method = CiMethod::Original;
  r.n_circuits = data.n_circuits();
  r.total_shots = data.total_shots();
  r.h_hat = static_cast<double>(data.total_heavy()) / static_cast<double>(r.total_shots);
  r.lower = r.h_hat - 2 * std::sqrt(r.h_hat * (1 - r.h_hat) / static_cast<double>(r.n_circuits));
  r.passed = r.lower > 2.0 / 3.0;
  return r;
}

namespace {

struct Group {
  std::uint64_t heavy, shots, count;
};

std::vector<Group> group_circuits(const ExperimentData& data) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> m;
  for (const auto& c : data.per_circuit) ++m[{c.heavy, c.shots}];
  std::vector<Group> g;
  for (const auto& [k, n] : m) g.push_back({k.first, k.second, n});
  return g;
}

// One replicate: n_c circuits resampled (multinomial over groups), heavy
// counts redrawn at each circuit's observed frequency.
double bootstrap_replicate(const std::vector<Group>& groups, std::uint64_t n_c, Rng& rng) {
  std::uint64_t remaining = n_c, remaining_weight = n_c;
  double heavy = 0, shots = 0;
  for (const Group& g : groups) {
    if (remaining == 0) break;
    std::uint64_t m = remaining;
    if (g.count < remaining_weight) {
      std::binomial_distribution<std::uint64_t> pick(remaining, static_cast<double>(g.count) / static_cast<double>(remaining_weight));
      m = pick(rng);
    }
    remaining -= m;
    remaining_weight -= g.count;
    if (m == 0 || g.shots == 0) continue;
    const std::uint64_t trials = m * g.shots;
    std::uint64_t h = 0;
    if (g.heavy == g.shots)
      h = trials;
    else if (g.heavy > 0)
      h = std::binomial_distribution<std::uint64_t>(trials, static_cast<double>(g.heavy) / static_cast<double>(g.shots))(rng);
    heavy += static_cast<double>(h);
    shots += static_cast<double>(trials);
  }
  return shots > 0 ? heavy / shots : 0.0;
}

}  // namespace

CiResult ci_bootstrap(const ExperimentData& data, int n_b, double confidence, std::uint64_t seed) {
  data.check();
  if (n_b < 100) throw InvalidArgument("ci_bootstrap: n_b must be >= 100");
  if (!(confidence > 0 && confidence < 100)) throw InvalidArgument("ci_bootstrap: confidence must be in (0, 100)");
  const auto groups = group_circuits(data);
  std::vector<double> reps(static_cast<std::size_t>(n_b));
  parallel_for(reps.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    reps[i] = bootstrap_replicate(groups, data.n_circuits(), rng);
  });
  CiResult r;
  r.method = CiMethod::Bootstrap;
  r.confidence = confidence;
  r.n_circuits = data.n_circuits();
  r.total_shots = data.total_shots();
  r.h_hat = static_cast<double>(data.total_heavy()) / static_cast<double>(r.total_shots);
  r.n_bootstrap = n_b;
  double mean = 0;
  for (double v : reps) mean += v;
  mean /= n_b;
  double var = 0;
  for (double v : reps) var += (v - mean) * (v - mean);
  std::sort(reps.begin(), reps.end());
  r.boot_mean = mean;
  r.boot_std = std::sqrt(var / std::max(1, n_b - 1));
  r.boot_quantile = quantile_sorted(reps, confidence / 100);
  r.lower = 2 * mean - r.boot_quantile;
  r.passed = r.lower > 2.0 / 3.0;
  return r;
}

CoverageResult coverage_experiment(const std::vector<double>& pool, double true_success, int n_c, int n_s, int reps,
                                   CiMethod method, std::uint64_t seed, int n_b, double confidence) {
  if (pool.empty()) throw InvalidArgument("coverage_experiment: empty pool");
  if (n_c < 1 || n_s < 1 || reps < 1) throw InvalidArgument("coverage_experiment: n_c, n_s and reps must be >= 1");
  for (double h : pool)
    if (!(h >= 0 && h <= 1)) throw InvalidArgument("coverage_experiment: pool values must be in [0, 1]");
  std::vector<char> covered(static_cast<std::size_t>(reps));
  std::vector<double> width(static_cast<std::size_t>(reps));
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(rep)));
    ExperimentData data;
    for (int c = 0; c < n_c; ++c) {
      const double h = pool[rng.below(pool.size())];
      CircuitCounts cc;
      cc.shots = static_cast<std::uint64_t>(n_s);
      cc.heavy = std::binomial_distribution<std::uint64_t>(cc.shots, h)(rng);
      data.per_circuit.push_back(cc);
    }
    const CiResult ci = method == CiMethod::Original ? ci_original(data) : ci_bootstrap(data, n_b, confidence, rng());
    covered[static_cast<std::size_t>(rep)] = ci.lower <= true_success;
    width[static_cast<std::size_t>(rep)] = ci.h_hat - ci.lower;
  }
  CoverageResult out;
  out.reps = reps;
  for (int i = 0; i < reps; ++i) {
    out.coverage += covered[static_cast<std::size_t>(i)];
    out.mean_width += width[static_cast<std::size_t>(i)];
  }
  out.coverage /= reps;
  out.mean_width /= reps;
  return out;
}

std::vector<CurvePoint> passing_curve(const ExperimentData& data, int n_b, std::uint64_t seed, std::size_t stride,
                                      std::size_t min_prefix) {
  data.check();
  if (data.n_circuits() < 10) throw InvalidArgument("passing_curve: need at least 10 circuits");
  if (stride < 1 || min_prefix < 1) throw InvalidArgument("passing_curve: stride and min_prefix must be >= 1");
  std::vector<std::size_t> prefixes;
  for (std::size_t k = std::min(min_prefix, data.n_circuits()); k <= data.n_circuits(); k += stride) prefixes.push_back(k);
  if (prefixes.back() != data.n_circuits()) prefixes.push_back(data.n_circuits());
  std::vector<CurvePoint> curve(prefixes.size());
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    ExperimentData part;
    part.per_circuit.assign(data.per_circuit.begin(), data.per_circuit.begin() + static_cast<std::ptrdiff_t>(prefixes[i]));
    curve[i].prefix = prefixes[i];
    curve[i].lower_original = part.uniform_shots() ? ci_original(part).lower : std::nan("");
    curve[i].lower_bootstrap = ci_bootstrap(part, n_b, kTwoSigmaConfidence, derive_seed(seed, prefixes[i])).lower;
  }
  return curve;
}

std::optional<std::size_t> crossing_prefix(const std::vector<CurvePoint>& curve, CiMethod method) {
  std::optional<std::size_t> cross;
  for (const auto& p : curve) {
    const double v = method == CiMethod::Original ? p.lower_original : p.lower_bootstrap;
    if (v > 2.0 / 3.0) {
      if (!cross) cross = p.prefix;
    } else {
      cross.reset();
    }
  }
  return cross;
}

}  // namespace qvt
