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

#include "experiment.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

#include "qvt/heavy.hpp"
#include "qvt/parallel.hpp"
#include "qvt/random.hpp"
#include "qvt/sim.hpp"

namespace qvt::cli {

using nlohmann::json;

TranspileConfig transpile_config(const ExperimentConfig& cfg) {
  TranspileConfig t;
  t.level = cfg.level;
  t.native = cfg.native;
  if (cfg.level == OptLevel::High) {
    t.mirror = cfg.mirror;
    t.tol = std::min(cfg.eps, 1.0);
  } else {
    t.mirror = cfg.native == NativeTwoQubit::ARB_ANGLE && cfg.mirror;
  }
  return t;
}

namespace {

// Logical-order amplitudes permuted onto physical wires.
VecX to_physical_order(const VecX& logical, const std::vector<int>& relabeling) {
  VecX out(logical.size());
  for (Eigen::Index x = 0; x < logical.size(); ++x) {
    std::uint64_t y = 0;
    for (std::size_t l = 0; l < relabeling.size(); ++l)
      if ((static_cast<std::uint64_t>(x) >> l) & 1) y |= 1ULL << relabeling[l];
    out(static_cast<Eigen::Index>(y)) = logical(x);
  }
  return out;
}

std::uint64_t sample_heavy(const std::vector<double>& probs, const std::vector<std::uint64_t>& heavy, int shots,
                           Rng& rng) {
  std::discrete_distribution<std::uint64_t> pick(probs.begin(), probs.end());
  std::vector<char> is_heavy(probs.size(), 0);
  for (auto h : heavy) is_heavy[h] = 1;
  std::uint64_t count = 0;
  for (int s = 0; s < shots; ++s) count += is_heavy[pick(rng)];
  return count;
}

}  // namespace

ExperimentData ExperimentResult::data() const {
  ExperimentData d;
  for (const auto& r : records) d.per_circuit.push_back({r.heavy_count, r.shots, r.seed});
  return d;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.n < 2) throw InvalidArgument("experiment: N must be >= 2");
  if (cfg.circuits < 1) throw InvalidArgument("experiment: need at least one circuit");
  if (cfg.shots < 0) throw InvalidArgument("experiment: shots must be >= 0");
  const ErrorModelSpec& spec = find_model(cfg.model);
  const NoiseSpec noise = resolve_model(spec, cfg.eps);
  const bool dense = !noise.is_zero() || cfg.state_fidelity;
  if (dense && cfg.n > 9) throw InvalidArgument("experiment: density simulation supports N <= 9");
  const TranspileConfig tcfg = transpile_config(cfg);
  check_config(tcfg);

  ExperimentResult res;
  res.config = cfg;
  res.records.resize(static_cast<std::size_t>(cfg.circuits));
  parallel_for(res.records.size(), [&](std::size_t i) {
    const QvtCircuit circuit = generate_indexed_circuit(cfg.n, cfg.seed, i);
    const CompiledCircuit compiled = transpile(circuit, tcfg);
    const VecX ideal_state = statevector(circuit);
    const HeavyAnalysis h = heavy_set(probabilities(ideal_state));
    OutputDistribution noisy;
    CircuitRecord& rec = res.records[i];
    if (dense) {
      const DensityMatrix rho = density_evolve(compiled, noise);
      noisy.width = cfg.n;
      noisy.probs = to_logical_order(apply_readout_error(rho.diagonal(), cfg.n, noise.e_meas), compiled.output_relabeling);
      if (cfg.state_fidelity) rec.state_fidelity = rho.fidelity(to_physical_order(ideal_state, compiled.output_relabeling));
    } else {
      noisy = statevector_run(compiled);
    }
    rec.seed = circuit.seed;
    rec.two_qubit_gates = count_two_qubit_gates(compiled);
    rec.ideal_heavy = h.ideal_heavy_prob;
    rec.noisy_heavy = heavy_probability(h.heavy_set, noisy);
    rec.shots = static_cast<std::uint64_t>(cfg.shots);
    Rng shot_rng = Rng(circuit.seed).substream(1);
    rec.heavy_count = sample_heavy(noisy.probs, h.heavy_set, cfg.shots, shot_rng);
  });

  const double m = static_cast<double>(res.records.size());
  for (const auto& r : res.records) {
    res.mean_ideal += r.ideal_heavy / m;
    res.mean_noisy += r.noisy_heavy / m;
  }
  double var = 0;
  for (const auto& r : res.records) var += (r.noisy_heavy - res.mean_noisy) * (r.noisy_heavy - res.mean_noisy);
  res.std_noisy = res.records.size() > 1 ? std::sqrt(var / (m - 1)) : 0.0;
  return res;
}

std::string to_json(const ExperimentData& data) {
  json j;
  j["per_circuit"] = json::array();
  for (const auto& c : data.per_circuit)
    j["per_circuit"].push_back({{"heavy", c.heavy}, {"shots", c.shots}, {"seed", c.circuit_seed}});
  return j.dump();
}

ExperimentData experiment_data_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ExperimentData d;
    for (const auto& c : j.at("per_circuit"))
      d.per_circuit.push_back({c.at("heavy").get<std::uint64_t>(), c.at("shots").get<std::uint64_t>(),
                               c.value("seed", std::uint64_t{0})});
    d.check();
    return d;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed experiment data: ") + e.what());
  }
}

std::string to_json(const CiResult& ci) {
  json j{{"method", to_string(ci.method)},      {"h_hat", ci.h_hat},
         {"lower", ci.lower},                   {"confidence", ci.confidence},
         {"n_circuits", ci.n_circuits},         {"total_shots", ci.total_shots},
         {"passed", ci.passed}};
  if (ci.n_bootstrap) {
    j["n_bootstrap"] = *ci.n_bootstrap;
    j["boot_mean"] = ci.boot_mean;
    j["boot_std"] = ci.boot_std;
    j["boot_quantile"] = ci.boot_quantile;
  }
  return j.dump();
}

}  // namespace qvt::cli
