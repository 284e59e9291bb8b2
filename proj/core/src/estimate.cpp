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

#include "qvt/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "qvt/combinatorics.hpp"
#include "qvt/decompose.hpp"
#include "qvt/heavy.hpp"
#include "qvt/random.hpp"

namespace qvt {

double convert(double x, FidelityKind from, FidelityKind to, int d) {
  if (d < 2) throw InvalidArgument("convert: dimension must be >= 2");
  if (!std::isfinite(x)) throw InvalidArgument("convert: value must be finite");
  const double dd = d, d2 = dd * dd;
  double p = 0;
  switch (from) {
    case FidelityKind::Avg:
      if (x < 0 || x > 1) throw InvalidArgument("convert: average fidelity must be in [0, 1]");
      p = (dd * x - 1) / (dd - 1);
      break;
    case FidelityKind::Proc:
      if (x < 0 || x > 1) throw InvalidArgument("convert: process fidelity must be in [0, 1]");
      p = (d2 * x - 1) / (d2 - 1);
      break;
    case FidelityKind::Dep:
      if (x < -1 / (d2 - 1) || x > 1) throw InvalidArgument("convert: depolarizing parameter out of range");
      p = x;
      break;
  }
  switch (to) {
    case FidelityKind::Avg: return ((dd - 1) * p + 1) / dd;
    case FidelityKind::Proc: return ((d2 - 1) * p + 1) / d2;
    case FidelityKind::Dep: return p;
  }
  return p;
}

double ErrorModelSpec::normalization() const {
  return 12.0 / 5.0 * scales[kSqDep] + scales[kTqDep] + scales[kTqCoherent];
}

const std::vector<ErrorModelSpec>& builtin_models() {
  static const std::vector<ErrorModelSpec> models = [] {
    auto m = [](std::string name, std::array<double, kNumSources> s) {
      ErrorModelSpec e;
      e.name = std::move(name);
      e.scales = s;
      return e;
    };
    std::vector<ErrorModelSpec> v{
        m("SQ depolarizing", {10, 1, 0, 0, 0, 1}), m("TQ depolarizing", {1, 10, 0, 0, 0, 1}),
        m("TQ coherent", {1, 0, 10, 0, 0, 1}),     m("Measurement", {1, 10, 0, 0, 0, 10}),
        m("Crosstalk", {1, 10, 0, 0, 1, 1}),       m("Memory", {1, 10, 0, 1, 0, 1}),
        m("TQ mixed", {1, 5, 5, 0, 0, 1}),         m("Semi-realistic", {1, 10, 1, 0.5, 0.5, 1}),
    };
    ErrorModelSpec unscaled = v[1];
    unscaled.name = "Unscaled";
    unscaled.fixed[kTqCrosstalk] = 1e-3;
    v.push_back(unscaled);
    return v;
  }();
  return models;
}

const ErrorModelSpec& find_model(const std::string& name) {
  auto fold = [](std::string s) {
    std::string out;
    for (char c : s)
      if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string key = fold(name);
  for (const auto& m : builtin_models())
    if (fold(m.name) == key) return m;
  throw InvalidArgument("unknown error model '" + name + "'");
}

double max_eps(const ErrorModelSpec& spec) {
  const double n = spec.normalization();
  if (spec.scales[kTqCoherent] <= 0 || n <= 0) return std::numeric_limits<double>::infinity();
  return 4 * n / (5 * spec.scales[kTqCoherent]);
}

namespace {

void check_spec(const ErrorModelSpec& spec, double eps) {
  for (int i = 0; i < kNumSources; ++i)
    if (!(spec.scales[static_cast<std::size_t>(i)] >= 0) || !(spec.fixed[static_cast<std::size_t>(i)] >= 0))
      throw InvalidArgument("error model scales must be non-negative");
  if (!(eps >= 0) || !std::isfinite(eps)) throw InvalidArgument("eps must be finite and >= 0");
  if (eps > max_eps(spec)) throw InvalidArgument("eps too large for the coherent rotation angle");
}

}  // namespace

std::array<double, kNumSources> source_infidelities(const ErrorModelSpec& spec, double eps) {
  check_spec(spec, eps);
  const double n = spec.normalization();
  std::array<double, kNumSources> r{};
  for (int i = 0; i < kNumSources; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const bool normalized = i == kSqDep || i == kTqDep || i == kTqCoherent;
    const double scaled = normalized ? (n > 0 ? spec.scales[k] * eps / n : 0.0) : spec.scales[k] * eps;
    r[k] = scaled + spec.fixed[k];
  }
  return r;
}

NoiseSpec resolve_model(const ErrorModelSpec& spec, double eps) {
  const auto r = source_infidelities(spec, eps);
  NoiseSpec ns;
  ns.p_sq_dep = 2 * r[kSqDep];
  ns.p_tq_dep = 4 * r[kTqDep] / 3;
  ns.theta_zz = 2 * std::acos(std::sqrt(std::max(0.0, (4 - 5 * r[kTqCoherent]) / 4)));
  ns.q_dephase = 1.5 * r[kTqMemory];
  ns.p_xtalk = 2 * r[kTqCrosstalk];
  ns.e_meas = r[kMeasure];
  ns.check();
  return ns;
}

namespace {

// Per-block best infidelity for k = 0, 1, 2 CNOTs, sorted per k.
struct GateTable {
  std::array<std::vector<double>, 3> direct, mirrored;
};

const GateTable& gate_table() {
  static const GateTable table = [] {
    constexpr int kSamples = 10000;
    GateTable t;
    Rng rng(0x5eed0f);
    for (int i = 0; i < kSamples; ++i) {
      const Mat4 u = haar_su4(rng);
      const auto fd = cnot_class_fidelities(weyl_decompose(u));
      const auto fm = cnot_class_fidelities(weyl_decompose(swap_matrix() * u));
      for (std::size_t k = 0; k < 3; ++k) {
        t.direct[k].push_back(1 - fd[k]);
        t.mirrored[k].push_back(1 - std::max(fd[k], fm[k]));
      }
    }
    for (std::size_t k = 0; k < 3; ++k) {
      std::sort(t.direct[k].begin(), t.direct[k].end());
      std::sort(t.mirrored[k].begin(), t.mirrored[k].end());
    }
    return t;
  }();
  return table;
}

}  // namespace

double gates_per_block(double tol, bool mirror) {
  if (!(tol >= 0 && tol <= 1)) throw InvalidArgument("gates_per_block: tol must be in [0, 1]");
  const auto& cols = mirror ? gate_table().mirrored : gate_table().direct;
  // CNOT count = number of k < 3 whose best infidelity misses tol.
  double mean = 0;
  for (const auto& col : cols) {
    const auto ok = std::upper_bound(col.begin(), col.end(), tol + 1e-12) - col.begin();
    mean += static_cast<double>(col.size() - static_cast<std::size_t>(ok)) / static_cast<double>(col.size());
  }
  return mean;
}

EstimateResult scalable_success(const ErrorModelSpec& spec, double eps, int n, OptLevel opt, FidelityKind method,
                                double h_ideal) {
  if (n < 2) throw InvalidArgument("scalable_success: N must be >= 2");
  if (method == FidelityKind::Dep) throw InvalidArgument("scalable_success: method must be avg or proc");
  const auto r = source_infidelities(spec, eps);
  const double half = n / 2;
  EstimateResult out;
  out.method = method;
  switch (opt) {
    case OptLevel::Low:
      out.gates_per_block = 3;
      out.blocks = half * n;
      break;
    case OptLevel::Medium:
      out.gates_per_block = 3;
      out.blocks = half * expected_rounds(n);
      break;
    case OptLevel::High:
      out.gates_per_block = gates_per_block(std::min(eps, 1.0), true);
      out.blocks = half * expected_rounds(n);
      break;
  }
  auto clamp01 = [](double p) { return std::clamp(p, 0.0, 1.0); };
  auto dep_from_infidelity = [&](double infid, int d) {
    return clamp01(convert(1 - std::min(infid, 1.0), FidelityKind::Avg, FidelityKind::Dep, d));
  };
  // `count` parallel single-qubit channels of the given infidelity, as one
  // two-qubit depolarizing parameter of equal process fidelity.
  auto dep_from_single = [&](double infid, double count) {
    const double f1 = convert(dep_from_infidelity(infid, 2), FidelityKind::Dep, FidelityKind::Proc, 2);
    return clamp01(convert(std::pow(f1, count), FidelityKind::Proc, FidelityKind::Dep, 4));
  };
  const double p_sq4 = dep_from_single(r[kSqDep], 2);
  // Memory dephases both gate qubits. Crosstalk counts once per gate, the
  // reading under which a fixed 1e-3 crosstalk caps N near 20.
  const double p_tq = dep_from_infidelity(r[kTqDep], 4) * dep_from_infidelity(r[kTqCoherent], 4) *
                      dep_from_single(r[kTqMemory], 2) * dep_from_infidelity(r[kTqCrosstalk], 4);
  const double p_block = std::pow(p_sq4 * p_tq, out.gates_per_block);
  const double per_block = convert(p_block, FidelityKind::Dep, method, 4);
  out.p_tot = std::pow(per_block, out.blocks);
  out.p_m = std::pow(1 - std::min(r[kMeasure], 1.0), n);
  const double h = h_ideal > 0 ? h_ideal : h_ideal_haar(n);
  out.success = h * out.p_tot * out.p_m + (1 - out.p_tot * out.p_m) / 2;
  return out;
}

double passing_threshold(const ErrorModelSpec& spec, int n, OptLevel opt, FidelityKind method) {
  constexpr double kTarget = 2.0 / 3.0;
  constexpr int kGrid = 96;
  const double hi_limit = std::min(1.0, max_eps(spec));
  auto s = [&](double eps) { return scalable_success(spec, eps, n, opt, method).success; };
  if (s(0) < kTarget) throw NumericError("passing_threshold: success below 2/3 even without errors");
  // Walk a log grid up to the first point below 2/3; success must not rise
  // on the way. At high levels the estimate can recover for eps near 1 as
  // approximations swallow whole blocks, so only the first crossing counts.
  double lo = 0, hi = -1, prev = s(0);
  for (int i = 0; i <= kGrid; ++i) {
    const double e = hi_limit * std::pow(10.0, -7.0 + 7.0 * i / kGrid);
    const double v = s(e);
    if (v > prev + 1e-6) throw NumericError("passing_threshold: success is not monotone in eps");
    prev = v;
    if (v < kTarget) {
      hi = e;
      break;
    }
    lo = e;
  }
  if (hi < 0) throw NumericError("passing_threshold: no crossing in [0, " + format_double(hi_limit) + "]");
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    (s(mid) >= kTarget ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

int passing_qubits(const ErrorModelSpec& spec, double eps, OptLevel opt, FidelityKind method, int scan_limit) {
  if (scan_limit < 2) throw InvalidArgument("passing_qubits: scan limit must be >= 2");
  int best = 0;
  for (int n = 2; n <= scan_limit; ++n)
    if (scalable_success(spec, eps, n, opt, method).success >= 2.0 / 3.0) best = n;
  return best;
}

}  // namespace qvt
