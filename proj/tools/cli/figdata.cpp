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

#include "figdata.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qvt/combinatorics.hpp"
#include "qvt/decompose.hpp"
#include "qvt/estimate.hpp"
#include "qvt/heavy.hpp"
#include "qvt/parallel.hpp"
#include "qvt/random.hpp"
#include "qvt/sim.hpp"

namespace qvt::cli {

namespace {

std::ostringstream csv_stream() {
  std::ostringstream os;
  os.precision(10);
  return os;
}

}  // namespace

std::string fig2_csv(const std::vector<int>& n_list, int circuits, std::uint64_t seed) {
  if (circuits < 1) throw InvalidArgument("fig2: circuits must be >= 1");
  auto os = csv_stream();
  os << "n,circuits,mean_heavy,pooled_median_heavy,h_ideal\n";
  for (int n : n_list) {
    if (n < 2 || n > kMaxStatevectorWidth) throw InvalidArgument("fig2: N out of range");
    std::vector<OutputDistribution> dists(static_cast<std::size_t>(circuits));
    parallel_for(dists.size(), [&](std::size_t i) {
      dists[i] = statevector_run(generate_indexed_circuit(n, derive_seed(seed, std::uint64_t(n)), i));
    });
    double mean = 0;
    for (const auto& d : dists) mean += heavy_set(d).ideal_heavy_prob / circuits;
    os << n << ',' << circuits << ',' << mean << ',' << pooled_median_heavy_mean(dists) << ',' << h_ideal_haar(n)
       << '\n';
  }
  return os.str();
}

std::string fig3_csv(int n, const std::vector<int>& depths, int circuits, std::uint64_t seed) {
  if (circuits < 1) throw InvalidArgument("fig3: circuits must be >= 1");
  auto os = csv_stream();
  os << "n,depth,ks,ks_binned,entropy\n";
  for (int depth : depths) {
    std::vector<VecX> states(static_cast<std::size_t>(circuits));
    parallel_for(states.size(), [&](std::size_t i) {
      states[i] = statevector(generate_indexed_circuit(n, derive_seed(seed, std::uint64_t(depth)), i, depth));
    });
    std::vector<double> sample;
    double entropy = 0;
    for (const auto& s : states) {
      for (Eigen::Index k = 0; k < s.size(); ++k) sample.push_back(std::norm(s(k)));
      entropy += mean_single_qubit_entropy(s) / circuits;
    }
    os << n << ',' << depth << ',' << ks_statistic(sample, n) << ',' << ks_statistic_binned(sample, n, 100) << ','
       << entropy << '\n';
  }
  return os.str();
}

std::string fig4_csv(int n_max, int trials, std::uint64_t seed) {
  auto os = csv_stream();
  os << "n,arrangements,expected_tq,expected_rounds,savings_ratio,savings_std\n";
  Rng rng(seed);
  for (int n = 2; n <= n_max; ++n) {
    GateCountReport r = gate_count_report(n, trials, rng);
    os << n << ',' << r.f << ',' << r.expected_tq << ',' << r.expected_rounds << ',' << r.savings_ratio << ','
       << r.std_dev << '\n';
  }
  return os.str();
}

std::string fig5_csv(const std::vector<double>& tols, int samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("fig5: samples must be >= 1");
  std::vector<std::array<double, 4>> direct(static_cast<std::size_t>(samples)), mirrored(direct.size());
  parallel_for(direct.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const Mat4 u = haar_su4(rng);
    direct[i] = cnot_class_fidelities(weyl_decompose(u));
    mirrored[i] = cnot_class_fidelities(weyl_decompose(swap_matrix() * u));
    for (std::size_t k = 0; k < 4; ++k) mirrored[i][k] = std::max(mirrored[i][k], direct[i][k]);
  });
  auto os = csv_stream();
  os << "tol,mirror,frac_k0,frac_k1,frac_k2,frac_k3,mean_cnots\n";
  for (double tol : tols)
    for (bool mirror : {false, true}) {
      std::array<double, 4> frac{};
      for (std::size_t i = 0; i < direct.size(); ++i) {
        const auto& f = mirror ? mirrored[i] : direct[i];
        std::size_t k = 0;
        while (k < 3 && f[k] < 1 - tol - 1e-12) ++k;
        frac[k] += 1.0 / samples;
      }
      os << tol << ',' << (mirror ? 1 : 0);
      for (double f : frac) os << ',' << f;
      os << ',' << frac[1] + 2 * frac[2] + 3 * frac[3] << '\n';
    }
  return os.str();
}

std::string fig6_csv(int samples, int bins, std::uint64_t seed) {
  if (samples < 1 || bins < 1) throw InvalidArgument("fig6: samples and bins must be >= 1");
  std::vector<double> direct(static_cast<std::size_t>(samples)), mirrored(direct.size());
  parallel_for(direct.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const Mat4 u = haar_su4(rng);
    direct[i] = arb_angle_synthesize(u, false).theta_total / kPi;
    mirrored[i] = arb_angle_synthesize(u, true).theta_total / kPi;
  });
  const double top = 1.5;
  std::vector<int> hd(static_cast<std::size_t>(bins)), hm(hd.size());
  auto bin = [&](double x) { return std::min<std::size_t>(hd.size() - 1, static_cast<std::size_t>(x / top * bins)); };
  for (std::size_t i = 0; i < direct.size(); ++i) {
    ++hd[bin(direct[i])];
    ++hm[bin(mirrored[i])];
  }
  auto os = csv_stream();
  os << "theta_lo_over_pi,theta_hi_over_pi,count_direct,count_mirrored\n";
  for (int b = 0; b < bins; ++b)
    os << top * b / bins << ',' << top * (b + 1) / bins << ',' << hd[std::size_t(b)] << ',' << hm[std::size_t(b)] << '\n';
  return os.str();
}

std::string fig7_csv(const std::vector<int>& n_list, const std::vector<std::string>& models, OptLevel level) {
  auto os = csv_stream();
  os << "n,model,level,threshold_avg,threshold_proc\n";
  for (const auto& name : models) {
    const ErrorModelSpec& spec = find_model(name);
    for (int n : n_list) {
      auto th = [&](FidelityKind k) {
        try {
          return passing_threshold(spec, n, level, k);
        } catch (const NumericError&) {
          return std::nan("");
        }
      };
      os << n << ',' << spec.name << ',' << to_string(level) << ',' << th(FidelityKind::Avg) << ','
         << th(FidelityKind::Proc) << '\n';
    }
  }
  return os.str();
}

}  // namespace qvt::cli
