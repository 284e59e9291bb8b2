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

#include "qvt/transpile.hpp"

#include <map>
#include <numeric>
#include <utility>

#include "qvt/decompose.hpp"

namespace qvt {

const char* to_string(OptLevel level) {
  switch (level) {
    case OptLevel::Low: return "low";
    case OptLevel::Medium: return "medium";
    case OptLevel::High: return "high";
  }
  return "?";
}

OptLevel opt_level_from_string(const std::string& s) {
  for (OptLevel l : {OptLevel::Low, OptLevel::Medium, OptLevel::High})
    if (s == to_string(l)) return l;
  throw InvalidArgument("unknown optimization level '" + s + "'");
}

void check_config(const TranspileConfig& cfg) {
  if (!(cfg.tol >= 0 && cfg.tol <= 1)) throw InvalidArgument("transpile: tol must be in [0, 1]");
  if (cfg.mirror && cfg.native == NativeTwoQubit::CNOT && cfg.level != OptLevel::High)
    throw InvalidArgument("transpile: mirroring with CNOT native gates requires the high level");
  if (cfg.noise_aware_gate_fidelity) {
    const double f = *cfg.noise_aware_gate_fidelity;
    if (!(f >= 0 && f <= 1)) throw InvalidArgument("transpile: gate fidelity must be in [0, 1]");
    if (cfg.level != OptLevel::High || cfg.native != NativeTwoQubit::CNOT)
      throw InvalidArgument("transpile: noise-aware approximation needs the high level and CNOT native gates");
  }
}

std::vector<GateOp> pass_fuse_sq(const std::vector<GateOp>& gates) {
  std::vector<GateOp> out;
  std::map<int, Mat2> pending;
  auto flush = [&](int q) {
    auto it = pending.find(q);
    if (it == pending.end()) return;
    if (!is_identity_up_to_phase(it->second, 1e-12)) out.push_back(GateOp::sq(q, it->second));
    pending.erase(it);
  };
  bool measure = false;
  for (const GateOp& g : gates) {
    switch (g.kind) {
      case GateKind::SQ: {
        auto [it, fresh] = pending.try_emplace(g.qubits[0], g.matrix);
        if (!fresh) it->second = g.matrix * it->second;
        break;
      }
      case GateKind::MEASURE_ALL: measure = true; break;
      default:
        flush(g.qubits[0]);
        flush(g.qubits[1]);
        out.push_back(g);
        break;
    }
  }
  while (!pending.empty()) flush(pending.begin()->first);
  if (measure) out.push_back(GateOp::measure_all());
  return out;
}

QvtCircuit pass_block_combine(const QvtCircuit& circuit) {
  QvtCircuit out;
  out.width = circuit.width;
  out.seed = circuit.seed;
  const Mat4 sw = swap_matrix();
  for (const Round& round : circuit.rounds) {
    Round cur = round;
    if (!out.rounds.empty()) {
      Round& prev = out.rounds.back();
      for (std::size_t i = 0; i < cur.pairs.size(); ++i) {
        const auto [a, b] = cur.pairs[i];
        for (std::size_t j = 0; j < prev.pairs.size(); ++j) {
          const auto [c, d] = prev.pairs[j];
          const bool same = a == c && b == d;
          const bool reversed = a == d && b == c;
          if (!same && !reversed) continue;
          const Mat4 earlier = reversed ? Mat4(sw * prev.blocks[j] * sw) : prev.blocks[j];
          cur.blocks[i] = cur.blocks[i] * earlier;
          prev.pairs.erase(prev.pairs.begin() + static_cast<std::ptrdiff_t>(j));
          prev.blocks.erase(prev.blocks.begin() + static_cast<std::ptrdiff_t>(j));
          break;
        }
      }
    }
    out.rounds.push_back(std::move(cur));
  }
  return out;
}

CompiledCircuit transpile(const QvtCircuit& circuit, const TranspileConfig& cfg, TranspileStats* stats) {
  check_config(cfg);
  if (auto v = validate(circuit, {false, false}); !v.empty())
    throw DataError("transpile: invalid circuit: " + v.front());
  const QvtCircuit src = cfg.level == OptLevel::Low ? circuit : pass_block_combine(circuit);

  TranspileStats st;
  std::vector<int> phys(static_cast<std::size_t>(circuit.width));
  std::iota(phys.begin(), phys.end(), 0);
  std::vector<GateOp> gates;
  for (const Round& round : src.rounds) {
    for (std::size_t i = 0; i < round.pairs.size(); ++i) {
      const auto [a, b] = round.pairs[i];
      const Mat4& u = round.blocks[i];
      int& wa = phys[static_cast<std::size_t>(a)];
      int& wb = phys[static_cast<std::size_t>(b)];
      CompiledCircuit frag;
      bool mirrored = false;
      if (cfg.native == NativeTwoQubit::ARB_ANGLE) {
        ArbAngleResult r = arb_angle_synthesize(u, cfg.mirror);
        st.theta_total += r.theta_total;
        frag = std::move(r.circuit);
        mirrored = r.mirrored;
      } else {
        ApproxResult r;
        if (cfg.level != OptLevel::High)
          r = synthesize_k_cnot(u, 3, false);
        else if (cfg.noise_aware_gate_fidelity)
          r = approximate_su4_noise_aware(u, *cfg.noise_aware_gate_fidelity, cfg.mirror);
        else
          r = approximate_su4(u, cfg.tol, cfg.mirror);
        ++st.cnot_histogram[static_cast<std::size_t>(r.cnot_count)];
        st.fidelity_product *= r.avg_fidelity;
        frag = std::move(r.circuit);
        mirrored = r.mirrored;
      }
      const int pa = wa, pb = wb;
      for (GateOp g : frag.gates) {
        g.qubits[0] = g.qubits[0] == 0 ? pa : pb;
        if (g.kind != GateKind::SQ) g.qubits[1] = g.qubits[1] == 0 ? pa : pb;
        gates.push_back(g);
      }
      if (mirrored) {
        std::swap(wa, wb);
        ++st.mirrored_blocks;
      }
      ++st.blocks;
    }
  }
  gates.push_back(GateOp::measure_all());

  CompiledCircuit out;
  out.width = circuit.width;
  out.source_seed = circuit.seed;
  out.gates = pass_fuse_sq(gates);
  out.output_relabeling = std::move(phys);
  if (stats) *stats = st;
  return out;
}

}  // namespace qvt
