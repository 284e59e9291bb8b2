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

#include "qvt/sim.hpp"

#include <cmath>
#include <numeric>
#include <span>
#include <string>

#include "qvt/kernels.hpp"

namespace qvt {

bool NoiseSpec::is_zero() const {
  return p_sq_dep == 0 && p_tq_dep == 0 && theta_zz == 0 && q_dephase == 0 && p_xtalk == 0 && e_meas == 0;
}

void NoiseSpec::check() const {
  auto prob = [](double v, const char* name) {
    if (!(v >= 0 && v <= 1)) throw InvalidArgument(std::string("NoiseSpec: ") + name + " must be in [0, 1]");
  };
  prob(p_sq_dep, "p_sq_dep");
  prob(p_tq_dep, "p_tq_dep");
  prob(q_dephase, "q_dephase");
  prob(p_xtalk, "p_xtalk");
  prob(e_meas, "e_meas");
  if (!std::isfinite(theta_zz)) throw InvalidArgument("NoiseSpec: theta_zz must be finite");
}

namespace {

void check_width(int width, int cap, const char* who) {
  if (width < 1 || width > cap)
    throw InvalidArgument(std::string(who) + ": width " + std::to_string(width) + " outside [1, " +
                          std::to_string(cap) + "]");
}

std::span<cplx> span_of(VecX& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

VecX basis_zero(int width) {
  VecX psi = VecX::Zero(Eigen::Index{1} << width);
  psi(0) = 1;
  return psi;
}

}  // namespace

VecX statevector(const CompiledCircuit& circuit) {
  check_width(circuit.width, kMaxStatevectorWidth, "statevector");
  if (auto v = validate(circuit); !v.empty()) throw DataError("statevector: " + v.front());
  VecX psi = basis_zero(circuit.width);
  for (const GateOp& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::SQ: kernels::apply_1q(span_of(psi), g.qubits[0], g.matrix); break;
      case GateKind::CNOT: kernels::apply_cnot(span_of(psi), g.qubits[0], g.qubits[1]); break;
      case GateKind::MEASURE_ALL: break;
      default: kernels::apply_2q(span_of(psi), g.qubits[0], g.qubits[1], g.two_qubit_matrix()); break;
    }
  }
  return psi;
}

VecX statevector(const QvtCircuit& circuit) {
  check_width(circuit.width, kMaxStatevectorWidth, "statevector");
  VecX psi = basis_zero(circuit.width);
  for (const Round& round : circuit.rounds) {
    if (round.pairs.size() != round.blocks.size()) throw DataError("statevector: round pairs/blocks mismatch");
    for (std::size_t i = 0; i < round.pairs.size(); ++i)
      kernels::apply_2q(span_of(psi), round.pairs[i].first, round.pairs[i].second, round.blocks[i]);
  }
  return psi;
}

VecX to_logical_order(const VecX& phys, const std::vector<int>& relabeling) {
  if (relabeling.empty()) return phys;
  VecX out(phys.size());
  for (Eigen::Index y = 0; y < phys.size(); ++y)
    out(static_cast<Eigen::Index>(physical_to_logical(static_cast<std::uint64_t>(y), relabeling))) = phys(y);
  return out;
}

std::vector<double> to_logical_order(const std::vector<double>& phys, const std::vector<int>& relabeling) {
  if (relabeling.empty()) return phys;
  std::vector<double> out(phys.size());
  for (std::size_t y = 0; y < phys.size(); ++y) out[physical_to_logical(y, relabeling)] = phys[y];
  return out;
}

OutputDistribution probabilities(const VecX& state) {
  OutputDistribution d;
  d.width = 0;
  while ((Eigen::Index{1} << d.width) < state.size()) ++d.width;
  d.probs.resize(static_cast<std::size_t>(state.size()));
  for (Eigen::Index k = 0; k < state.size(); ++k) d.probs[static_cast<std::size_t>(k)] = std::norm(state(k));
  return d;
}

OutputDistribution statevector_run(const CompiledCircuit& circuit) {
  return probabilities(to_logical_order(statevector(circuit), circuit.output_relabeling));
}

OutputDistribution statevector_run(const QvtCircuit& circuit) { return probabilities(statevector(circuit)); }

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(int width) : width_(width) {
  check_width(width, kMaxDensityWidth, "DensityMatrix");
  data_.assign(std::size_t{1} << (2 * width), cplx(0));
  data_[0] = 1;
}

DensityMatrix DensityMatrix::from_matrix(const MatX& rho) {
  int w = 0;
  while ((Eigen::Index{1} << w) < rho.rows()) ++w;
  if (rho.rows() != rho.cols() || (Eigen::Index{1} << w) != rho.rows())
    throw InvalidArgument("DensityMatrix: matrix must be square with power-of-two size");
  DensityMatrix d(w);
  for (Eigen::Index r = 0; r < rho.rows(); ++r)
    for (Eigen::Index c = 0; c < rho.cols(); ++c)
      d.data_[static_cast<std::size_t>(c) | (static_cast<std::size_t>(r) << w)] = rho(r, c);
  return d;
}

MatX DensityMatrix::matrix() const {
  const Eigen::Index dim = Eigen::Index{1} << width_;
  MatX m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = (*this)(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c));
  return m;
}

double DensityMatrix::trace() const {
  double t = 0;
  for (std::uint64_t k = 0; k < (1ULL << width_); ++k) t += (*this)(k, k).real();
  return t;
}

std::vector<double> DensityMatrix::diagonal() const {
  std::vector<double> d(std::size_t{1} << width_);
  for (std::uint64_t k = 0; k < d.size(); ++k) d[k] = std::max(0.0, (*this)(k, k).real());
  return d;
}

double DensityMatrix::fidelity(const VecX& psi) const {
  const std::uint64_t dim = 1ULL << width_;
  if (static_cast<std::uint64_t>(psi.size()) != dim) throw InvalidArgument("DensityMatrix::fidelity: dimension mismatch");
  cplx acc = 0;
  for (std::uint64_t r = 0; r < dim; ++r) {
    cplx row = 0;
    for (std::uint64_t c = 0; c < dim; ++c) row += (*this)(r, c) * psi(static_cast<Eigen::Index>(c));
    acc += std::conj(psi(static_cast<Eigen::Index>(r))) * row;
  }
  return acc.real();
}

void DensityMatrix::apply_unitary(int q, const Mat2& u) {
  if (q < 0 || q >= width_) throw InvalidArgument("apply_unitary: qubit out of range");
  kernels::apply_1q(data_, q + width_, u);
  kernels::apply_1q(data_, q, u.conjugate());
}

void DensityMatrix::apply_unitary(int q0, int q1, const Mat4& u) {
  if (q0 < 0 || q1 < 0 || q0 >= width_ || q1 >= width_ || q0 == q1)
    throw InvalidArgument("apply_unitary: qubits out of range");
  kernels::apply_2q(data_, q0 + width_, q1 + width_, u);
  kernels::apply_2q(data_, q0, q1, u.conjugate());
}

void DensityMatrix::depolarize1(int q, double p) {
  if (q < 0 || q >= width_) throw InvalidArgument("depolarize1: qubit out of range");
  if (!(p >= 0 && p <= 1)) throw InvalidArgument("depolarize1: p must be in [0, 1]");
  if (p == 0) return;
  const std::uint64_t cb = 1ULL << q, rb = 1ULL << (q + width_);
  for (std::uint64_t k = 0; k < data_.size(); ++k) {
    if (k & (cb | rb)) continue;
    cplx& d00 = data_[k];
    cplx& d11 = data_[k | cb | rb];
    const cplx avg = 0.5 * (d00 + d11);
    d00 = (1 - p) * d00 + p * avg;
    d11 = (1 - p) * d11 + p * avg;
    data_[k | cb] *= 1 - p;
    data_[k | rb] *= 1 - p;
  }
}

void DensityMatrix::depolarize2(int q0, int q1, double p) {
  if (q0 < 0 || q1 < 0 || q0 >= width_ || q1 >= width_ || q0 == q1)
    throw InvalidArgument("depolarize2: qubits out of range");
  if (!(p >= 0 && p <= 1)) throw InvalidArgument("depolarize2: p must be in [0, 1]");
  if (p == 0) return;
  const std::uint64_t c0 = 1ULL << q0, c1 = 1ULL << q1;
  const std::uint64_t r0 = c0 << width_, r1 = c1 << width_;
  const std::uint64_t mask = c0 | c1 | r0 | r1;
  const std::array<std::uint64_t, 4> col{0, c1, c0, c0 | c1};
  const std::array<std::uint64_t, 4> row{0, r1, r0, r0 | r1};
  for (std::uint64_t k = 0; k < data_.size(); ++k) {
    if (k & mask) continue;
    cplx avg = 0;
    for (int s = 0; s < 4; ++s) avg += data_[k | row[s] | col[s]];
    avg *= 0.25;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        cplx& v = data_[k | row[a] | col[b]];
        v = a == b ? (1 - p) * v + p * avg : (1 - p) * v;
      }
  }
}

void DensityMatrix::dephase(int q, double q_err) {
  if (q < 0 || q >= width_) throw InvalidArgument("dephase: qubit out of range");
  if (!(q_err >= 0 && q_err <= 1)) throw InvalidArgument("dephase: q must be in [0, 1]");
  if (q_err == 0) return;
  const std::uint64_t cb = 1ULL << q, rb = 1ULL << (q + width_);
  const double scale = 1 - 2 * q_err;
  for (std::uint64_t k = 0; k < data_.size(); ++k)
    if (((k & cb) != 0) != ((k & rb) != 0)) data_[k] *= scale;
}

DensityMatrix density_evolve(const CompiledCircuit& circuit, const NoiseSpec& noise) {
  noise.check();
  check_width(circuit.width, kMaxDensityWidth, "density_run");
  if (auto v = validate(circuit); !v.empty()) throw DataError("density_run: " + v.front());
  DensityMatrix rho(circuit.width);
  const int n = circuit.width;
  const Mat4 coherent = interaction(0, 0, noise.theta_zz);
  for (const GateOp& g : circuit.gates) {
    if (g.kind == GateKind::MEASURE_ALL) continue;
    if (g.kind == GateKind::SQ) {
      rho.apply_unitary(g.qubits[0], g.matrix);
      rho.depolarize1(g.qubits[0], noise.p_sq_dep);
      continue;
    }
    const int a = g.qubits[0], b = g.qubits[1];
    rho.dephase(a, noise.q_dephase);
    rho.dephase(b, noise.q_dephase);
    rho.apply_unitary(a, b, g.two_qubit_matrix());
    if (noise.theta_zz != 0) rho.apply_unitary(a, b, coherent);
    rho.depolarize2(a, b, noise.p_tq_dep);
    if (noise.p_xtalk > 0) {
      const int lo = std::min(a, b) - 1, hi = std::max(a, b) + 1;
      if (lo >= 0) rho.depolarize1(lo, noise.p_xtalk);
      if (hi < n) rho.depolarize1(hi, noise.p_xtalk);
    }
  }
  return rho;
}

std::vector<double> apply_readout_error(std::vector<double> probs, int width, double e_meas) {
  if (!(e_meas >= 0 && e_meas <= 1)) throw InvalidArgument("apply_readout_error: e_meas must be in [0, 1]");
  if (probs.size() != (std::size_t{1} << width)) throw InvalidArgument("apply_readout_error: size mismatch");
  if (e_meas == 0) return probs;
  for (int q = 0; q < width; ++q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t k = 0; k < probs.size(); ++k) {
      if (k & bit) continue;
      const double p0 = probs[k], p1 = probs[k | bit];
      probs[k] = (1 - e_meas) * p0 + e_meas * p1;
      probs[k | bit] = (1 - e_meas) * p1 + e_meas * p0;
    }
  }
  return probs;
}

OutputDistribution density_run(const CompiledCircuit& circuit, const NoiseSpec& noise) {
  const DensityMatrix rho = density_evolve(circuit, noise);
  OutputDistribution out;
  out.width = circuit.width;
  out.probs = to_logical_order(apply_readout_error(rho.diagonal(), circuit.width, noise.e_meas),
                               circuit.output_relabeling);
  return out;
}

}  // namespace qvt
