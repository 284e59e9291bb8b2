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

#include "qvt/decompose.hpp"

#include <algorithm>
#include <cmath>

namespace qvt {

namespace {

const Mat4& magic_basis() {
  static const Mat4 b = [] {
    const double r = 1.0 / std::sqrt(2.0);
    const cplx i(0, 1);
    Mat4 m;
    m << 1, 0, 0, i,  //
        0, i, 1, 0,   //
        0, i, -1, 0,  //
        1, 0, 0, -i;
    return Mat4(r * m);
  }();
  return b;
}

// Rows k: (1, <XX>, <YY>, <ZZ>) eigenvalues in the magic basis.
const Eigen::Matrix4d& magic_eigen_inverse() {
  static const Eigen::Matrix4d inv = [] {
    const Mat4& b = magic_basis();
    const Mat4 dx = b.adjoint() * xx() * b;
    const Mat4 dy = b.adjoint() * yy() * b;
    const Mat4 dz = b.adjoint() * zz() * b;
    Eigen::Matrix4d a;
    for (int k = 0; k < 4; ++k) {
      a(k, 0) = 1.0;
      a(k, 1) = dx(k, k).real();
      a(k, 2) = dy(k, k).real();
      a(k, 3) = dz(k, k).real();
    }
    return Eigen::Matrix4d(a.inverse());
  }();
  return inv;
}

// Real orthogonal P (det +1) with P^T M P diagonal, M symmetric unitary.
Eigen::Matrix4d diagonalize_symmetric_unitary(const Mat4& m) {
  const Eigen::Matrix4d re = m.real();
  const Eigen::Matrix4d im = m.imag();
  static constexpr std::array<double, 6> kAngles{0.5772156649, 1.4142135624, 2.7182818285,
                                                 0.3183098862, 2.2360679775, 1.0};
  for (double a : kAngles) {
    const Eigen::Matrix4d mix = std::cos(a) * re + std::sin(a) * im;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(mix);
    Eigen::Matrix4d p = es.eigenvectors();
    const Mat4 d = p.transpose().cast<cplx>() * m * p.cast<cplx>();
    Mat4 off = d;
    off.diagonal().setZero();
    if (off.norm() < 1e-10) {
      if (p.determinant() < 0) p.col(0) *= -1;
      return p;
    }
  }
  throw NumericError("weyl_decompose: could not diagonalize the symmetric unitary");
}

struct Frame {
  Mat2 k1 = Mat2::Identity(), k2 = Mat2::Identity(), k3 = Mat2::Identity(), k4 = Mat2::Identity();
  std::array<double, 3> th{0, 0, 0};
  cplx phase{1, 0};

  // V(th) = c (l1 (x) l2) V(th') (r1 (x) r2)
  void move(const Mat2& l1, const Mat2& l2, const Mat2& r1, const Mat2& r2, cplx c,
            const std::array<double, 3>& next) {
    k1 = k1 * l1;
    k2 = k2 * l2;
    k3 = r1 * k3;
    k4 = r2 * k4;
    phase *= c;
    th = next;
  }

  Mat2 pauli_of(int axis) const {
    return axis == 0 ? pauli::X() : axis == 1 ? pauli::Y() : pauli::Z();
  }

  // th[axis] -= pi (sign = -1) or += pi (sign = +1).
  void shift(int axis, int sign) {
    const Mat2 p = pauli_of(axis);
    auto next = th;
    next[axis] += sign * kPi;
    move(pauli::I(), pauli::I(), p, p, cplx(0, sign < 0 ? -1 : 1), next);
  }

  // Negate the two axes other than `keep`.
  void flip_except(int keep) {
    const Mat2 p = pauli_of(keep);
    auto next = th;
    for (int a = 0; a < 3; ++a)
      if (a != keep) next[a] = -next[a];
    move(p, pauli::I(), p, pauli::I(), 1.0, next);
  }

  void swap_axes(int a, int b) {
    if (a > b) std::swap(a, b);
    Mat2 c;
    if (a == 0 && b == 1)
      c = pauli::S();
    else if (a == 1 && b == 2)
      c = rx(kPi / 2);
    else
      c = ry(kPi / 2);
    auto next = th;
    std::swap(next[a], next[b]);
    move(c.adjoint(), c.adjoint(), c, c, 1.0, next);
  }

  void canonicalize() {
    for (int a = 0; a < 3; ++a) {
      while (th[a] > kPi / 2) shift(a, -1);
      while (th[a] < -kPi / 2) shift(a, +1);
    }
    if (std::abs(th[1]) > std::abs(th[0])) swap_axes(0, 1);
    if (std::abs(th[2]) > std::abs(th[1])) swap_axes(1, 2);
    if (std::abs(th[1]) > std::abs(th[0])) swap_axes(0, 1);
    if (th[0] < 0 && th[1] < 0)
      flip_except(2);
    else if (th[0] < 0)
      flip_except(1);
    else if (th[1] < 0)
      flip_except(0);
    if (th[0] > kPi / 2 - 1e-12 && th[2] < 0) {
      shift(0, -1);
      flip_except(1);
    }
  }
};

// |Tr V(d)| / 4 for the core difference d.
double core_overlap(double dx, double dy, double dz) {
  const double c = std::cos(dx / 2) * std::cos(dy / 2) * std::cos(dz / 2);
  const double s = std::sin(dx / 2) * std::sin(dy / 2) * std::sin(dz / 2);
  return std::hypot(c, s);
}

std::array<double, 3> class_point(const WeylDecomposition& dec, int k) {
  const auto& t = dec.theta;
  switch (k) {
    case 0: return {0, 0, 0};
    case 1: return {kPi / 2, 0, 0};
    case 2: return {t[0], t[1], 0};
    default: return t;
  }
}

void push_local(CompiledCircuit& c, int q, const Mat2& m) { c.gates.push_back(GateOp::sq(q, m)); }

CompiledCircuit empty_fragment(bool mirrored) {
  CompiledCircuit c;
  c.width = 2;
  c.output_relabeling = mirrored ? std::vector<int>{1, 0} : std::vector<int>{0, 1};
  return c;
}

// Gates realizing V(class_point(k)) dressed by dec's locals.
CompiledCircuit synthesize_class(const WeylDecomposition& dec, int k, bool mirrored) {
  CompiledCircuit c = empty_fragment(mirrored);
  const auto& t = dec.theta;
  switch (k) {
    case 0:
      push_local(c, 0, dec.k1 * dec.k3);
      push_local(c, 1, dec.k2 * dec.k4);
      break;
    case 1: {
      // V(pi/2, 0, 0) = ph^-1 (a1^dag (x) a2^dag) CNOT (a3^dag (x) a4^dag)
      static const WeylDecomposition cx = weyl_decompose(cnot_matrix());
      push_local(c, 0, cx.k3.adjoint() * dec.k3);
      push_local(c, 1, cx.k4.adjoint() * dec.k4);
      c.gates.push_back(GateOp::cnot(0, 1));
      push_local(c, 0, dec.k1 * cx.k1.adjoint());
      push_local(c, 1, dec.k2 * cx.k2.adjoint());
      break;
    }
    case 2: {
      // V(tx, ty, 0) = C^dag G (rx(tx) (x) rz(ty)) G C, C = rx(pi/2) (x) rx(pi/2)
      const Mat2 h = rx(kPi / 2);
      push_local(c, 0, h * dec.k3);
      push_local(c, 1, h * dec.k4);
      c.gates.push_back(GateOp::cnot(0, 1));
      push_local(c, 0, rx(t[0]));
      push_local(c, 1, rz(t[1]));
      c.gates.push_back(GateOp::cnot(0, 1));
      push_local(c, 0, dec.k1 * h.adjoint());
      push_local(c, 1, dec.k2 * h.adjoint());
      break;
    }
    default: {
      push_local(c, 0, dec.k3);
      push_local(c, 1, rz(-kPi / 2) * dec.k4);
      c.gates.push_back(GateOp::cnot(1, 0));
      push_local(c, 0, rz(kPi / 2 + t[2]));
      push_local(c, 1, ry(-t[0] - kPi / 2));
      c.gates.push_back(GateOp::cnot(0, 1));
      push_local(c, 1, ry(kPi / 2 + t[1]));
      c.gates.push_back(GateOp::cnot(1, 0));
      push_local(c, 0, dec.k1 * rz(kPi / 2));
      push_local(c, 1, dec.k2);
      break;
    }
  }
  return c;
}

Mat4 variant_target(const Mat4& u, bool mirrored) { return mirrored ? Mat4(swap_matrix() * u) : u; }

ApproxResult finish(const Mat4& u, const WeylDecomposition& dec, int k, bool mirrored) {
  ApproxResult r;
  r.circuit = synthesize_class(dec, k, mirrored);
  r.cnot_count = k;
  r.mirrored = mirrored;
  r.avg_fidelity = average_fidelity4(variant_target(u, mirrored), fragment_matrix(r.circuit));
  return r;
}

void check_input(const Mat4& u, const char* who) {
  if (!u.allFinite() || !is_unitary(u, 1e-8)) throw InvalidArgument(std::string(who) + ": input is not unitary");
}

}  // namespace

Mat4 WeylDecomposition::reconstruct() const {
  return phase * kron(k1, k2) * interaction(theta[0], theta[1], theta[2]) * kron(k3, k4);
}

double WeylDecomposition::theta_total() const {
  return std::abs(theta[0]) + std::abs(theta[1]) + std::abs(theta[2]);
}

WeylDecomposition weyl_decompose(const Mat4& u) {
  check_input(u, "weyl_decompose");
  const cplx phase0 = std::pow(u.determinant(), 0.25);
  const Mat4 us = u / phase0;
  const Mat4& b = magic_basis();
  const Mat4 up = b.adjoint() * us * b;
  const Mat4 m = up.transpose() * up;
  const Eigen::Matrix4d p = diagonalize_symmetric_unitary(m);
  const Mat4 pc = p.cast<cplx>();
  const Mat4 d = pc.transpose() * m * pc;

  Eigen::Vector4d half;
  for (int k = 0; k < 4; ++k) half(k) = std::arg(d(k, k)) / 2;
  auto orthogonal_part = [&] {
    Mat4 dinv = Mat4::Zero();
    for (int k = 0; k < 4; ++k) dinv(k, k) = std::polar(1.0, -half(k));
    return Mat4(up * pc * dinv);
  };
  Mat4 o1 = orthogonal_part();
  if (o1.determinant().real() < 0) {
    half(0) += kPi;
    o1 = orthogonal_part();
  }

  // half_k = g + a x_k + b y_k + c z_k
  const Eigen::Vector4d coef = magic_eigen_inverse() * half;
  Frame f;
  f.th = {-2 * coef(1), -2 * coef(2), -2 * coef(3)};
  f.phase = phase0 * std::polar(1.0, coef(0));
  const Mat4 kl = b * o1 * b.adjoint();
  const Mat4 kr = b * pc.transpose() * b.adjoint();
  std::tie(f.k1, f.k2) = split_product(kl);
  std::tie(f.k3, f.k4) = split_product(kr);
  f.canonicalize();

  WeylDecomposition dec;
  dec.k1 = f.k1;
  dec.k2 = f.k2;
  dec.k3 = f.k3;
  dec.k4 = f.k4;
  dec.theta = f.th;
  dec.phase = f.phase;
  const double fid = trace_fidelity(u, dec.reconstruct());
  if (!(fid >= 1 - 1e-9) || (dec.reconstruct() - u).norm() > 1e-7)
    throw NumericError("weyl_decompose: reconstruction check failed");
  return dec;
}

Mat4 fragment_matrix(const CompiledCircuit& fragment) {
  if (fragment.width != 2) throw InvalidArgument("fragment_matrix: fragment must have width 2");
  Mat4 m = Mat4::Identity();
  const Mat4 sw = swap_matrix();
  for (const GateOp& g : fragment.gates) {
    switch (g.kind) {
      case GateKind::SQ:
        m = (g.qubits[0] == 0 ? kron(g.matrix, pauli::I()) : kron(pauli::I(), g.matrix)) * m;
        break;
      case GateKind::MEASURE_ALL: break;
      default: {
        const Mat4 gm = g.two_qubit_matrix();
        m = (g.qubits[0] == 0 ? gm : Mat4(sw * gm * sw)) * m;
        break;
      }
    }
  }
  return m;
}

CompiledCircuit cnot_synthesize(const WeylDecomposition& dec) { return synthesize_class(dec, 3, false); }

std::array<double, 4> cnot_class_fidelities(const WeylDecomposition& dec) {
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) {
    const auto p = class_point(dec, k);
    const double t = 4 * core_overlap(dec.theta[0] - p[0], dec.theta[1] - p[1], dec.theta[2] - p[2]);
    out[static_cast<std::size_t>(k)] = (t * t + 4) / 20;
  }
  return out;
}

ApproxResult synthesize_k_cnot(const Mat4& u, int k, bool mirrored) {
  check_input(u, "synthesize_k_cnot");
  if (k < 0 || k > 3) throw InvalidArgument("synthesize_k_cnot: k must be in [0, 3]");
  return finish(u, weyl_decompose(variant_target(u, mirrored)), k, mirrored);
}

namespace {

struct Candidate {
  int k;
  double fid;
  bool mirrored;
  const WeylDecomposition* dec;
};

std::vector<Candidate> candidates(const std::array<WeylDecomposition, 2>& decs, bool mirror) {
  std::vector<Candidate> out;
  for (int v = 0; v < (mirror ? 2 : 1); ++v) {
    const auto f = cnot_class_fidelities(decs[static_cast<std::size_t>(v)]);
    for (int k = 0; k < 4; ++k) out.push_back({k, f[static_cast<std::size_t>(k)], v == 1, &decs[static_cast<std::size_t>(v)]});
  }
  return out;
}

std::array<WeylDecomposition, 2> both_variants(const Mat4& u, bool mirror) {
  std::array<WeylDecomposition, 2> decs{weyl_decompose(u), WeylDecomposition{}};
  if (mirror) decs[1] = weyl_decompose(swap_matrix() * u);
  return decs;
}

}  // namespace

ApproxResult approximate_su4(const Mat4& u, double tol, bool mirror) {
  check_input(u, "approximate_su4");
  if (!(tol >= 0 && tol <= 1)) throw InvalidArgument("approximate_su4: tol must be in [0, 1]");
  const auto decs = both_variants(u, mirror);
  const Candidate* best = nullptr;
  const auto cands = candidates(decs, mirror);
  for (const Candidate& c : cands) {
    const bool ok = c.k == 3 || c.fid >= 1 - tol - 1e-12;
    if (!ok) continue;
    if (!best || c.k < best->k || (c.k == best->k && c.fid > best->fid + 1e-15)) best = &c;
  }
  return finish(u, *best->dec, best->k, best->mirrored);
}

ApproxResult approximate_su4_noise_aware(const Mat4& u, double gate_fidelity, bool mirror) {
  check_input(u, "approximate_su4_noise_aware");
  if (!(gate_fidelity >= 0 && gate_fidelity <= 1))
    throw InvalidArgument("approximate_su4_noise_aware: gate fidelity must be in [0, 1]");
  const auto decs = both_variants(u, mirror);
  const auto cands = candidates(decs, mirror);
  const Candidate* best = nullptr;
  double best_score = -1;
  for (const Candidate& c : cands) {
    const double score = c.fid * std::pow(gate_fidelity, c.k);
    if (score > best_score + 1e-15) {
      best = &c;
      best_score = score;
    }
  }
  return finish(u, *best->dec, best->k, best->mirrored);
}

ArbAngleResult arb_angle_synthesize(const Mat4& u, bool mirror) {
  check_input(u, "arb_angle_synthesize");
  const auto decs = both_variants(u, mirror);
  const bool use_mirror = mirror && decs[1].theta_total() < decs[0].theta_total() - 1e-12;
  const WeylDecomposition& dec = decs[use_mirror ? 1 : 0];
  ArbAngleResult r;
  r.mirrored = use_mirror;
  r.theta_total = dec.theta_total();
  r.circuit = empty_fragment(use_mirror);
  push_local(r.circuit, 0, dec.k3);
  push_local(r.circuit, 1, dec.k4);
  if (std::abs(dec.theta[0]) >= 1e-12) r.circuit.gates.push_back(GateOp::rxx(0, 1, dec.theta[0]));
  if (std::abs(dec.theta[1]) >= 1e-12) r.circuit.gates.push_back(GateOp::ryy(0, 1, dec.theta[1]));
  if (std::abs(dec.theta[2]) >= 1e-12) r.circuit.gates.push_back(GateOp::rzz(0, 1, dec.theta[2]));
  push_local(r.circuit, 0, dec.k1);
  push_local(r.circuit, 1, dec.k2);
  return r;
}

}  // namespace qvt
