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

#include "qvt/linalg.hpp"

#include <cmath>

namespace qvt {

namespace pauli {
Mat2 I() { return Mat2::Identity(); }
Mat2 X() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}
Mat2 Y() {
  Mat2 m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
Mat2 Z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}
Mat2 H() {
  Mat2 m;
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return m;
}
Mat2 S() {
  Mat2 m;
  m << 1, 0, 0, cplx(0, 1);
  return m;
}
}  // namespace pauli

Mat2 rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat2 m;
  m << c, cplx(0, -s), cplx(0, -s), c;
  return m;
}

Mat2 ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}

Mat2 rz(double theta) {
  Mat2 m;
  m << std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2);
  return m;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Mat4 cnot_matrix() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = 1;
  m(2, 3) = m(3, 2) = 1;
  return m;
}

Mat4 swap_matrix() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(3, 3) = 1;
  m(1, 2) = m(2, 1) = 1;
  return m;
}

Mat4 xx() { return kron(pauli::X(), pauli::X()); }
Mat4 yy() { return kron(pauli::Y(), pauli::Y()); }
Mat4 zz() { return kron(pauli::Z(), pauli::Z()); }

Mat4 interaction(double tx, double ty, double tz) {
  // XX, YY and ZZ commute, so the exponential factorizes.
  auto rot = [](const Mat4& p, double t) -> Mat4 {
    return std::cos(t / 2) * Mat4::Identity() - cplx(0, std::sin(t / 2)) * p;
  };
  return rot(xx(), tx) * rot(yy(), ty) * rot(zz(), tz);
}

double unitarity_error(const MatX& m) {
  if (m.rows() != m.cols()) return INFINITY;
  const MatX diff = m.adjoint() * m - MatX::Identity(m.rows(), m.cols());
  // Operator norm = largest singular value.
  Eigen::JacobiSVD<MatX> svd(diff);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

bool is_unitary(const MatX& m, double tol) { return unitarity_error(m) <= tol; }

MatX project_unitary(const MatX& m) {
  Eigen::JacobiSVD<MatX> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double trace_fidelity(const MatX& a, const MatX& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument("trace_fidelity: dimension mismatch");
  return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

double average_fidelity4(const Mat4& u, const Mat4& v) {
  const double t = std::abs((u.adjoint() * v).trace());
  return (t * t + 4.0) / 20.0;
}

std::pair<Mat2, Mat2> split_product(const Mat4& k, double tol) {
  // Pick the 2x2 block with the largest norm; it equals a(i,j) * B.
  int bi = 0, bj = 0;
  double best = -1;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double n = k.block<2, 2>(2 * i, 2 * j).norm();
      if (n > best) {
        best = n;
        bi = i;
        bj = j;
      }
    }
  Mat2 b = k.block<2, 2>(2 * bi, 2 * bj);
  const cplx det = b.determinant();
  if (std::abs(det) < 1e-14) throw DataError("split_product: singular block");
  b /= std::sqrt(det);
  Mat2 a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      a(i, j) = (b.adjoint() * k.block<2, 2>(2 * i, 2 * j)).trace() / 2.0;
  if ((kron(a, b) - k).norm() > tol) throw DataError("split_product: matrix is not a local product");
  return {a, b};
}

bool is_identity_up_to_phase(const MatX& m, double tol) {
  const double d = static_cast<double>(m.rows());
  const cplx tr = m.trace();
  if (std::abs(std::abs(tr) / d - 1.0) > tol) return false;
  const cplx phase = tr / std::abs(tr);
  return (m - phase * MatX::Identity(m.rows(), m.cols())).norm() <= tol * d;
}

}  // namespace qvt
