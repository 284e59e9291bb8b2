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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qvt {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Unitarity tolerance (operator norm) enforced on every stored block.
inline constexpr double kUnitaryTol = 1e-10;
/// Deserialized matrices within this distance are re-projected onto U(d).
inline constexpr double kReprojectTol = 1e-8;

/// Bad input to a library call (maps to CLI exit code 1).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent data (maps to CLI exit code 2).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to converge or bracket (exit code 3).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace pauli {
Mat2 I();
Mat2 X();
Mat2 Y();
Mat2 Z();
Mat2 H();
Mat2 S();
}  // namespace pauli

Mat2 rx(double theta);
Mat2 ry(double theta);
Mat2 rz(double theta);

/// Two-qubit matrices use the first tensor factor as the high bit of the
/// 4x4 index: kron(A, B) acts with A on the first qubit of the pair.
Mat4 kron(const Mat2& a, const Mat2& b);

Mat4 cnot_matrix();  // control = first qubit, target = second
Mat4 swap_matrix();
Mat4 xx();
Mat4 yy();
Mat4 zz();

/// exp(-i (tx XX + ty YY + tz ZZ) / 2)
Mat4 interaction(double tx, double ty, double tz);

double unitarity_error(const MatX& m);
bool is_unitary(const MatX& m, double tol = kUnitaryTol);

/// Closest unitary in Frobenius norm (polar factor via SVD).
MatX project_unitary(const MatX& m);

/// |Tr(A^dag B)| / d, the phase-insensitive overlap of two unitaries.
double trace_fidelity(const MatX& a, const MatX& b);

/// Two-qubit average gate fidelity (|Tr(U^dag V)|^2 + 4) / 20.
double average_fidelity4(const Mat4& u, const Mat4& v);

/// Split a product K = A (x) B; throws DataError if K is not a product.
std::pair<Mat2, Mat2> split_product(const Mat4& k, double tol = 1e-7);

/// True if m equals the identity up to a global phase within tol.
bool is_identity_up_to_phase(const MatX& m, double tol = 1e-12);

}  // namespace qvt
