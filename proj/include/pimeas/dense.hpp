// Copyright 2026 The pimeas Authors
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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "pimeas/types.hpp"

namespace pimeas {

using Complex = std::complex<double>;
/// Full 2^n x 2^n matrix; the brute-force representation used for
/// validation. Qubit 0 is the most significant bit of the row/column index
/// (first factor in tensor products).
using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Dense matrices are capped at this many qubits (2^24 complex entries).
inline constexpr int kMaxDenseQubits = 12;

const Eigen::Matrix2cd& pauli_x();
const Eigen::Matrix2cd& pauli_y();
const Eigen::Matrix2cd& pauli_z();
const Eigen::Matrix2cd& pauli_id();

DenseOperator kron(const DenseOperator& a, const DenseOperator& b);
/// n-fold tensor power of a single-qubit operator.
DenseOperator tensor_power(const Eigen::Matrix2cd& a, int n);

/// Number of qubits of a 2^n x 2^n matrix; throws if not square power of 2
/// or above the dense cap.
int qubit_count(const DenseOperator& op);

StateVector ghz_state(int n);
StateVector dicke_state(int n, int m);
DenseOperator projector(const StateVector& psi);

bool is_hermitian(const DenseOperator& op, double tolerance = tol::kHermitian);

/// Checks Hermiticity, unit trace and (for n <= 8, where an eigensolve is
/// cheap) positive semidefiniteness. Throws ValidationError on violation.
void validate_density_matrix(const DenseOperator& rho);

/// Coefficients g_s with op = sum_s g_s P_s over all 4^n Pauli strings.
/// Strings are indexed base-4 (digit 0=I, 1=X, 2=Y, 3=Z; qubit 0 is the
/// most significant digit). O(4^n n) via per-qubit transforms.
std::vector<Complex> pauli_coefficients(const DenseOperator& op);

/// Inverse of pauli_coefficients.
DenseOperator from_pauli_coefficients(const std::vector<Complex>& g, int n);

/// Adds `weight` times the Pauli string given by per-qubit codes
/// (0=I, 1=X, 2=Y, 3=Z) into `acc`; O(2^n) using one entry per column.
void accumulate_pauli_string(DenseOperator& acc, const std::vector<int>& codes,
                             Complex weight);

}  // namespace pimeas
