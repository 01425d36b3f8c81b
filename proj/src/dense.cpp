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

#include "pimeas/dense.hpp"

#include <cmath>

namespace pimeas {

namespace {
Eigen::Matrix2cd make_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
Eigen::Matrix2cd make_y() {
  Eigen::Matrix2cd m;
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}
Eigen::Matrix2cd make_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace

const Eigen::Matrix2cd& pauli_x() {
  static const Eigen::Matrix2cd m = make_x();
  return m;
}
const Eigen::Matrix2cd& pauli_y() {
  static const Eigen::Matrix2cd m = make_y();
  return m;
}
const Eigen::Matrix2cd& pauli_z() {
  static const Eigen::Matrix2cd m = make_z();
  return m;
}
const Eigen::Matrix2cd& pauli_id() {
  static const Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  return m;
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

DenseOperator tensor_power(const Eigen::Matrix2cd& a, int n) {
  DenseOperator out = DenseOperator::Ones(1, 1);
  for (int q = 0; q < n; ++q) out = kron(out, a);
  return out;
}

int qubit_count(const DenseOperator& op) {
  if (op.rows() != op.cols() || op.rows() < 2)
    throw ValidationError("dense operator must be square with dimension >= 2");
  Eigen::Index dim = op.rows();
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim)
    throw ValidationError("dense operator dimension is not a power of 2");
  if (n > kMaxDenseQubits)
    throw ValidationError("dense path capped at " + std::to_string(kMaxDenseQubits) +
                          " qubits");
  return n;
}

StateVector ghz_state(int n) {
  if (n < 2) throw ValidationError("GHZ state needs n >= 2");
  StateVector v = StateVector::Zero(Eigen::Index{1} << n);
  const double amp = 1.0 / std::sqrt(2.0);
  v(0) = amp;
  v(v.size() - 1) = amp;
  return v;
}

StateVector dicke_state(int n, int m) {
  if (n < 1 || m < 0 || m > n)
    throw ValidationError("Dicke state needs 0 <= m <= n");
  StateVector v = StateVector::Zero(Eigen::Index{1} << n);
  const double amp = 1.0 / std::sqrt(binomial(n, m));
  // All computational strings with exactly m ones.
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    int ones = 0;
    for (int q = 0; q < n; ++q) ones += static_cast<int>((x >> q) & 1);
    if (ones == m) v(x) = amp;
  }
  return v;
}

DenseOperator projector(const StateVector& psi) { return psi * psi.adjoint(); }

bool is_hermitian(const DenseOperator& op, double tolerance) {
  return (op - op.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

void validate_density_matrix(const DenseOperator& rho) {
  const int n = qubit_count(rho);
  if (!is_hermitian(rho))
    throw ValidationError("density matrix is not Hermitian within 1e-12");
  if (std::abs(rho.trace().real() - 1.0) > tol::kTrace ||
      std::abs(rho.trace().imag()) > tol::kTrace)
    throw ValidationError("density matrix trace differs from 1");
  if (n <= 8) {
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < tol::kPsdEigen)
      throw ValidationError("density matrix has eigenvalue below -1e-10");
  }
}

namespace {

// In-place radix-4 pass over one qubit axis. `forward` maps matrix-entry
// digits (2*row_bit + col_bit) to Pauli coefficients, `!forward` inverts.
void axis_pass(std::vector<Complex>& v, std::size_t stride, bool forward) {
  const Complex half(0.5, 0.0);
  const Complex half_i(0.0, 0.5);
  const std::size_t total = v.size();
  for (std::size_t block = 0; block < total; block += 4 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t p0 = block + off;
      Complex v0 = v[p0], v1 = v[p0 + stride], v2 = v[p0 + 2 * stride],
              v3 = v[p0 + 3 * stride];
      if (forward) {
        v[p0] = half * (v0 + v3);                // I
        v[p0 + stride] = half * (v1 + v2);       // X
        v[p0 + 2 * stride] = half_i * (v1 - v2); // Y
        v[p0 + 3 * stride] = half * (v0 - v3);   // Z
      } else {
        v[p0] = v0 + v3;                          // |0><0|
        v[p0 + stride] = v1 - Complex(0, 1) * v2; // |0><1|
        v[p0 + 2 * stride] = v1 + Complex(0, 1) * v2;
        v[p0 + 3 * stride] = v0 - v3;
      }
    }
  }
}

// Positions of row/column bits inside the base-4 flattening: bit q of the
// index becomes base-4 digit q (same significance order).
std::vector<std::size_t> bit_spread_table(int n) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::size_t> spread(dim, 0);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t s = 0;
    for (int b = 0; b < n; ++b)
      if ((x >> b) & 1) s |= std::size_t{1} << (2 * b);
    spread[x] = s;
  }
  return spread;
}

}  // namespace

std::vector<Complex> pauli_coefficients(const DenseOperator& op) {
  const int n = qubit_count(op);
  const std::size_t dim = std::size_t{1} << n;
  const auto spread = bit_spread_table(n);
  std::vector<Complex> v(dim * dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      v[2 * spread[r] + spread[c]] = op(static_cast<Eigen::Index>(r),
                                        static_cast<Eigen::Index>(c));
  for (int q = 0; q < n; ++q) axis_pass(v, std::size_t{1} << (2 * q), true);
  return v;
}

DenseOperator from_pauli_coefficients(const std::vector<Complex>& g, int n) {
  const std::size_t dim = std::size_t{1} << n;
  if (g.size() != dim * dim)
    throw ValidationError("pauli coefficient vector has wrong length");
  std::vector<Complex> v = g;
  for (int q = 0; q < n; ++q) axis_pass(v, std::size_t{1} << (2 * q), false);
  const auto spread = bit_spread_table(n);
  DenseOperator op(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          v[2 * spread[r] + spread[c]];
  return op;
}

void accumulate_pauli_string(DenseOperator& acc, const std::vector<int>& codes,
                             Complex weight) {
  const int n = static_cast<int>(codes.size());
  const std::size_t dim = std::size_t{1} << n;
  std::size_t flip = 0;
  for (int q = 0; q < n; ++q)
    if (codes[q] == 1 || codes[q] == 2) flip |= std::size_t{1} << (n - 1 - q);
  for (std::size_t col = 0; col < dim; ++col) {
    Complex phase = weight;
    for (int q = 0; q < n; ++q) {
      const bool bit = (col >> (n - 1 - q)) & 1;
      if (codes[q] == 2) phase *= bit ? Complex(0, -1) : Complex(0, 1);
      else if (codes[q] == 3 && bit) phase = -phase;
    }
    acc(static_cast<Eigen::Index>(col ^ flip), static_cast<Eigen::Index>(col)) += phase;
  }
}

}  // namespace pimeas
