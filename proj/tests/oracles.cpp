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

#include "oracles.hpp"

#include <algorithm>
#include <numeric>

#include "pimeas/sym_core.hpp"

namespace pimeas::oracle {

DenseOperator kron_pauli_string(const std::vector<int>& codes) {
  DenseOperator out = DenseOperator::Ones(1, 1);
  for (int code : codes) {
    const Eigen::Matrix2cd& local = code == 0   ? pauli_id()
                                    : code == 1 ? pauli_x()
                                    : code == 2 ? pauli_y()
                                                : pauli_z();
    out = kron(out, local);
  }
  return out;
}

DenseOperator m_basis(const SymIndex& idx) {
  std::vector<int> codes;
  codes.insert(codes.end(), idx.i, 0);
  codes.insert(codes.end(), idx.j, 1);
  codes.insert(codes.end(), idx.k, 2);
  codes.insert(codes.end(), idx.l(), 3);
  const Eigen::Index dim = Eigen::Index{1} << idx.n;
  DenseOperator acc = DenseOperator::Zero(dim, dim);
  do {
    acc += kron_pauli_string(codes);
  } while (std::next_permutation(codes.begin(), codes.end()));
  return acc;
}

SymCoords project(const DenseOperator& op) {
  const int n = qubit_count(op);
  SymCoords out(n);
  const SymBasis space(n);
  for (std::size_t p = 0; p < space.size(); ++p) {
    const SymIndex& idx = space.at(p);
    out.values[p] = norm_const(idx) * (m_basis(idx) * op).trace().real();
  }
  return out;
}

DenseOperator twirl(const DenseOperator& op) {
  const int n = qubit_count(op);
  const Eigen::Index dim = op.rows();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  DenseOperator acc = DenseOperator::Zero(dim, dim);
  std::size_t count = 0;
  do {
    // Permutation matrix: basis state bits move qubit q -> perm[q].
    DenseOperator p = DenseOperator::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
      Eigen::Index y = 0;
      for (int q = 0; q < n; ++q)
        if ((x >> (n - 1 - q)) & 1) y |= Eigen::Index{1} << (n - 1 - perm[q]);
      p(y, x) = 1.0;
    }
    acc += p * op * p.adjoint();
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc / static_cast<double>(count);
}

double born_probability(const DenseOperator& rho, const Eigen::Vector3d& axis,
                        std::size_t outcome_index) {
  const int n = qubit_count(rho);
  const Eigen::Matrix2cd direction =
      axis(0) * pauli_x() + axis(1) * pauli_y() + axis(2) * pauli_z();
  DenseOperator projector = DenseOperator::Ones(1, 1);
  for (int q = 0; q < n; ++q) {
    const double sign = ((outcome_index >> (n - 1 - q)) & 1) ? -1.0 : 1.0;
    projector = kron(projector, 0.5 * (pauli_id() + sign * direction));
  }
  return (projector * rho).trace().real();
}

DenseOperator symmetrized_term(int n, int t, const Eigen::Vector3d& raw) {
  const Eigen::Matrix2cd a =
      raw(0) * pauli_x() + raw(1) * pauli_y() + raw(2) * pauli_z();
  std::vector<int> slots(n, 1);
  std::fill(slots.begin(), slots.begin() + t, 0);
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseOperator acc = DenseOperator::Zero(dim, dim);
  do {
    DenseOperator term = DenseOperator::Ones(1, 1);
    for (int slot : slots)
      term = kron(term, slot == 0 ? Eigen::Matrix2cd(pauli_id()) : a);
    acc += term;
  } while (std::next_permutation(slots.begin(), slots.end()));
  return acc;
}

double symmetrized_expectation(const DenseOperator& rho, int t,
                               const Eigen::Vector3d& raw) {
  return (symmetrized_term(qubit_count(rho), t, raw) * rho).trace().real();
}

}  // namespace pimeas::oracle
