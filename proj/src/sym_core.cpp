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

#include "pimeas/sym_core.hpp"

#include <algorithm>
#include <cmath>

namespace pimeas {

double norm_const(const SymIndex& idx) {
  if (!idx.valid()) throw ValidationError("invalid symmetric index");
  // i! j! k! l! / (2^n n!) = 1 / (2^n * multinomial).
  return 1.0 / (std::ldexp(1.0, idx.n) * multinomial_terms(idx));
}

std::vector<SymIndex> enumerate_indices(int n) { return SymBasis(n).indices(); }

DenseOperator m_basis_dense(const SymIndex& idx) {
  if (!idx.valid()) throw ValidationError("invalid symmetric index");
  const int n = idx.n;
  if (n > kMaxDenseQubits)
    throw ValidationError("dense path capped at " + std::to_string(kMaxDenseQubits) +
                          " qubits");
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseOperator acc = DenseOperator::Zero(dim, dim);
  std::vector<int> codes;
  codes.insert(codes.end(), idx.i, 0);
  codes.insert(codes.end(), idx.j, 1);
  codes.insert(codes.end(), idx.k, 2);
  codes.insert(codes.end(), idx.l(), 3);
  // Sorted start guarantees next_permutation visits each assignment once.
  do {
    accumulate_pauli_string(acc, codes, Complex(1, 0));
  } while (std::next_permutation(codes.begin(), codes.end()));
  return acc;
}

namespace {

// Walks all 4^n Pauli strings with an odometer, keeping per-letter counts
// incremental; calls fn(position, i, j, k) for each string.
template <typename Fn>
void for_each_pauli_class(int n, Fn&& fn) {
  std::vector<int> digit(n, 0);
  int counts[4] = {n, 0, 0, 0};
  const std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t pos = 0;; ++pos) {
    fn(pos, counts[0], counts[1], counts[2]);
    if (pos + 1 == total) break;
    for (int q = 0;; ++q) {
      --counts[digit[q]];
      digit[q] = (digit[q] + 1) & 3;
      ++counts[digit[q]];
      if (digit[q] != 0) break;
    }
  }
}

}  // namespace

SymCoords project_to_sym(const DenseOperator& op) {
  const int n = qubit_count(op);
  const auto g = pauli_coefficients(op);
  SymCoords out(n);
  for_each_pauli_class(n, [&](std::size_t pos, int i, int j, int k) {
    const Complex& gs = g[pos];
    if (std::abs(gs.imag()) > tol::kDerived)
      throw ValidationError("operator is not Hermitian: Pauli coefficient with "
                            "imaginary part " + std::to_string(gs.imag()));
    out.values[sym_position(n, i, j, k)] += gs.real();
  });
  // Class sums -> class means = c_beta Tr(M_beta op).
  const SymBasis basis(n);
  for (std::size_t p = 0; p < out.values.size(); ++p)
    out.values[p] /= multinomial_terms(basis.at(p));
  return out;
}

SymCoords product_op_coords(double a, double b, double c, double d, int n) {
  SymCoords out(n);
  std::vector<double> pa(n + 1, 1.0), pb(n + 1, 1.0), pc(n + 1, 1.0), pd(n + 1, 1.0);
  for (int t = 1; t <= n; ++t) {
    pa[t] = pa[t - 1] * a;
    pb[t] = pb[t - 1] * b;
    pc[t] = pc[t - 1] * c;
    pd[t] = pd[t - 1] * d;
  }
  const SymBasis basis(n);
  for (std::size_t p = 0; p < out.values.size(); ++p) {
    const SymIndex& idx = basis.at(p);
    out.values[p] = pa[idx.i] * pb[idx.j] * pc[idx.k] * pd[idx.l()];
  }
  return out;
}

void accumulate_symmetrized_term(SymCoords& out, int t, double b, double c,
                                 double d, double weight) {
  const int n = out.n;
  if (t < 0 || t > n) throw ValidationError("identity count out of range");
  std::vector<double> pb(n + 1, 1.0), pc(n + 1, 1.0), pd(n + 1, 1.0);
  for (int s = 1; s <= n; ++s) {
    pb[s] = pb[s - 1] * b;
    pc[s] = pc[s - 1] * c;
    pd[s] = pd[s - 1] * d;
  }
  for (int j = 0; j <= n - t; ++j)
    for (int k = 0; k <= n - t - j; ++k)
      out.values[sym_position(n, t, j, k)] += weight * pb[j] * pc[k] * pd[n - t - j - k];
}

DenseOperator to_dense(const SymCoords& coords) {
  const int n = coords.n;
  if (n > kMaxDenseQubits)
    throw ValidationError("dense path capped at " + std::to_string(kMaxDenseQubits) +
                          " qubits");
  std::vector<Complex> g(std::size_t{1} << (2 * n));
  for_each_pauli_class(n, [&](std::size_t pos, int i, int j, int k) {
    g[pos] = Complex(coords.values[sym_position(n, i, j, k)], 0.0);
  });
  return from_pauli_coefficients(g, n);
}

DenseOperator twirl(const DenseOperator& op) { return to_dense(project_to_sym(op)); }

double pi_distance(const DenseOperator& op) {
  return (op - twirl(op)).cwiseAbs().maxCoeff();
}

}  // namespace pimeas
