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

#include "pimeas/dense.hpp"
#include "pimeas/types.hpp"

namespace pimeas {

/// Normalization constant c_beta = i! j! k! l! / (2^n n!); together with
/// the Hilbert-Schmidt inner product it makes {M_beta} orthonormal:
/// c_beta Tr(M_beta M_beta') = delta.
double norm_const(const SymIndex& idx);

/// All (i, j, k) with i + j + k <= n in lexicographic order; C(n+3,3) of them.
std::vector<SymIndex> enumerate_indices(int n);

/// M_{i,j,k} = sum over all distinct qubit assignments of i identities,
/// j sigma_X, k sigma_Y and sigma_Z on the rest. The number of summed
/// terms is the multinomial n!/(i!j!k!l!).
DenseOperator m_basis_dense(const SymIndex& idx);

/// gamma'_beta = c_beta Tr(M_beta op). For inputs inside the symmetric
/// operator subspace the reconstruction sum_beta gamma'_beta M_beta
/// reproduces op; otherwise this returns the coordinates of op's
/// permutation-invariant (twirled) component. Throws ValidationError when
/// op has a Pauli coefficient with imaginary part above 1e-10
/// (non-Hermitian input).
SymCoords project_to_sym(const DenseOperator& op);

/// Coordinates of (a I + b X + c Y + d Z)^{tensor n}:
/// coords[(i,j,k)] = a^i b^j c^k d^(n-i-j-k).
SymCoords product_op_coords(double a, double b, double c, double d, int n);

/// Coordinates of sum_pi I^t A^{n-t} for A = b X + c Y + d Z: the slice
/// i = t with entries b^j c^k d^l, zero elsewhere. Accumulates
/// weight * that into `out`.
void accumulate_symmetrized_term(SymCoords& out, int t, double b, double c,
                                 double d, double weight);

/// Dense reconstruction sum_beta coords[beta] M_beta.
DenseOperator to_dense(const SymCoords& coords);

/// Average of P(pi) op P(pi)^dagger over all n! permutations, computed by
/// class-averaging Pauli coefficients rather than enumerating matrices.
/// Idempotent; fixes permutation-invariant inputs exactly.
DenseOperator twirl(const DenseOperator& op);

/// Max-entry distance between op and its twirled component; 0 for
/// permutation-invariant inputs.
double pi_distance(const DenseOperator& op);

}  // namespace pimeas
