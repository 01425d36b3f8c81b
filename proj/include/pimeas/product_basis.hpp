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

#include "pimeas/types.hpp"

namespace pimeas {

/// Node matrix for product bases: row 0 is all ones, and within each row
/// k >= 1 the n+1 entries are pairwise distinct. Row k holds the local
/// coefficients available for basis slot k.
struct ParamMatrix {
  int d = 0;                // local dimension (number of basis slots)
  int n = 0;                // tensor count
  Scheme scheme = Scheme::kInteger;
  Eigen::MatrixXd rows;     // d x (n+1)

  bool distinct_within_rows() const;
};

/// Node value j of the given scheme. Integer: j. Tangent:
/// tan((j + 1/4) pi / (n + 2)) — the quarter-step offset keeps every angle
/// strictly inside (0, pi) and off pi/2 for every n (4j+1 is odd, 2(n+2)
/// is even, so (j + 1/4)/(n + 2) never equals 1/2).
double scheme_node(Scheme scheme, int j, int n);

ParamMatrix make_param_matrix(int d, int n, Scheme scheme);

/// Product-state basis of the n-fold symmetric subspace over d levels:
/// one state (sum_k a_{k, j_k} |k>)^{tensor n} per composition
/// (j_0, ..., j_{d-1}) of n. Cardinality C(n+d-1, n).
struct ProductStateBasis {
  int d = 0;
  int n = 0;
  std::vector<std::vector<int>> compositions;   // lex over parts 1..d-1
  std::vector<Eigen::VectorXd> local_coeffs;    // d coefficients per state
};

ProductStateBasis product_state_basis(const ParamMatrix& pm);

/// Compositions of `total` into `parts` nonnegative parts, lexicographic
/// over parts 1..d-1 (part 0 is determined by the rest).
std::vector<std::vector<int>> enumerate_compositions(int total, int parts);

/// Square change-of-basis matrix M[i_comp][j_comp] =
/// prod_{k>=1} rows[k][j_k]^{i_k}, the expansion of the product basis on
/// the orthogonal composition basis. Nonsingular for every valid
/// ParamMatrix; reduces to a Vandermonde matrix at d = 2.
Eigen::MatrixXd expansion_matrix(const ParamMatrix& pm);

struct RankCertificate {
  int rank = 0;
  std::size_t expected = 0;
  double condition_number = 0.0;  // of the column-normalized matrix
  bool ill_conditioned = false;   // condition above 1e12
};

/// Rank of expansion_matrix via a column-pivoted decomposition (columns
/// normalized first, so scaling a basis vector cannot change the answer).
/// Throws NumericalError carrying (d, n, scheme) when rank < C(n+d-1, n).
RankCertificate certify_rank(const ParamMatrix& pm);

/// Product-operator basis of the n-qubit symmetric operator subspace:
/// element (i, j, k) stands for (a_i I + b_j X + c_k Y + Z)^{tensor n}.
/// The all-ones parameter row is attached to sigma_Z; rows a, b, c carry
/// the I, X and Y coefficients.
struct OperatorBasis {
  int n = 0;
  Scheme scheme = Scheme::kInteger;
  std::vector<double> a;  // identity coefficients, indexed 0..n
  std::vector<double> b;  // sigma_X
  std::vector<double> c;  // sigma_Y

  std::size_t size() const;
};

/// Builds the C(n+3,3)-element operator basis and certifies its linear
/// independence (propagates certify_rank failure).
OperatorBasis operator_basis(int n, Scheme scheme);

}  // namespace pimeas
