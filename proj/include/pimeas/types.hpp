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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pimeas {

/// Thrown when an input violates a precondition or a file fails schema
/// validation. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a numerical acceptance check fails (residual above
/// tolerance, singular system, ...). Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parameter scheme for product bases. `kInteger` uses the grid 0,1,2,...;
/// `kTangent` spreads nodes as tan of equally spaced angles.
enum class Scheme { kInteger, kTangent };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

namespace tol {
// Input invariants (Hermiticity, trace) on dense operators.
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
// Smallest admissible density-matrix eigenvalue.
inline constexpr double kPsdEigen = -1e-10;
// Derived identities (orthonormality, closed form vs. trace, ...).
inline constexpr double kDerived = 1e-10;
// Acceptance threshold for decomposition / plan residuals.
inline constexpr double kResidual = 1e-8;
// Dense-matrix reconstruction of plans at small n.
inline constexpr double kPlanDense = 1e-9;
// Probability distributions must sum to 1 within this.
inline constexpr double kProbSum = 1e-9;
// Coefficients below this are dropped from sparse serializations.
inline constexpr double kSparseZero = 1e-14;
// Condition numbers above this trigger a plan-quality warning.
inline constexpr double kCondWarn = 1e12;
}  // namespace tol

/// Index (i, j, k) of the symmetrized operator-basis element with i
/// identity factors, j sigma_X, k sigma_Y and l = n - i - j - k sigma_Z
/// factors on n qubits.
struct SymIndex {
  int i = 0;
  int j = 0;
  int k = 0;
  int n = 0;

  int l() const { return n - i - j - k; }
  bool valid() const { return i >= 0 && j >= 0 && k >= 0 && l() >= 0 && n >= 1; }
  bool operator==(const SymIndex& o) const {
    return i == o.i && j == o.j && k == o.k && n == o.n;
  }
};

/// The index space {(i, j, k) : i + j + k <= n} in lexicographic order.
/// Size is C(n+3, 3). Fixes column order for all matrices and file formats.
class SymBasis {
 public:
  explicit SymBasis(int n);

  int n() const { return n_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<SymIndex>& indices() const { return indices_; }
  const SymIndex& at(std::size_t pos) const { return indices_[pos]; }
  /// Lexicographic position of (i, j, k); throws on an invalid triple.
  std::size_t index_of(int i, int j, int k) const;

 private:
  int n_ = 0;
  std::vector<SymIndex> indices_;
};

/// Real coefficient vector over the orthogonal symmetric operator basis
/// M_{i,j,k}; represents sum_beta values[beta] * M_beta. Hermiticity is
/// automatic because the coefficients are real.
struct SymCoords {
  int n = 0;
  std::vector<double> values;  // dense, SymBasis lexicographic order

  SymCoords() = default;
  explicit SymCoords(int qubits);

  double& at(int i, int j, int k);
  double at(int i, int j, int k) const;
  std::size_t size() const { return values.size(); }

  SymCoords& operator+=(const SymCoords& other);
  SymCoords& operator*=(double factor);
  /// Max-norm of the coefficient difference; requires matching n.
  double distance(const SymCoords& other) const;
};

double binomial(int n, int k);
double multinomial_terms(const SymIndex& idx);

/// Lexicographic position of (i, j, k) within the n-qubit index space,
/// without materializing the index list.
std::size_t sym_position(int n, int i, int j, int k);

}  // namespace pimeas
