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

#include "pimeas/types.hpp"

#include <cmath>
#include <cstdlib>

namespace pimeas {

std::string to_string(Scheme scheme) {
  return scheme == Scheme::kInteger ? "integer" : "tangent";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "integer") return Scheme::kInteger;
  if (name == "tangent") return Scheme::kTangent;
  throw ValidationError("unknown scheme '" + name + "' (expected integer|tangent)");
}

SymBasis::SymBasis(int n) : n_(n) {
  if (n < 1) throw ValidationError("qubit count must be >= 1, got " + std::to_string(n));
  indices_.reserve(static_cast<std::size_t>(binomial(n + 3, 3)));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n - i; ++j)
      for (int k = 0; k <= n - i - j; ++k) indices_.push_back(SymIndex{i, j, k, n});
}

std::size_t SymBasis::index_of(int i, int j, int k) const {
  return sym_position(n_, i, j, k);
}

std::size_t sym_position(int n, int i, int j, int k) {
  if (i < 0 || j < 0 || k < 0 || i + j + k > n)
    throw ValidationError("index (" + std::to_string(i) + "," + std::to_string(j) + "," +
                          std::to_string(k) + ") out of range for n=" + std::to_string(n));
  // Offset of the i-block, then the j-row inside it, then k.
  std::size_t pos = 0;
  for (int ii = 0; ii < i; ++ii)
    pos += static_cast<std::size_t>(binomial(n - ii + 2, 2));
  for (int jj = 0; jj < j; ++jj) pos += static_cast<std::size_t>(n - i - jj + 1);
  return pos + static_cast<std::size_t>(k);
}

SymCoords::SymCoords(int qubits) : n(qubits) {
  if (qubits < 1)
    throw ValidationError("qubit count must be >= 1, got " + std::to_string(qubits));
  values.assign(static_cast<std::size_t>(binomial(qubits + 3, 3)), 0.0);
}

double& SymCoords::at(int i, int j, int k) {
  return values[sym_position(n, i, j, k)];
}

double SymCoords::at(int i, int j, int k) const {
  return values[sym_position(n, i, j, k)];
}

SymCoords& SymCoords::operator+=(const SymCoords& other) {
  if (other.n != n) throw ValidationError("qubit-count mismatch in SymCoords addition");
  for (std::size_t p = 0; p < values.size(); ++p) values[p] += other.values[p];
  return *this;
}

SymCoords& SymCoords::operator*=(double factor) {
  for (double& v : values) v *= factor;
  return *this;
}

double SymCoords::distance(const SymCoords& other) const {
  if (other.n != n) throw ValidationError("qubit-count mismatch in SymCoords distance");
  double worst = 0.0;
  for (std::size_t p = 0; p < values.size(); ++p)
    worst = std::max(worst, std::abs(values[p] - other.values[p]));
  return worst;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (int t = 1; t <= k; ++t) out = out * (n - k + t) / t;
  return out;
}

double multinomial_terms(const SymIndex& idx) {
  // n! / (i! j! k! l!) as the product of three binomials.
  return binomial(idx.n, idx.i) * binomial(idx.n - idx.i, idx.j) *
         binomial(idx.n - idx.i - idx.j, idx.k);
}

}  // namespace pimeas
