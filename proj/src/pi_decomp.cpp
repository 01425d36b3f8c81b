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

#include "pimeas/pi_decomp.hpp"

#include <cmath>
#include <limits>
#include <mutex>

#include "pimeas/sym_core.hpp"

namespace pimeas {

Eigen::MatrixXd omega_matrix(const OperatorBasis& basis) {
  const SymBasis space(basis.n);
  const auto dim = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXd omega(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const SymIndex& alpha = space.at(static_cast<std::size_t>(col));
    const SymCoords coords = product_op_coords(basis.a[alpha.i], basis.b[alpha.j],
                                               basis.c[alpha.k], 1.0, basis.n);
    for (Eigen::Index row = 0; row < dim; ++row)
      omega(row, col) = coords.values[static_cast<std::size_t>(row)];
  }
  return omega;
}

namespace {

Decomposition solve_system(const SymCoords& target, const OperatorBasis& basis,
                           const Eigen::MatrixXd& omega,
                           const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                           double condition, double residual_tol) {
  if (target.n != basis.n)
    throw ValidationError("target and basis qubit counts differ");
  const Eigen::VectorXd rhs =
      Eigen::Map<const Eigen::VectorXd>(target.values.data(),
                                        static_cast<Eigen::Index>(target.values.size()));
  Eigen::VectorXd gamma = lu.solve(rhs);
  gamma += lu.solve(rhs - omega * gamma);  // one refinement step
  Decomposition dec;
  dec.n = basis.n;
  dec.basis = basis;
  dec.target = target;
  dec.gamma = gamma;
  dec.residual = (omega * gamma - rhs).cwiseAbs().maxCoeff();
  dec.omega_condition = condition;
  if (!(dec.residual <= residual_tol))
    throw NumericalError("decomposition rejected: residual " +
                         std::to_string(dec.residual) + " above tolerance " +
                         std::to_string(residual_tol) + " (condition " +
                         std::to_string(condition) + ")");
  return dec;
}

double lu_condition(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
  const double rcond = lu.rcond();
  return rcond > 0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
}

}  // namespace

Decomposition decompose(const SymCoords& target, const OperatorBasis& basis,
                        double residual_tol) {
  const Eigen::MatrixXd omega = omega_matrix(basis);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(omega);
  if (lu.determinant() == 0.0)
    throw NumericalError("omega matrix is singular (invalid parameter matrix)");
  return solve_system(target, basis, omega, lu, lu_condition(lu), residual_tol);
}

namespace {

SymCoords ghz_coords(int n) {
  SymCoords out(n);
  const double scale = std::ldexp(1.0, -n);  // 2^-n
  // Diagonal part: ((I+Z)/2)^n /2 + ((I-Z)/2)^n /2 lives on pure I/Z slices.
  for (int i = 0; i <= n; ++i)
    out.at(i, 0, 0) += 0.5 * scale * (1.0 + ((n - i) % 2 ? -1.0 : 1.0));
  // Off-diagonal part alternates over the zero-identity X/Y slice.
  for (int k = 0; k <= n; k += 2)
    out.at(0, n - k, k) += scale * ((k / 2) % 2 ? -1.0 : 1.0);
  return out;
}

// String expectation <D_{n,m}| I^i X^j Y^k Z^l |D_{n,m}> / 2^n, evaluated
// combinatorially: an X/Y block of size j+k must flip exactly (j+k)/2
// excitations to preserve the excitation number, Y and Z factors
// contribute signs by occupation.
SymCoords dicke_coords(int n, int m) {
  SymCoords out(n);
  const double norm = std::ldexp(1.0, -n) / binomial(n, m);
  const SymBasis space(n);
  for (std::size_t p = 0; p < space.size(); ++p) {
    const SymIndex& idx = space.at(p);
    const int j = idx.j, k = idx.k, l = idx.l(), i = idx.i;
    if ((j + k) % 2 || k % 2) continue;
    const int w = (j + k) / 2;
    double acc = 0.0;
    for (int u = 0; u <= k; ++u) {
      const int v = w - u;
      if (v < 0 || v > j) continue;
      double inner = 0.0;
      for (int z = 0; z <= l; ++z) {
        const int rest = m - w - z;
        if (rest < 0 || rest > i) continue;
        inner += (z % 2 ? -1.0 : 1.0) * binomial(l, z) * binomial(i, rest);
      }
      acc += (u % 2 ? -1.0 : 1.0) * binomial(k, u) * binomial(j, v) * inner;
    }
    out.values[p] = ((k / 2) % 2 ? -1.0 : 1.0) * acc * norm;
  }
  return out;
}

}  // namespace

SymCoords pi_target_library(TargetKind kind, int n, int m) {
  switch (kind) {
    case TargetKind::kGhz:
      if (n < 2) throw ValidationError("GHZ target needs n >= 2");
      return ghz_coords(n);
    case TargetKind::kW:
      if (n < 2) throw ValidationError("W target needs n >= 2");
      return dicke_coords(n, 1);
    case TargetKind::kDicke:
      if (m < 0 || m > n)
        throw ValidationError("Dicke target needs 0 <= m <= n, got m=" +
                              std::to_string(m));
      return dicke_coords(n, m);
  }
  throw ValidationError("unknown target kind");
}

SymCoords target_coords_from_name(const std::string& name, int n) {
  if (name == "ghz") return pi_target_library(TargetKind::kGhz, n);
  if (name == "w") return pi_target_library(TargetKind::kW, n);
  if (name.rfind("dicke:", 0) == 0) {
    const int m = std::stoi(name.substr(6));
    return pi_target_library(TargetKind::kDicke, n, m);
  }
  throw ValidationError("unknown target name '" + name + "'");
}

std::shared_ptr<const OmegaCache::Entry> OmegaCache::get(int n, Scheme scheme) {
  const auto key = std::make_pair(n, static_cast<int>(scheme));
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  auto entry = std::make_shared<Entry>();
  entry->basis = operator_basis(n, scheme);
  entry->omega = omega_matrix(entry->basis);
  entry->lu.compute(entry->omega);
  const double rcond = entry->lu.rcond();
  entry->condition = rcond > 0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(key, std::move(entry));
  return it->second;
}

OmegaCache& OmegaCache::global() {
  static OmegaCache cache;
  return cache;
}

Decomposition decompose_cached(const SymCoords& target, Scheme scheme,
                               double residual_tol) {
  const auto entry = OmegaCache::global().get(target.n, scheme);
  return solve_system(target, entry->basis, entry->omega, entry->lu, entry->condition,
                      residual_tol);
}

}  // namespace pimeas
