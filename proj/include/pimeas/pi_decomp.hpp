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
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <utility>

#include "pimeas/product_basis.hpp"
#include "pimeas/types.hpp"

namespace pimeas {

/// Expansion of a target observable over the product-operator basis:
/// target = sum_alpha gamma[alpha] * (a_i I + b_j X + c_k Y + Z)^{tensor n}.
struct Decomposition {
  int n = 0;
  OperatorBasis basis;
  SymCoords target;               // what gamma was solved against
  Eigen::VectorXd gamma;          // SymBasis lexicographic order
  double residual = 0.0;          // max-norm reconstruction error in coords
  double omega_condition = 0.0;   // condition estimate of the solved system
};

/// Change-of-basis matrix from the product-operator basis to the
/// orthogonal M basis: Omega[beta][alpha] = a_i^{beta_i} b_j^{beta_j}
/// c_k^{beta_k}, evaluated in closed form (the trace definition
/// c_beta Tr(M_beta O_alpha) is kept as a test oracle). Rows and columns
/// follow SymBasis lexicographic order; it equals the stacked coordinate
/// vectors of the basis operators and the d = 4 expansion matrix.
Eigen::MatrixXd omega_matrix(const OperatorBasis& basis);

/// Solves Omega * gamma = target by pivoted LU with one refinement step.
/// Throws NumericalError when the reconstruction residual exceeds
/// `residual_tol` (carrying residual and condition number).
Decomposition decompose(const SymCoords& target, const OperatorBasis& basis,
                        double residual_tol = tol::kResidual);

enum class TargetKind { kGhz, kW, kDicke };

/// Exact coordinates of the named projector. GHZ: the diagonal pair of
/// pure-Z slices plus the alternating X/Y slice. Dicke (W = one
/// excitation): closed-form string expectations of the projector.
SymCoords pi_target_library(TargetKind kind, int n, int m = 0);

/// Parses "ghz" | "w" | "dicke:<m>" target names used by plans and files.
SymCoords target_coords_from_name(const std::string& name, int n);

/// Read-mostly cache of factorized decomposition systems, keyed by
/// (n, scheme); safe for concurrent readers.
class OmegaCache {
 public:
  struct Entry {
    OperatorBasis basis;
    Eigen::MatrixXd omega;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    double condition = 0.0;
  };

  std::shared_ptr<const Entry> get(int n, Scheme scheme);
  static OmegaCache& global();

 private:
  std::shared_mutex mutex_;
  std::map<std::pair<int, int>, std::shared_ptr<const Entry>> entries_;
};

/// decompose() through the global cache.
Decomposition decompose_cached(const SymCoords& target, Scheme scheme,
                               double residual_tol = tol::kResidual);

}  // namespace pimeas
