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

#include <string>
#include <vector>

#include "pimeas/lms_planner.hpp"
#include "pimeas/types.hpp"

namespace pimeas {

/// Named basis slice used by the lower-bound arguments.
struct Subspace {
  enum class Kind {
    kGhzEvenXY,  // {M_{0, n-k, k} : even k} — the GHZ off-diagonal slice
    kDickeNullX  // {M_{0, j, 0} : 2m+1 <= j <= n} — where D_{n,m} vanishes
  };
  Kind kind = Kind::kGhzEvenXY;
  int n = 0;
  int m = 0;  // kDickeNullX only

  std::string id() const;
};

struct ProjectionVector {
  std::string subspace_id;
  std::vector<double> values;
};

/// GHZ projection onto its even-k X/Y slice: the alternating vector
/// 2^-n (1, -1, ..., (-1)^(n/2)), length floor(n/2)+1.
ProjectionVector ghz_projection(int n);

/// Projection of a plan's reconstructed observable onto a subspace,
/// assembled in closed form from the zero-identity coefficients: only
/// alpha[s][0] terms reach slices with no identity factor.
ProjectionVector plan_projection(const MeasurementPlan& plan, const Subspace& subspace);

/// Sign-alternation count s of consecutive entries, plus one: the minimal
/// number of exponential-sum terms that can interpolate the vector, hence
/// a lower bound on settings with nonzero X and Y components. Zero entries
/// contribute no alternation.
int min_settings_sign_change(const ProjectionVector& v);

/// Lower bound n - 2m + 1 on settings for D_{n,m} (n > 2m): a nonzero
/// coefficient vector annihilated by an (n-2m) x n_beta Vandermonde block
/// forces n_beta > n - 2m. Degenerates to 1 when n <= 2m.
int dicke_null_rank_bound(int n, int m);

struct BoundCertificate {
  std::string state_id;
  int n = 0;
  int m = 0;          // Dicke excitation number when applicable
  int lower_bound = 1;
  int plan_size = 0;
  bool pass = true;
  std::string witness;
};

/// Checks a plan against the applicable lower bound and re-verifies its
/// reconstruction residual when the target is known. Unknown targets get a
/// "no known bound" certificate that always passes.
BoundCertificate audit_plan(const MeasurementPlan& plan, const std::string& state_id);

}  // namespace pimeas
