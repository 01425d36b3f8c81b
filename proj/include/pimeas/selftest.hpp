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

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pimeas {

/// Deliberate perturbations for demonstrating that the selftest catches
/// faults; both default off.
struct FaultInjection {
  double norm_const_scale = 1.0;   // multiplies the basis normalization
  double ghz_angle_offset = 0.0;   // radians added to GHZ plan axes
};

struct SelftestResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Oracle-equivalence suite at n <= 5: basis orthonormality, product
/// expansions vs. the dense oracle, plan setting counts and residuals,
/// lower-bound reproduction and end-to-end fidelity identities. Prints one
/// line per check to `out`; returns false if any check fails.
bool run_selftest(std::ostream& out, const FaultInjection& faults = {});

}  // namespace pimeas
