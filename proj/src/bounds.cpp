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

#include "pimeas/bounds.hpp"

#include <cmath>
#include <sstream>

#include "pimeas/pi_decomp.hpp"

namespace pimeas {

std::string Subspace::id() const {
  if (kind == Kind::kGhzEvenXY) return "ghz-even-xy";
  return "dicke-null-x:" + std::to_string(m);
}

ProjectionVector ghz_projection(int n) {
  if (n < 2) throw ValidationError("GHZ projection needs n >= 2");
  ProjectionVector v;
  v.subspace_id = Subspace{Subspace::Kind::kGhzEvenXY, n, 0}.id();
  const double scale = std::ldexp(1.0, -n);
  for (int half = 0; half <= n / 2; ++half)
    v.values.push_back(half % 2 ? -scale : scale);
  return v;
}

ProjectionVector plan_projection(const MeasurementPlan& plan, const Subspace& subspace) {
  if (plan.n != subspace.n)
    throw ValidationError("plan and subspace qubit counts differ");
  const int n = plan.n;
  ProjectionVector v;
  v.subspace_id = subspace.id();
  if (subspace.kind == Subspace::Kind::kGhzEvenXY) {
    for (int k = 0; k <= n; k += 2) {
      double acc = 0.0;
      for (std::size_t s = 0; s < plan.settings.size(); ++s) {
        const double alpha = plan.coeffs[s][0];
        if (alpha == 0.0) continue;
        const Eigen::Vector3d raw = plan.settings[s].raw();
        acc += alpha * std::pow(raw(0), n - k) * std::pow(raw(1), k);
      }
      v.values.push_back(acc);
    }
    return v;
  }
  for (int j = 2 * subspace.m + 1; j <= n; ++j) {
    double acc = 0.0;
    for (std::size_t s = 0; s < plan.settings.size(); ++s) {
      const double alpha = plan.coeffs[s][0];
      if (alpha == 0.0) continue;
      const Eigen::Vector3d raw = plan.settings[s].raw();
      acc += alpha * std::pow(raw(0), j) * std::pow(raw(2), n - j);
    }
    v.values.push_back(acc);
  }
  return v;
}

int min_settings_sign_change(const ProjectionVector& v) {
  int alternations = 0;
  int previous = 0;
  for (double value : v.values) {
    const int sign = value > 0 ? 1 : value < 0 ? -1 : 0;
    if (sign == 0) continue;
    if (previous != 0 && sign != previous) ++alternations;
    previous = sign;
  }
  return alternations + 1;
}

int dicke_null_rank_bound(int n, int m) {
  if (n < 1 || m < 0) throw ValidationError("invalid Dicke bound arguments");
  if (n <= 2 * m) return 1;  // degenerate: the null slice is empty
  return n - 2 * m + 1;
}

namespace {

struct SettingPartition {
  int both = 0;    // b != 0 and c != 0
  int only_b = 0;  // c = 0
  int only_c = 0;  // b = 0
  int pure_z = 0;  // b = c = 0
};

SettingPartition partition_settings(const MeasurementPlan& plan) {
  SettingPartition part;
  constexpr double kZeroTol = 1e-12;
  for (const LocalSetting& s : plan.settings) {
    const Eigen::Vector3d raw = s.raw();
    const bool has_b = std::abs(raw(0)) > kZeroTol;
    const bool has_c = std::abs(raw(1)) > kZeroTol;
    if (has_b && has_c) ++part.both;
    else if (has_b) ++part.only_b;
    else if (has_c) ++part.only_c;
    else ++part.pure_z;
  }
  return part;
}

}  // namespace

BoundCertificate audit_plan(const MeasurementPlan& plan, const std::string& state_id) {
  BoundCertificate cert;
  cert.state_id = state_id;
  cert.n = plan.n;
  cert.plan_size = static_cast<int>(plan.settings.size());
  std::ostringstream witness;

  SymCoords target(plan.n);
  bool known = true;
  if (state_id == "ghz") {
    target = pi_target_library(TargetKind::kGhz, plan.n);
    cert.lower_bound = min_settings_sign_change(ghz_projection(plan.n));
    witness << "alternating projection on the even X/Y slice needs "
            << cert.lower_bound << " exponential terms; ";
  } else if (state_id == "w") {
    cert.m = 1;
    target = pi_target_library(TargetKind::kW, plan.n);
    cert.lower_bound = dicke_null_rank_bound(plan.n, 1);
    witness << "null-slice Vandermonde argument (m=1) gives " << cert.lower_bound
            << "; ";
  } else if (state_id.rfind("dicke:", 0) == 0) {
    cert.m = std::stoi(state_id.substr(6));
    target = pi_target_library(TargetKind::kDicke, plan.n, cert.m);
    cert.lower_bound = dicke_null_rank_bound(plan.n, cert.m);
    if (plan.n <= 2 * cert.m)
      witness << "degenerate case n <= 2m, bound 1; ";
    else
      witness << "null-slice Vandermonde argument gives " << cert.lower_bound << "; ";
  } else {
    known = false;
    cert.lower_bound = 1;
    witness << "no known bound for '" << state_id << "'; ";
  }

  const SettingPartition part = partition_settings(plan);
  witness << "settings split |S|=" << part.both << " |S_b|=" << part.only_b
          << " |S_c|=" << part.only_c << " pure-Z=" << part.pure_z << "; ";

  cert.pass = cert.plan_size >= cert.lower_bound;
  if (!cert.pass) witness << "plan has fewer settings than the bound; ";
  if (known) {
    const double residual = plan_residual(plan, target);
    witness << "reconstruction residual " << residual;
    if (!(residual <= tol::kResidual)) {
      cert.pass = false;
      witness << " exceeds " << tol::kResidual;
    }
  } else {
    witness << "stored residual " << plan.residual;
  }
  cert.witness = witness.str();
  return cert;
}

}  // namespace pimeas
