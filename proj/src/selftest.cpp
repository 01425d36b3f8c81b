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

#include "pimeas/selftest.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "pimeas/bounds.hpp"
#include "pimeas/lms_planner.hpp"
#include "pimeas/pi_decomp.hpp"
#include "pimeas/product_basis.hpp"
#include "pimeas/simulator.hpp"
#include "pimeas/sym_core.hpp"

namespace pimeas {

namespace {

struct Check {
  std::string name;
  std::function<double()> worst_error;  // returns max deviation observed
  double tolerance;
};

// Rotates a setting axis within the X/Y plane by `offset` radians;
// identity for axes without X/Y support.
void rotate_plan_axes(MeasurementPlan& plan, double offset) {
  for (LocalSetting& s : plan.settings) {
    const double b = s.axis(0), c = s.axis(1);
    if (b == 0.0 && c == 0.0) continue;
    const double phi = std::atan2(c, b) + offset;
    const double r = std::hypot(b, c);
    s.axis(0) = r * std::cos(phi);
    s.axis(1) = r * std::sin(phi);
  }
}

}  // namespace

bool run_selftest(std::ostream& out, const FaultInjection& faults) {
  std::vector<Check> checks;

  checks.push_back({"orthonormal basis normalization (n<=4)", [&] {
    double worst = 0.0;
    for (int n = 2; n <= 4; ++n) {
      const SymBasis space(n);
      std::vector<DenseOperator> ms;
      for (const SymIndex& idx : space.indices()) ms.push_back(m_basis_dense(idx));
      for (std::size_t p = 0; p < ms.size(); ++p)
        for (std::size_t q = 0; q < ms.size(); ++q) {
          const double inner = faults.norm_const_scale * norm_const(space.at(p)) *
                               (ms[p] * ms[q]).trace().real();
          worst = std::max(worst, std::abs(inner - (p == q ? 1.0 : 0.0)));
        }
    }
    return worst;
  }, tol::kDerived});

  checks.push_back({"product expansion matches dense tensor power (n<=5)", [] {
    double worst = 0.0;
    std::mt19937_64 eng(11);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int n = 1; n <= 5; ++n)
      for (int rep = 0; rep < 5; ++rep) {
        const double a = coef(eng), b = coef(eng), c = coef(eng), d = coef(eng);
        Eigen::Matrix2cd local = a * pauli_id() + b * pauli_x() + c * pauli_y() +
                                 d * pauli_z();
        const SymCoords direct = product_op_coords(a, b, c, d, n);
        const SymCoords projected = project_to_sym(tensor_power(local, n));
        worst = std::max(worst, direct.distance(projected));
      }
    return worst;
  }, 1e-9});

  checks.push_back({"product bases keep full rank (d<=4, n<=5)", [] {
    for (int d = 1; d <= 4; ++d)
      for (int n = 1; n <= 5; ++n)
        for (Scheme scheme : {Scheme::kInteger, Scheme::kTangent})
          certify_rank(make_param_matrix(d, n, scheme));
    return 0.0;
  }, 0.5});

  checks.push_back({"basis-change matrix matches its trace definition (n<=3)", [] {
    double worst = 0.0;
    for (int n = 2; n <= 3; ++n) {
      const OperatorBasis basis = operator_basis(n, Scheme::kInteger);
      const Eigen::MatrixXd omega = omega_matrix(basis);
      const SymBasis space(n);
      for (std::size_t col = 0; col < space.size(); ++col) {
        const SymIndex& alpha = space.at(col);
        Eigen::Matrix2cd local = basis.a[alpha.i] * pauli_id() +
                                 basis.b[alpha.j] * pauli_x() +
                                 basis.c[alpha.k] * pauli_y() + pauli_z();
        const DenseOperator dense = tensor_power(local, n);
        for (std::size_t row = 0; row < space.size(); ++row) {
          const double trace_def = norm_const(space.at(row)) *
                                   (m_basis_dense(space.at(row)) * dense).trace().real();
          worst = std::max(worst, std::abs(trace_def - omega(row, col)));
        }
      }
    }
    return worst;
  }, tol::kDerived});

  checks.push_back({"target library matches dense projectors (n<=5)", [] {
    double worst = 0.0;
    for (int n = 2; n <= 5; ++n) {
      worst = std::max(worst, pi_target_library(TargetKind::kGhz, n)
                                  .distance(project_to_sym(projector(ghz_state(n)))));
      for (int m = 0; m <= n / 2; ++m)
        worst = std::max(worst,
                         pi_target_library(TargetKind::kDicke, n, m)
                             .distance(project_to_sym(projector(dicke_state(n, m)))));
    }
    return worst;
  }, tol::kDerived});

  checks.push_back({"general plan setting count (n+1)(n+2)/2", [] {
    for (int n = 2; n <= 8; ++n) {
      const auto dec = decompose_cached(pi_target_library(TargetKind::kGhz, n),
                                        Scheme::kInteger);
      if (reduce_to_settings(dec, "ghz").setting_count() !=
          static_cast<std::size_t>((n + 1) * (n + 2) / 2))
        return 1.0;
    }
    return 0.0;
  }, 0.5});

  checks.push_back({"specialized plan setting counts", [] {
    for (int n = 2; n <= 8; ++n)
      if (plan_ghz(n).setting_count() != static_cast<std::size_t>(n + 1)) return 1.0;
    for (int m = 1; m <= 2; ++m)
      for (int n = 2 * m; n <= 8; ++n)
        if (plan_dicke(n, m).setting_count() !=
            static_cast<std::size_t>(m * (2 * m + 3) * n + 1))
          return 1.0;
    return 0.0;
  }, 0.5});

  checks.push_back({"GHZ plan reconstructs its target (n<=6)", [&] {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
      MeasurementPlan plan = plan_ghz(n);
      if (faults.ghz_angle_offset != 0.0) rotate_plan_axes(plan, faults.ghz_angle_offset);
      worst = std::max(worst,
                       plan_residual(plan, pi_target_library(TargetKind::kGhz, n)));
    }
    return worst;
  }, tol::kPlanDense});

  checks.push_back({"Dicke plan reconstructs its target (n<=6)", [] {
    double worst = 0.0;
    for (int m = 1; m <= 2; ++m)
      for (int n = 2 * m; n <= 6; ++n)
        worst = std::max(worst, plan_dicke(n, m).residual);
    return worst;
  }, tol::kResidual});

  checks.push_back({"sign-change lower bound ceil((n+1)/2)", [] {
    for (int n = 2; n <= 10; ++n)
      if (min_settings_sign_change(ghz_projection(n)) != (n + 2) / 2) return 1.0;
    return 0.0;
  }, 0.5});

  checks.push_back({"Dicke plans vanish on the null slice", [] {
    double worst = 0.0;
    for (int m = 1; m <= 2; ++m)
      for (int n = 2 * m + 1; n <= 8; ++n) {
        const auto v = plan_projection(plan_dicke(n, m),
                                       Subspace{Subspace::Kind::kDickeNullX, n, m});
        for (double value : v.values) worst = std::max(worst, std::abs(value));
      }
    return worst;
  }, tol::kDerived});

  checks.push_back({"exact fidelity matches the dense oracle (n<=4)", [] {
    double worst = 0.0;
    for (int n = 2; n <= 4; ++n) {
      const DenseOperator rho = random_pi_density(n, 17 + n);
      for (const char* name : {"ghz", "w"}) {
        const SymCoords target = target_coords_from_name(name, n);
        const auto dec = decompose_cached(target, Scheme::kInteger);
        const MeasurementPlan plan = reduce_to_settings(dec, name);
        const double estimate =
            estimate_fidelity(plan, measure_plan_exact(plan, rho)).value;
        const double exact = (to_dense(target) * rho).trace().real();
        worst = std::max(worst, std::abs(estimate - exact));
      }
    }
    return worst;
  }, tol::kResidual});

  bool all_pass = true;
  for (const Check& check : checks) {
    double err = 0.0;
    std::string note;
    bool pass = false;
    try {
      err = check.worst_error();
      pass = err <= check.tolerance;
      std::ostringstream detail;
      detail << std::scientific << std::setprecision(2) << err << " (tol "
             << check.tolerance << ")";
      note = detail.str();
    } catch (const std::exception& ex) {
      note = ex.what();
    }
    out << (pass ? "[ok]   " : "[FAIL] ") << check.name << ": " << note << "\n";
    all_pass = all_pass && pass;
  }
  return all_pass;
}

}  // namespace pimeas
