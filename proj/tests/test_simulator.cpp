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

#include "pimeas/simulator.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "pimeas/sym_core.hpp"

using namespace pimeas;

namespace {

DenseOperator all_zeros_state(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseOperator rho = DenseOperator::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return rho;
}

}  // namespace

TEST_CASE("exact statistics on eigenstates and mixtures") {
  // |0...0> measured along Z: the all-plus string with probability 1.
  const auto stats = exact_statistics(all_zeros_state(3), LocalSetting{});
  CHECK(stats.p[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t idx = 1; idx < 8; ++idx)
    CHECK(stats.p[idx] == doctest::Approx(0.0).epsilon(1e-12));

  // Maximally mixed state: uniform under any setting.
  const DenseOperator mixed = DenseOperator::Identity(8, 8) / 8.0;
  const auto uniform = exact_statistics(mixed, LocalSetting::from_raw(0.3, -0.7, 0.2));
  for (double p : uniform.p) CHECK(p == doctest::Approx(1.0 / 8).epsilon(1e-12));

  // GHZ_2 along X x X: correlated halves.
  const auto ghz_xx =
      exact_statistics(projector(ghz_state(2)), LocalSetting::from_raw(1, 0, 0));
  CHECK(ghz_xx.p[outcome_index("++")] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ghz_xx.p[outcome_index("--")] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ghz_xx.p[outcome_index("+-")] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ghz_xx.p[outcome_index("-+")] == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(exact_statistics(DenseOperator::Identity(4, 4), LocalSetting{}),
                  ValidationError);  // trace 2
}

TEST_CASE("exact statistics agree with the projector oracle") {
  for (int n = 1; n <= 3; ++n) {
    const DenseOperator rho = random_pi_density(n, 55 + n);
    for (const auto& raw :
         {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0.4, -0.3, 0.8),
          Eigen::Vector3d(-0.2, 0.9, -0.1)}) {
      LocalSetting setting = LocalSetting::from_raw(raw(0), raw(1), raw(2));
      const auto stats = exact_statistics(rho, setting);
      for (std::size_t idx = 0; idx < stats.p.size(); ++idx)
        CHECK(std::abs(stats.p[idx] -
                       oracle::born_probability(rho, setting.axis, idx)) < 1e-11);
    }
  }
}

TEST_CASE("sample_shots determinism and counting") {
  OutcomeDistribution dist;
  dist.n = 2;
  dist.p = {0.1, 0.2, 0.3, 0.4};

  const ShotRecord a = sample_shots(dist, 5000, 42, 7);
  const ShotRecord b = sample_shots(dist, 5000, 42, 7);
  CHECK(a.counts == b.counts);
  CHECK(a.seed == 42);
  CHECK(a.setting_index == 7);
  std::uint64_t total = 0;
  for (const auto& [key, count] : a.counts) {
    CHECK(key.size() == 2);
    total += count;
  }
  CHECK(total == 5000);

  // A deterministic distribution produces a single outcome bucket.
  OutcomeDistribution point;
  point.n = 2;
  point.p = {0.0, 1.0, 0.0, 0.0};
  const ShotRecord single = sample_shots(point, 100, 1);
  REQUIRE(single.counts.size() == 1);
  CHECK(single.counts.at("+-") == 100);

  CHECK_THROWS_AS(sample_shots(dist, 0, 1), ValidationError);
}

TEST_CASE("fair coin frequency under the default seed") {
  OutcomeDistribution coin;
  coin.n = 1;
  coin.p = {0.5, 0.5};
  const ShotRecord record = sample_shots(coin, 1000000, kDefaultSeed);
  const double freq =
      static_cast<double>(record.counts.at("+")) / static_cast<double>(record.shots);
  CHECK(std::abs(freq - 0.5) < 0.002);  // 4 sigma at 1e6 draws
}

TEST_CASE("empirical distribution converges") {
  OutcomeDistribution dist;
  dist.n = 2;
  dist.p = {0.15, 0.35, 0.05, 0.45};
  const ShotRecord record = sample_shots(dist, 200000, 9);
  const OutcomeDistribution emp = record.empirical(2);
  for (std::size_t idx = 0; idx < 4; ++idx)
    CHECK(std::abs(emp.p[idx] - dist.p[idx]) < 0.005);
}

TEST_CASE("setting expectations match the dense operator oracle") {
  // GHZ_3 along sigma_Z: the three-qubit parity has zero expectation.
  const DenseOperator ghz3 = projector(ghz_state(3));
  const LocalSetting z;
  const auto values = expectations_from_setting(exact_statistics(ghz3, z));
  CHECK(values[0] == doctest::Approx(0.0).epsilon(1e-12));
  for (int t = 0; t <= 3; ++t)
    CHECK(values[t] ==
          doctest::Approx(oracle::symmetrized_expectation(ghz3, t, z.axis))
              .epsilon(1e-10));

  // Random state and tilted setting, all identity counts.
  const DenseOperator rho = random_pi_density(3, 321);
  const LocalSetting tilted = LocalSetting::from_raw(0.6, -0.5, 1.2);
  const auto tilted_values = expectations_from_setting(exact_statistics(rho, tilted));
  for (int t = 0; t <= 3; ++t)
    CHECK(std::abs(tilted_values[t] -
                   oracle::symmetrized_expectation(rho, t, tilted.axis)) < 1e-10);
}

TEST_CASE("exact fidelity estimates for named fixtures") {
  // Self-fidelity of GHZ_4 through its own plan.
  const MeasurementPlan ghz4 = plan_ghz(4);
  const DenseOperator rho_ghz4 = projector(ghz_state(4));
  CHECK(estimate_fidelity(ghz4, measure_plan_exact(ghz4, rho_ghz4)).value ==
        doctest::Approx(1.0).epsilon(1e-9));

  // |0...0> against GHZ_n: overlap 1/2.
  for (int n : {3, 5}) {
    const MeasurementPlan plan = plan_ghz(n);
    const auto est = estimate_fidelity(plan, measure_plan_exact(plan, all_zeros_state(n)));
    CHECK(est.value == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(est.std_error == 0.0);
    CHECK(est.mode == "exact");
  }

  // Maximally mixed state: 2^-n.
  const MeasurementPlan plan3 = plan_ghz(3);
  const DenseOperator mixed = DenseOperator::Identity(8, 8) / 8.0;
  CHECK(estimate_fidelity(plan3, measure_plan_exact(plan3, mixed)).value ==
        doctest::Approx(1.0 / 8).epsilon(1e-9));

  // White noise at p = 0.2 on GHZ_3: 0.8 + 0.2/8.
  const DenseOperator noisy = white_noise(projector(ghz_state(3)), 0.2);
  CHECK(estimate_fidelity(plan3, measure_plan_exact(plan3, noisy)).value ==
        doctest::Approx(0.825).epsilon(1e-9));

  CHECK_THROWS_AS(estimate_fidelity(plan3, std::vector<OutcomeDistribution>{}),
                  ValidationError);
}

TEST_CASE("noise channels") {
  const DenseOperator ghz3 = projector(ghz_state(3));

  // p = 0 is the identity channel.
  for (NoiseModel model :
       {NoiseModel::kDepolarizing, NoiseModel::kDephasing, NoiseModel::kBitflip})
    CHECK((apply_noise(ghz3, model, 0.0) - ghz3).cwiseAbs().maxCoeff() < 1e-14);

  // Full depolarizing on one qubit gives I/2.
  DenseOperator one = DenseOperator::Zero(2, 2);
  one(0, 0) = 0.7;
  one(1, 1) = 0.3;
  one(0, 1) = one(1, 0) = 0.3;
  CHECK((apply_noise(one, NoiseModel::kDepolarizing, 1.0) -
         DenseOperator::Identity(2, 2) / 2)
            .cwiseAbs()
            .maxCoeff() < 1e-14);

  // Dephasing scales the full off-diagonal slice by (1-p)^n.
  const double p = 0.3;
  const int n = 3;
  const SymCoords before = project_to_sym(ghz3);
  const SymCoords after = project_to_sym(apply_noise(ghz3, NoiseModel::kDephasing, p));
  const double factor = std::pow(1.0 - p, n);
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j + k <= n; ++j) {
      if (j + k == n && before.at(0, j, k) != 0.0)
        CHECK(after.at(0, j, k) ==
              doctest::Approx(factor * before.at(0, j, k)).epsilon(1e-10));
    }
  }

  // Channel outputs stay valid density matrices.
  for (NoiseModel model :
       {NoiseModel::kDepolarizing, NoiseModel::kDephasing, NoiseModel::kBitflip})
    for (double prob : {0.1, 0.5, 1.0})
      CHECK_NOTHROW(validate_density_matrix(apply_noise(ghz3, model, prob)));
  CHECK_NOTHROW(validate_density_matrix(white_noise(ghz3, 0.37)));
  CHECK_THROWS_AS(apply_noise(ghz3, NoiseModel::kBitflip, 1.5), ValidationError);
}

TEST_CASE("random PI density matrices are PI and physical") {
  for (int n = 2; n <= 4; ++n) {
    const DenseOperator rho = random_pi_density(n, 1000 + n);
    CHECK_NOTHROW(validate_density_matrix(rho));
    CHECK(pi_distance(rho) < 1e-12);
  }
}

TEST_CASE("every plan family reproduces the oracle fidelity") {
  // General plans under both node schemes plus the specialized planners,
  // all within 1e-8 of Tr(rho Psi).
  for (int n = 2; n <= 4; ++n) {
    const DenseOperator rho = random_pi_density(n, 300 + n);
    std::vector<std::pair<SymCoords, std::vector<MeasurementPlan>>> cases;
    {
      const SymCoords ghz = pi_target_library(TargetKind::kGhz, n);
      const SymCoords w = pi_target_library(TargetKind::kW, n);
      cases.push_back({ghz, {plan_ghz(n)}});
      cases.push_back({w, {plan_dicke(n, 1)}});
      for (Scheme scheme : {Scheme::kInteger, Scheme::kTangent}) {
        cases[0].second.push_back(
            reduce_to_settings(decompose_cached(ghz, scheme), "ghz"));
        cases[1].second.push_back(
            reduce_to_settings(decompose_cached(w, scheme), "w"));
      }
    }
    for (const auto& [target, plans] : cases) {
      const double exact = (to_dense(target) * rho).trace().real();
      for (const MeasurementPlan& plan : plans) {
        const double estimate =
            estimate_fidelity(plan, measure_plan_exact(plan, rho)).value;
        CHECK(std::abs(estimate - exact) < 1e-8);
      }
    }
  }
}

TEST_CASE("sampled estimates bracket the exact value") {
  const int n = 3;
  const MeasurementPlan plan = plan_ghz(n);
  const DenseOperator rho = white_noise(projector(ghz_state(n)), 0.2);
  const double exact = 0.825;
  int covered = 0;
  const int trials = 40;
  for (int trial = 0; trial < trials; ++trial) {
    const auto records = simulate_plan(plan, rho, 10000, 5000 + trial);
    const FidelityEstimate est = estimate_fidelity(plan, records);
    CHECK(est.std_error > 0.0);
    if (std::abs(est.value - exact) <= 5.0 * est.std_error) ++covered;
    // Physical state, projector target: the estimate stays within the
    // statistical band around [0, 1].
    const double slack = 3.0 * est.std_error + 1e-9;
    CHECK(est.value >= -slack);
    CHECK(est.value <= 1.0 + slack);
  }
  CHECK(covered >= trials - 1);
}

TEST_CASE("per-setting seeds are derived, not shared") {
  const MeasurementPlan plan = plan_ghz(2);
  const auto records = simulate_plan(plan, projector(ghz_state(2)), 100, 7);
  REQUIRE(records.size() == 3);
  CHECK(records[0].seed == derive_seed(7, 0));
  CHECK(records[1].seed == derive_seed(7, 1));
  CHECK(records[0].seed != records[1].seed);
  // Reordering settings cannot change a setting's stream.
  CHECK(derive_seed(7, 2) == records[2].seed);
}
