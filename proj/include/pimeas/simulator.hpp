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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pimeas/dense.hpp"
#include "pimeas/lms_planner.hpp"
#include "pimeas/types.hpp"

namespace pimeas {

/// Born-rule statistics of measuring the unit direction of `setting` on
/// every qubit of `rho`: probability of each +-1 outcome string, obtained
/// by rotating rho into the measurement eigenbasis and reading the
/// diagonal.
OutcomeDistribution exact_statistics(const DenseOperator& rho,
                                     const LocalSetting& setting);

/// Outcome counts of one simulated setting. `seed` is the stream seed the
/// counts were drawn with (derived from the master seed and setting index).
struct ShotRecord {
  int setting_index = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::uint64_t> counts;

  OutcomeDistribution empirical(int n) const;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eed5eed5eed5eedULL;

/// Stream seed for one setting, mixed from the master seed so settings
/// are independent regardless of simulation order.
std::uint64_t derive_seed(std::uint64_t master_seed, int setting_index);

/// Multinomial draw from a distribution; reproducible bit-for-bit from the
/// seed (own uniform doubles on top of mt19937_64, no library-dependent
/// distributions).
ShotRecord sample_shots(const OutcomeDistribution& distribution, std::uint64_t shots,
                        std::uint64_t seed, int setting_index = 0);

struct FidelityEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 in exact mode
  std::string mode;        // "exact" | "sampled"
  std::string plan_id;
  std::uint64_t shots_per_setting = 0;
  std::uint64_t seed = 0;
};

/// Exact-mode combination: one distribution per setting, in plan order.
FidelityEstimate estimate_fidelity(const MeasurementPlan& plan,
                                   const std::vector<OutcomeDistribution>& stats);

/// Sampled-mode combination with per-setting empirical variance of the
/// symmetric-polynomial estimator (the identity-count values from one
/// setting share shots, so their covariance is captured by evaluating the
/// combined per-shot statistic).
FidelityEstimate estimate_fidelity(const MeasurementPlan& plan,
                                   const std::vector<ShotRecord>& records);

/// exact_statistics over every setting of a plan.
std::vector<OutcomeDistribution> measure_plan_exact(const MeasurementPlan& plan,
                                                    const DenseOperator& rho);

/// Simulates `shots` per setting with per-setting derived seeds.
std::vector<ShotRecord> simulate_plan(const MeasurementPlan& plan,
                                      const DenseOperator& rho, std::uint64_t shots,
                                      std::uint64_t master_seed);

enum class NoiseModel { kDepolarizing, kDephasing, kBitflip };

NoiseModel noise_model_from_string(const std::string& name);

/// Single-qubit channel applied identically to every qubit (preserves
/// permutation invariance of PI inputs). Dephasing damps off-diagonals by
/// exactly 1-p per qubit; depolarizing mixes each qubit toward I/2.
DenseOperator apply_noise(const DenseOperator& rho, NoiseModel model, double p);

/// Global white noise (1-p) rho + p I/2^n.
DenseOperator white_noise(const DenseOperator& rho, double p);

/// Random permutation-invariant density matrix: a seeded Wishart draw,
/// twirled. Used as a test fixture.
DenseOperator random_pi_density(int n, std::uint64_t seed);

}  // namespace pimeas
