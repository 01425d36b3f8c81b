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

#include <algorithm>
#include <cmath>
#include <random>

#include "pimeas/sym_core.hpp"

namespace pimeas {

namespace {

// Applies the single-qubit unitary u on qubit q from both sides:
// rho -> (I x u^dag x I) rho (I x u x I).
void rotate_qubit(DenseOperator& rho, int n, int q, const Eigen::Matrix2cd& u) {
  const Eigen::Index dim = rho.rows();
  const Eigen::Index bit = Eigen::Index{1} << (n - 1 - q);
  const Eigen::Matrix2cd udag = u.adjoint();
  for (Eigen::Index r0 = 0; r0 < dim; ++r0) {
    if (r0 & bit) continue;
    const Eigen::Index r1 = r0 | bit;
    for (Eigen::Index c = 0; c < dim; ++c) {
      const Complex a = rho(r0, c), b = rho(r1, c);
      rho(r0, c) = udag(0, 0) * a + udag(0, 1) * b;
      rho(r1, c) = udag(1, 0) * a + udag(1, 1) * b;
    }
  }
  for (Eigen::Index c0 = 0; c0 < dim; ++c0) {
    if (c0 & bit) continue;
    const Eigen::Index c1 = c0 | bit;
    for (Eigen::Index r = 0; r < dim; ++r) {
      const Complex a = rho(r, c0), b = rho(r, c1);
      rho(r, c0) = a * u(0, 0) + b * u(1, 0);
      rho(r, c1) = a * u(0, 1) + b * u(1, 1);
    }
  }
}

// Columns are the +1/-1 eigenvectors of axis . sigma.
Eigen::Matrix2cd measurement_frame(const Eigen::Vector3d& axis) {
  const double theta = std::acos(std::clamp(axis(2), -1.0, 1.0));
  const double phi = std::atan2(axis(1), axis(0));
  const Complex phase(std::cos(phi), std::sin(phi));
  Eigen::Matrix2cd u;
  u(0, 0) = std::cos(theta / 2);
  u(1, 0) = phase * std::sin(theta / 2);
  u(0, 1) = -std::conj(phase) * std::sin(theta / 2);
  u(1, 1) = std::cos(theta / 2);
  return u;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

OutcomeDistribution exact_statistics(const DenseOperator& rho,
                                     const LocalSetting& setting) {
  validate_density_matrix(rho);
  const int n = qubit_count(rho);
  DenseOperator rotated = rho;
  const Eigen::Matrix2cd frame = measurement_frame(setting.axis);
  for (int q = 0; q < n; ++q) rotate_qubit(rotated, n, q, frame);
  OutcomeDistribution stats;
  stats.n = n;
  stats.p.resize(std::size_t{1} << n);
  for (std::size_t idx = 0; idx < stats.p.size(); ++idx)
    stats.p[idx] = rotated(static_cast<Eigen::Index>(idx),
                           static_cast<Eigen::Index>(idx)).real();
  stats.validate();
  return stats;
}

OutcomeDistribution ShotRecord::empirical(int n) const {
  if (shots == 0) throw ValidationError("shot record has zero shots");
  OutcomeDistribution stats;
  stats.n = n;
  stats.p.assign(std::size_t{1} << n, 0.0);
  for (const auto& [key, count] : counts) {
    if (static_cast<int>(key.size()) != n)
      throw ValidationError("outcome string length differs from qubit count");
    stats.p[outcome_index(key)] =
        static_cast<double>(count) / static_cast<double>(shots);
  }
  return stats;
}

std::uint64_t derive_seed(std::uint64_t master_seed, int setting_index) {
  return splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(setting_index)));
}

ShotRecord sample_shots(const OutcomeDistribution& distribution, std::uint64_t shots,
                        std::uint64_t seed, int setting_index) {
  distribution.validate();
  if (shots < 1) throw ValidationError("shot count must be >= 1");
  std::vector<double> cumulative(distribution.p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < distribution.p.size(); ++i) {
    acc += std::max(0.0, distribution.p[i]);
    cumulative[i] = acc;
  }
  cumulative.back() = std::max(cumulative.back(), 1.0);
  std::mt19937_64 eng(seed);
  std::vector<std::uint64_t> counts(distribution.p.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(eng);
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx = std::min(
        static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
    ++counts[idx];
  }
  ShotRecord record;
  record.setting_index = setting_index;
  record.shots = shots;
  record.seed = seed;
  for (std::size_t idx = 0; idx < counts.size(); ++idx)
    if (counts[idx] > 0)
      record.counts.emplace(outcome_string(distribution.n, idx), counts[idx]);
  return record;
}

namespace {

// Per-shot value of one setting's contribution: sum_t alpha_t scale^{n-t}
// e_{n-t}(lambda). Constants (t = n) ride along without affecting variance.
double setting_statistic(const std::vector<double>& alpha, double scale, int n,
                         std::size_t outcome_idx) {
  std::vector<double> esym(n + 1, 0.0);
  esym[0] = 1.0;
  for (int q = 0; q < n; ++q) {
    const double lambda = ((outcome_idx >> (n - 1 - q)) & 1) ? -1.0 : 1.0;
    for (int deg = std::min(q + 1, n); deg >= 1; --deg)
      esym[deg] += lambda * esym[deg - 1];
  }
  double value = 0.0;
  double spow = 1.0;  // scale^{n-t} built from t = n downward
  for (int t = n; t >= 0; --t) {
    value += alpha[t] * spow * esym[n - t];
    spow *= scale;
  }
  return value;
}

}  // namespace

FidelityEstimate estimate_fidelity(const MeasurementPlan& plan,
                                   const std::vector<OutcomeDistribution>& stats) {
  if (stats.size() != plan.settings.size())
    throw ValidationError("one distribution per setting required");
  FidelityEstimate est;
  est.mode = "exact";
  est.plan_id = plan.target_id + ":n" + std::to_string(plan.n);
  for (std::size_t s = 0; s < stats.size(); ++s) {
    if (stats[s].n != plan.n) throw ValidationError("distribution qubit count mismatch");
    const std::vector<double> values = expectations_from_setting(stats[s]);
    const double scale = plan.settings[s].scale;
    double spow = 1.0;
    for (int t = plan.n; t >= 0; --t) {
      est.value += plan.coeffs[s][t] * spow * values[t];
      spow *= scale;
    }
  }
  return est;
}

FidelityEstimate estimate_fidelity(const MeasurementPlan& plan,
                                   const std::vector<ShotRecord>& records) {
  if (records.size() != plan.settings.size())
    throw ValidationError("one shot record per setting required");
  FidelityEstimate est;
  est.mode = "sampled";
  est.plan_id = plan.target_id + ":n" + std::to_string(plan.n);
  double variance = 0.0;
  for (std::size_t s = 0; s < records.size(); ++s) {
    const ShotRecord& record = records[s];
    if (record.shots == 0) throw ValidationError("shot record has zero shots");
    est.shots_per_setting = std::max(est.shots_per_setting, record.shots);
    if (s == 0) est.seed = record.seed;
    double mean = 0.0, second = 0.0;
    for (const auto& [key, count] : record.counts) {
      const double weight =
          static_cast<double>(count) / static_cast<double>(record.shots);
      const double y = setting_statistic(plan.coeffs[s], plan.settings[s].scale,
                                         plan.n, outcome_index(key));
      mean += weight * y;
      second += weight * y * y;
    }
    est.value += mean;
    if (record.shots > 1) {
      const double sample_var =
          std::max(0.0, second - mean * mean) *
          (static_cast<double>(record.shots) / static_cast<double>(record.shots - 1));
      variance += sample_var / static_cast<double>(record.shots);
    }
  }
  est.std_error = std::sqrt(variance);
  return est;
}

std::vector<OutcomeDistribution> measure_plan_exact(const MeasurementPlan& plan,
                                                    const DenseOperator& rho) {
  std::vector<OutcomeDistribution> stats;
  stats.reserve(plan.settings.size());
  for (const LocalSetting& setting : plan.settings)
    stats.push_back(exact_statistics(rho, setting));
  return stats;
}

std::vector<ShotRecord> simulate_plan(const MeasurementPlan& plan,
                                      const DenseOperator& rho, std::uint64_t shots,
                                      std::uint64_t master_seed) {
  std::vector<ShotRecord> records;
  records.reserve(plan.settings.size());
  for (std::size_t s = 0; s < plan.settings.size(); ++s) {
    const auto stats = exact_statistics(rho, plan.settings[s]);
    records.push_back(sample_shots(stats, shots,
                                   derive_seed(master_seed, static_cast<int>(s)),
                                   static_cast<int>(s)));
  }
  return records;
}

NoiseModel noise_model_from_string(const std::string& name) {
  if (name == "depolarizing") return NoiseModel::kDepolarizing;
  if (name == "dephasing") return NoiseModel::kDephasing;
  if (name == "bitflip") return NoiseModel::kBitflip;
  throw ValidationError("unknown noise model '" + name + "'");
}

DenseOperator apply_noise(const DenseOperator& rho, NoiseModel model, double p) {
  if (p < 0.0 || p > 1.0) throw ValidationError("noise probability must be in [0, 1]");
  const int n = qubit_count(rho);
  // Kraus sets of the single-qubit channels.
  std::vector<std::pair<double, const Eigen::Matrix2cd*>> kraus;
  switch (model) {
    case NoiseModel::kDepolarizing:
      kraus = {{1.0 - 0.75 * p, &pauli_id()},
               {0.25 * p, &pauli_x()},
               {0.25 * p, &pauli_y()},
               {0.25 * p, &pauli_z()}};
      break;
    case NoiseModel::kDephasing:
      kraus = {{1.0 - 0.5 * p, &pauli_id()}, {0.5 * p, &pauli_z()}};
      break;
    case NoiseModel::kBitflip:
      kraus = {{1.0 - p, &pauli_id()}, {p, &pauli_x()}};
      break;
  }
  DenseOperator out = rho;
  for (int q = 0; q < n; ++q) {
    DenseOperator next = DenseOperator::Zero(out.rows(), out.cols());
    for (const auto& [weight, op] : kraus) {
      if (weight == 0.0) continue;
      DenseOperator term = out;
      // K rho K^dag on qubit q; every Kraus element here is a Hermitian
      // unitary, so the frame rotation applies it exactly.
      rotate_qubit(term, n, q, *op);
      next += weight * term;
    }
    out = next;
  }
  return out;
}

DenseOperator white_noise(const DenseOperator& rho, double p) {
  if (p < 0.0 || p > 1.0) throw ValidationError("noise probability must be in [0, 1]");
  const int n = qubit_count(rho);
  const auto dim = static_cast<Eigen::Index>(Eigen::Index{1} << n);
  return (1.0 - p) * rho +
         (p / static_cast<double>(dim)) * DenseOperator::Identity(dim, dim);
}

DenseOperator random_pi_density(int n, std::uint64_t seed) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseOperator g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = Complex(normal(eng), normal(eng));
  DenseOperator rho = g * g.adjoint();
  rho /= rho.trace().real();
  return twirl(rho);
}

}  // namespace pimeas
