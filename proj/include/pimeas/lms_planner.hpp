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
#include <string>
#include <vector>

#include "pimeas/pi_decomp.hpp"
#include "pimeas/types.hpp"

namespace pimeas {

/// One local measurement setting: the direction of A = b X + c Y + d Z,
/// applied to every qubit. Stored as a unit vector plus the scale of the
/// raw (unnormalized) operator, so coefficient bookkeeping stays exact:
/// the simulator measures the unit direction, coefficient algebra uses
/// raw = scale * axis.
struct LocalSetting {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();  // unit (b, c, d)
  double scale = 1.0;

  static LocalSetting from_raw(double b, double c, double d);
  Eigen::Vector3d raw() const { return scale * axis; }
};

/// A set of settings plus coefficients alpha[s][t] on the symmetrized
/// operators sum_pi I^t A_s^{n-t} (t = n is the constant identity term).
/// The weighted sum reproduces the target observable within `residual`.
struct MeasurementPlan {
  int n = 0;
  std::string target_id;
  std::vector<LocalSetting> settings;
  std::vector<std::vector<double>> coeffs;  // [setting][identity count 0..n]
  double residual = 0.0;

  std::size_t setting_count() const { return settings.size(); }
};

/// Coordinates of the observable a plan reconstructs.
SymCoords plan_coords(const MeasurementPlan& plan);

/// Recomputes the plan residual against a target.
double plan_residual(const MeasurementPlan& plan, const SymCoords& target);

/// General planner: expands every basis operator of an accepted
/// decomposition through its identity component and groups by the exact
/// (j, k) parameter pair, yielding one setting (b_j X + c_k Y + Z) per
/// pair — (n+1)(n+2)/2 settings in total.
MeasurementPlan reduce_to_settings(const Decomposition& dec,
                                   const std::string& target_id = "general");

/// GHZ planner, n + 1 settings: sigma_Z for both diagonal projectors plus
/// n equatorial settings cos(k pi/n) X + sin(k pi/n) Y whose weights are
/// solved from the zero-identity X/Y slice of the target.
MeasurementPlan plan_ghz(int n);

/// Dicke planner, m(2m+3)n + 1 settings.
///
/// Follows the subspace construction: the projector splits into diagonal
/// and excitation-flip parts; each flip part of order t lives in the span
/// of symmetrized products of m+t copies of T_{jk} = (I-Z)/2 + b_j X +
/// c_k Y and (I+Z)/2 on the rest, and each such product is interpolated
/// from the n+1 local directions sin(theta) T_{jk} + cos(theta) (I+Z)/2
/// over distinct angles. The theta = 0 column and the whole T_{00} family
/// collapse onto a single shared sigma_Z setting (b_0 = c_0 = 0).
/// m = 0 degenerates to that single sigma_Z setting.
MeasurementPlan plan_dicke(int n, int m, Scheme scheme = Scheme::kInteger);

/// Probability distribution over the 2^n outcome strings of one setting;
/// index bit n-1-q = 0 encodes outcome +1 on qubit q.
struct OutcomeDistribution {
  int n = 0;
  std::vector<double> p;

  void validate() const;  // probabilities sum to 1 within 1e-9
};

/// Expectation values of sum_pi I^t A^{n-t} for t = 0..n under the given
/// outcome statistics of the unit direction A (the t = n entry is the
/// trivial identity expectation 1). Evaluated through elementary symmetric
/// polynomials of the +-1 outcomes, O(n^2) per outcome string.
std::vector<double> expectations_from_setting(const OutcomeDistribution& stats);

/// Outcome string for an outcome index, '+'/'-' per qubit, qubit 0 first.
std::string outcome_string(int n, std::size_t index);
std::size_t outcome_index(const std::string& outcomes);

}  // namespace pimeas
