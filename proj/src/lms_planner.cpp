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

#include "pimeas/lms_planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "pimeas/sym_core.hpp"

namespace pimeas {

LocalSetting LocalSetting::from_raw(double b, double c, double d) {
  Eigen::Vector3d raw(b, c, d);
  const double scale = raw.norm();
  if (scale == 0.0) throw ValidationError("setting direction must be nonzero");
  LocalSetting s;
  s.axis = raw / scale;
  s.scale = scale;
  return s;
}

SymCoords plan_coords(const MeasurementPlan& plan) {
  SymCoords out(plan.n);
  for (std::size_t s = 0; s < plan.settings.size(); ++s) {
    const Eigen::Vector3d raw = plan.settings[s].raw();
    for (int t = 0; t <= plan.n; ++t) {
      const double alpha = plan.coeffs[s][t];
      if (alpha == 0.0) continue;
      accumulate_symmetrized_term(out, t, raw(0), raw(1), raw(2), alpha);
    }
  }
  return out;
}

double plan_residual(const MeasurementPlan& plan, const SymCoords& target) {
  return plan_coords(plan).distance(target);
}

namespace {

// Accumulates plan coefficients keyed so duplicate settings merge exactly.
class PlanBuilder {
 public:
  explicit PlanBuilder(int n) : n_(n) {}

  std::size_t setting(const std::array<int, 3>& key, double b, double c, double d) {
    auto it = order_.find(key);
    if (it != order_.end()) return it->second;
    const std::size_t pos = settings_.size();
    settings_.push_back(LocalSetting::from_raw(b, c, d));
    coeffs_.emplace_back(n_ + 1, 0.0);
    order_.emplace(key, pos);
    return pos;
  }

  void add(std::size_t setting_pos, int t, double alpha) {
    coeffs_[setting_pos][t] += alpha;
  }

  /// Adds a full product operator (a I + A_raw)^n with the given weight:
  /// alpha[t] += weight * a^t on the setting owning A_raw.
  void add_product(std::size_t setting_pos, double a, double weight) {
    double power = 1.0;
    for (int t = 0; t <= n_; ++t) {
      coeffs_[setting_pos][t] += weight * power;
      power *= a;
    }
  }

  MeasurementPlan finish(const std::string& target_id, const SymCoords& target) {
    MeasurementPlan plan;
    plan.n = n_;
    plan.target_id = target_id;
    plan.settings = std::move(settings_);
    plan.coeffs = std::move(coeffs_);
    plan.residual = plan_residual(plan, target);
    return plan;
  }

 private:
  int n_;
  std::map<std::array<int, 3>, std::size_t> order_;
  std::vector<LocalSetting> settings_;
  std::vector<std::vector<double>> coeffs_;
};

constexpr std::array<int, 3> kZKey{-1, -1, -1};

}  // namespace

MeasurementPlan reduce_to_settings(const Decomposition& dec,
                                   const std::string& target_id) {
  if (!(dec.residual <= tol::kResidual))
    throw ValidationError("decomposition residual above acceptance threshold");
  const int n = dec.n;
  PlanBuilder builder(n);
  const SymBasis space(n);
  // All (j, k) groups exist structurally (i = 0 is always present), so the
  // setting count is C(n+2, 2) regardless of coefficient values.
  for (std::size_t p = 0; p < space.size(); ++p) {
    const SymIndex& alpha = space.at(p);
    const std::size_t s = builder.setting({0, alpha.j, alpha.k}, dec.basis.b[alpha.j],
                                          dec.basis.c[alpha.k], 1.0);
    builder.add_product(s, dec.basis.a[alpha.i], dec.gamma(static_cast<Eigen::Index>(p)));
  }
  return builder.finish(target_id, dec.target);
}

MeasurementPlan plan_ghz(int n) {
  if (n < 2) throw ValidationError("GHZ plan needs n >= 2");
  const SymCoords target = pi_target_library(TargetKind::kGhz, n);
  PlanBuilder builder(n);
  // Diagonal projectors ((I+Z)/2)^n and ((I-Z)/2)^n on the sigma_Z setting.
  const std::size_t zpos = builder.setting(kZKey, 0.0, 0.0, 1.0);
  for (int t = 0; t <= n; ++t)
    builder.add(zpos, t, std::ldexp(1.0 + ((n - t) % 2 ? -1.0 : 1.0), -(n + 1)));
  // Equatorial settings at angles k pi / n carry the off-diagonal slice.
  // Solve sum_m w_m cos^{n-k} sin^k = target slice over all k (odd rows
  // are zero); the n columns are independent for distinct angles.
  Eigen::MatrixXd system(n + 1, n);
  std::vector<double> cosines(n), sines(n);
  for (int m = 0; m < n; ++m) {
    const double theta = m * std::numbers::pi / n;
    cosines[m] = std::cos(theta);
    sines[m] = std::sin(theta);
    for (int k = 0; k <= n; ++k)
      system(k, m) = std::pow(cosines[m], n - k) * std::pow(sines[m], k);
  }
  Eigen::VectorXd slice(n + 1);
  for (int k = 0; k <= n; ++k) slice(k) = target.at(0, n - k, k);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(system);
  if (qr.rank() < n)
    throw NumericalError("GHZ angle system lost rank; angles must be distinct");
  const Eigen::VectorXd weights = qr.solve(slice);
  for (int m = 0; m < n; ++m) {
    const std::size_t pos = builder.setting({m, -2, -2}, cosines[m], sines[m], 0.0);
    builder.add(pos, 0, weights(m));
  }
  MeasurementPlan plan = builder.finish("ghz", target);
  if (!(plan.residual <= tol::kPlanDense))
    throw NumericalError("GHZ plan residual " + std::to_string(plan.residual) +
                         " above 1e-9");
  return plan;
}

namespace {

// Coefficient of z^pow in (1-z)^neg (1+z)^pos.
double signed_convolution(int neg, int pos, int pow) {
  double acc = 0.0;
  for (int u = 0; u <= neg; ++u) {
    const int rest = pow - u;
    if (rest < 0 || rest > pos) continue;
    acc += (u % 2 ? -1.0 : 1.0) * binomial(neg, u) * binomial(pos, rest);
  }
  return acc;
}

// Coefficient of sum_pi X^l Y^{2t-l} in the order-t excitation flip
// sum_pi (X+iY)/2^t (X-iY)/2^t; zero for odd Y counts.
double flip_block_coefficient(int t, int l) {
  const int ycount = 2 * t - l;
  if (ycount % 2) return 0.0;
  const double sign = (ycount / 2) % 2 ? -1.0 : 1.0;
  return std::ldexp(sign, -2 * t) * signed_convolution(ycount, l, t);
}

// Distinct, nonzero node j of the Dicke parameter sets (node 0 is pinned
// to zero so the T_00 family needs no settings of its own).
double dicke_node(Scheme scheme, int j, int count) {
  if (j == 0) return 0.0;
  if (scheme == Scheme::kInteger) return static_cast<double>(j);
  return std::tan((j + 0.25) * std::numbers::pi / (count + 2));
}

}  // namespace

MeasurementPlan plan_dicke(int n, int m, Scheme scheme) {
  if (n < 1 || m < 0 || 2 * m > n)
    throw ValidationError("Dicke plan needs 0 <= m <= n/2, got n=" +
                          std::to_string(n) + " m=" + std::to_string(m));
  const SymCoords target = pi_target_library(TargetKind::kDicke, n, m);
  const double dicke_norm = binomial(n, m);
  PlanBuilder builder(n);
  const std::size_t zpos = builder.setting(kZKey, 0.0, 0.0, 1.0);
  // Diagonal block: the excitation-count projector expands over pure I/Z
  // slices with coefficients 2^-n [z^m] (1-z)^{n-i} (1+z)^i.
  for (int i = 0; i <= n; ++i)
    builder.add(zpos, i,
                std::ldexp(signed_convolution(n - i, i, m), -n) / dicke_norm);
  if (m == 0) return builder.finish("dicke:0", target);

  const int nodes = 2 * m;
  std::vector<double> bs(nodes + 1), cs(nodes + 1);
  for (int j = 0; j <= nodes; ++j) {
    bs[j] = dicke_node(scheme, j, nodes);
    cs[j] = dicke_node(scheme, j, nodes);
  }
  // Angle grid: theta_0 = 0 (shared sigma_Z column) plus n quarter-offset
  // angles, all distinct in [0, pi).
  std::vector<double> sines(n + 1, 0.0), cosines(n + 1, 1.0);
  for (int r = 1; r <= n; ++r) {
    const double theta = (r - 0.75) * std::numbers::pi / (n + 1);
    sines[r] = std::sin(theta);
    cosines[r] = std::cos(theta);
  }
  // Emit the full setting grid up front: every T_{jk} except T_00, every
  // nonzero angle. Counts stay exact even when a solved weight is zero.
  for (int j = 0; j <= nodes; ++j)
    for (int k = 0; k <= nodes - j; ++k) {
      if (j == 0 && k == 0) continue;
      for (int r = 1; r <= n; ++r)
        builder.setting({j, k, r}, sines[r] * bs[j], sines[r] * cs[k],
                        (cosines[r] - sines[r]) / 2.0);
    }
  // Interpolation from the angle products to fixed T-powers:
  // (sin T + cos Q0)^n = sum_s sin^s cos^{n-s} * sym(T^s Q0^{n-s}).
  Eigen::MatrixXd angle_system(n + 1, n + 1);
  for (int r = 0; r <= n; ++r)
    for (int s = 0; s <= n; ++s)
      angle_system(r, s) = std::pow(sines[r], s) * std::pow(cosines[r], n - s);
  const Eigen::MatrixXd angle_inverse = angle_system.inverse();

  for (int t = 1; t <= m; ++t) {
    const int mt = m + t;
    // Solve for the flip block of order t inside its subspace: basis
    // operators sym(T_{jk}^{mt} Q0^{n-mt}) expand as 1^i b_j^{j'} c_k^{k'}
    // over compositions of mt.
    const auto comps = enumerate_compositions(mt, 3);
    const auto dim = static_cast<Eigen::Index>(comps.size());
    std::vector<std::pair<int, int>> pairs;
    for (int j = 0; j <= mt; ++j)
      for (int k = 0; k <= mt - j; ++k) pairs.emplace_back(j, k);
    Eigen::MatrixXd system(dim, dim);
    Eigen::VectorXd rhs(dim);
    for (Eigen::Index row = 0; row < dim; ++row) {
      const int jp = comps[row][1], kp = comps[row][2], ip = comps[row][0];
      for (Eigen::Index col = 0; col < dim; ++col)
        system(row, col) =
            std::pow(bs[pairs[col].first], jp) * std::pow(cs[pairs[col].second], kp);
      rhs(row) = (ip == m - t) ? flip_block_coefficient(t, jp) : 0.0;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    Eigen::VectorXd g = lu.solve(rhs);
    g += lu.solve(rhs - system * g);
    // Scatter through the angle interpolation onto the final settings.
    for (Eigen::Index col = 0; col < dim; ++col) {
      const int j = pairs[col].first, k = pairs[col].second;
      for (int r = 0; r <= n; ++r) {
        const double weight = g(col) * angle_inverse(static_cast<Eigen::Index>(mt), r) /
                              dicke_norm;
        const double a = (sines[r] + cosines[r]) / 2.0;
        const double d = (cosines[r] - sines[r]) / 2.0;
        if ((j == 0 && k == 0) || r == 0) {
          // Diagonal product (a I + d Z)^n folds onto the shared sigma_Z
          // setting.
          double apow = 1.0;
          for (int tt = 0; tt <= n; ++tt) {
            builder.add(zpos, tt, weight * apow * std::pow(d, n - tt));
            apow *= a;
          }
        } else {
          builder.add_product(builder.setting({j, k, r}, sines[r] * bs[j],
                                              sines[r] * cs[k], d),
                              a, weight);
        }
      }
    }
  }
  MeasurementPlan plan = builder.finish("dicke:" + std::to_string(m), target);
  if (!(plan.residual <= tol::kResidual))
    throw NumericalError("Dicke plan residual " + std::to_string(plan.residual) +
                         " above tolerance");
  return plan;
}

void OutcomeDistribution::validate() const {
  if (n < 1 || p.size() != (std::size_t{1} << n))
    throw ValidationError("outcome distribution has wrong length");
  double sum = 0.0;
  for (double v : p) sum += v;
  if (std::abs(sum - 1.0) > tol::kProbSum)
    throw ValidationError("outcome probabilities sum to " + std::to_string(sum));
}

std::vector<double> expectations_from_setting(const OutcomeDistribution& stats) {
  stats.validate();
  const int n = stats.n;
  std::vector<double> values(n + 1, 0.0);
  std::vector<double> esym(n + 1, 0.0);
  for (std::size_t idx = 0; idx < stats.p.size(); ++idx) {
    if (stats.p[idx] == 0.0) continue;
    // Elementary symmetric polynomials of the +-1 eigenvalues.
    std::fill(esym.begin(), esym.end(), 0.0);
    esym[0] = 1.0;
    for (int q = 0; q < n; ++q) {
      const double lambda = ((idx >> (n - 1 - q)) & 1) ? -1.0 : 1.0;
      for (int deg = std::min(q + 1, n); deg >= 1; --deg)
        esym[deg] += lambda * esym[deg - 1];
    }
    for (int t = 0; t <= n; ++t) values[t] += stats.p[idx] * esym[n - t];
  }
  return values;
}

std::string outcome_string(int n, std::size_t index) {
  std::string out(n, '+');
  for (int q = 0; q < n; ++q)
    if ((index >> (n - 1 - q)) & 1) out[q] = '-';
  return out;
}

std::size_t outcome_index(const std::string& outcomes) {
  std::size_t idx = 0;
  for (char ch : outcomes) {
    idx <<= 1;
    if (ch == '-') idx |= 1;
    else if (ch != '+') throw ValidationError("outcome strings use only '+'/'-'");
  }
  return idx;
}

}  // namespace pimeas
