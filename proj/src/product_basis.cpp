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

#include "pimeas/product_basis.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace pimeas {

bool ParamMatrix::distinct_within_rows() const {
  for (int k = 1; k < d; ++k)
    for (int j = 0; j <= n; ++j)
      for (int j2 = j + 1; j2 <= n; ++j2)
        if (rows(k, j) == rows(k, j2)) return false;
  return true;
}

double scheme_node(Scheme scheme, int j, int n) {
  if (scheme == Scheme::kInteger) return static_cast<double>(j);
  return std::tan((j + 0.25) * std::numbers::pi / (n + 2));
}

ParamMatrix make_param_matrix(int d, int n, Scheme scheme) {
  if (d < 1 || n < 1) throw ValidationError("param matrix needs d >= 1 and n >= 1");
  ParamMatrix pm;
  pm.d = d;
  pm.n = n;
  pm.scheme = scheme;
  pm.rows = Eigen::MatrixXd::Ones(d, n + 1);
  for (int k = 1; k < d; ++k)
    for (int j = 0; j <= n; ++j) pm.rows(k, j) = scheme_node(scheme, j, n);
  return pm;
}

std::vector<std::vector<int>> enumerate_compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> comp(parts, 0);
  // Odometer over parts 1..parts-1; part 0 absorbs the remainder.
  std::function<void(int, int)> rec = [&](int slot, int remaining) {
    if (slot == parts) {
      comp[0] = remaining;
      out.push_back(comp);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      comp[slot] = v;
      rec(slot + 1, remaining - v);
    }
  };
  if (parts == 1) {
    out.push_back({total});
    return out;
  }
  rec(1, total);
  return out;
}

ProductStateBasis product_state_basis(const ParamMatrix& pm) {
  ProductStateBasis basis;
  basis.d = pm.d;
  basis.n = pm.n;
  basis.compositions = enumerate_compositions(pm.n, pm.d);
  basis.local_coeffs.reserve(basis.compositions.size());
  for (const auto& comp : basis.compositions) {
    Eigen::VectorXd coeffs(pm.d);
    for (int k = 0; k < pm.d; ++k) coeffs(k) = pm.rows(k, comp[k]);
    basis.local_coeffs.push_back(std::move(coeffs));
  }
  return basis;
}

Eigen::MatrixXd expansion_matrix(const ParamMatrix& pm) {
  const auto comps = enumerate_compositions(pm.n, pm.d);
  const auto dim = static_cast<Eigen::Index>(comps.size());
  // Power tables built by repeated multiplication, matching the closed-form
  // coordinate path bit for bit.
  std::vector<std::vector<std::vector<double>>> powers(pm.d);
  for (int k = 1; k < pm.d; ++k) {
    powers[k].resize(pm.n + 1);
    for (int j = 0; j <= pm.n; ++j) {
      auto& table = powers[k][j];
      table.assign(pm.n + 1, 1.0);
      for (int e = 1; e <= pm.n; ++e) table[e] = table[e - 1] * pm.rows(k, j);
    }
  }
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    for (Eigen::Index row = 0; row < dim; ++row) {
      double v = 1.0;
      for (int k = 1; k < pm.d; ++k) v *= powers[k][comps[col][k]][comps[row][k]];
      m(row, col) = v;
    }
  }
  return m;
}

RankCertificate certify_rank(const ParamMatrix& pm) {
  Eigen::MatrixXd m = expansion_matrix(pm);
  // Column scaling is immaterial to linear independence; normalizing keeps
  // tangent-grid magnitudes from skewing the pivot thresholds.
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double norm = m.col(c).norm();
    if (norm > 0) m.col(c) /= norm;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  // Duplicate nodes collapse pivots to machine zero (relative ~1e-16);
  // legitimate grids stay above ~1e-12 for n <= 10. The threshold sits
  // between the two so only genuine degeneracy (or breakdown past n ~ 10)
  // is reported.
  qr.setThreshold(1e-14);
  RankCertificate cert;
  cert.rank = static_cast<int>(qr.rank());
  cert.expected = static_cast<std::size_t>(m.rows());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  cert.condition_number =
      smin > 0 ? svd.singularValues()(0) / smin : std::numeric_limits<double>::infinity();
  cert.ill_conditioned = !(cert.condition_number < tol::kCondWarn);
  if (cert.rank < static_cast<int>(cert.expected))
    throw NumericalError("product basis rank deficient: d=" + std::to_string(pm.d) +
                         " n=" + std::to_string(pm.n) + " scheme=" + to_string(pm.scheme) +
                         " rank=" + std::to_string(cert.rank) + " expected=" +
                         std::to_string(cert.expected));
  return cert;
}

std::size_t OperatorBasis::size() const {
  return static_cast<std::size_t>(binomial(n + 3, 3));
}

OperatorBasis operator_basis(int n, Scheme scheme) {
  const ParamMatrix pm = make_param_matrix(4, n, scheme);
  certify_rank(pm);
  OperatorBasis basis;
  basis.n = n;
  basis.scheme = scheme;
  basis.a.assign(pm.rows.row(1).begin(), pm.rows.row(1).end());
  basis.b.assign(pm.rows.row(2).begin(), pm.rows.row(2).end());
  basis.c.assign(pm.rows.row(3).begin(), pm.rows.row(3).end());
  return basis;
}

}  // namespace pimeas
