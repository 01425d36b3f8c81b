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
#include <random>

#include "doctest.h"

using namespace pimeas;

TEST_CASE("make_param_matrix integer examples") {
  const ParamMatrix pm = make_param_matrix(2, 2, Scheme::kInteger);
  CHECK(pm.rows.row(0).isOnes());
  CHECK(pm.rows(1, 0) == 0.0);
  CHECK(pm.rows(1, 1) == 1.0);
  CHECK(pm.rows(1, 2) == 2.0);

  const ParamMatrix pm41 = make_param_matrix(4, 1, Scheme::kInteger);
  CHECK(pm41.rows.rows() == 4);
  CHECK(pm41.rows.cols() == 2);
  for (int k = 1; k <= 3; ++k) {
    CHECK(pm41.rows(k, 0) == 0.0);
    CHECK(pm41.rows(k, 1) == 1.0);
  }

  CHECK_THROWS_AS(make_param_matrix(0, 2, Scheme::kInteger), ValidationError);
  CHECK_THROWS_AS(make_param_matrix(2, 0, Scheme::kInteger), ValidationError);
}

TEST_CASE("node distinctness holds exactly for both schemes") {
  for (Scheme scheme : {Scheme::kInteger, Scheme::kTangent})
    for (int d = 2; d <= 4; ++d)
      for (int n = 1; n <= 8; ++n)
        CHECK(make_param_matrix(d, n, scheme).distinct_within_rows());
}

TEST_CASE("tangent nodes stay finite for every n, odd included") {
  // The quarter-step angle grid never lands on pi/2.
  for (int n = 1; n <= 20; ++n)
    for (int j = 0; j <= n; ++j) {
      const double node = scheme_node(Scheme::kTangent, j, n);
      CHECK(std::isfinite(node));
      CHECK(std::abs(node) < 100.0);
    }
}

TEST_CASE("product_state_basis cardinality and content") {
  const auto basis22 = product_state_basis(make_param_matrix(2, 2, Scheme::kInteger));
  REQUIRE(basis22.local_coeffs.size() == 3);  // C(3, 2)
  // Vectors (|0> + a_j |1>)^x2 with a_j in {0, 1, 2}.
  for (std::size_t v = 0; v < 3; ++v) {
    CHECK(basis22.local_coeffs[v](0) == 1.0);
    CHECK(basis22.local_coeffs[v](1) == static_cast<double>(v));
  }

  CHECK(product_state_basis(make_param_matrix(3, 2, Scheme::kInteger))
            .local_coeffs.size() == 6);  // C(4, 2)
}

TEST_CASE("expansion matrix special cases") {
  // d = 1: a single composition, the 1x1 matrix [1].
  const Eigen::MatrixXd trivial =
      expansion_matrix(make_param_matrix(1, 3, Scheme::kInteger));
  REQUIRE(trivial.rows() == 1);
  CHECK(trivial(0, 0) == 1.0);

  // d = 2, n = 3 integer grid: the 4x4 Vandermonde of nodes {0,1,2,3}.
  const Eigen::MatrixXd vand =
      expansion_matrix(make_param_matrix(2, 3, Scheme::kInteger));
  REQUIRE(vand.rows() == 4);
  for (int row = 0; row < 4; ++row)
    for (int col = 0; col < 4; ++col)
      CHECK(vand(row, col) == std::pow(static_cast<double>(col), row));

  // d = 3, n = 2 integer grid: 6x6 with nonzero determinant.
  const Eigen::MatrixXd m = expansion_matrix(make_param_matrix(3, 2, Scheme::kInteger));
  REQUIRE(m.rows() == 6);
  CHECK(std::abs(Eigen::FullPivLU<Eigen::MatrixXd>(m).determinant()) > 1e-9);
}

TEST_CASE("certify_rank full-rank cases") {
  const RankCertificate c1 = certify_rank(make_param_matrix(2, 5, Scheme::kInteger));
  CHECK(c1.rank == 6);

  const RankCertificate c2 = certify_rank(make_param_matrix(4, 4, Scheme::kTangent));
  CHECK(c2.rank == 35);
  CHECK_FALSE(c2.ill_conditioned);

  for (int d = 1; d <= 4; ++d)
    for (int n = 1; n <= 6; ++n)
      for (Scheme scheme : {Scheme::kInteger, Scheme::kTangent}) {
        const RankCertificate cert = certify_rank(make_param_matrix(d, n, scheme));
        CHECK(cert.rank == static_cast<int>(cert.expected));
      }
}

TEST_CASE("column scaling cannot change the certified rank") {
  // Rescaled basis vectors give the same rank: the certification
  // normalizes columns before pivoting.
  const ParamMatrix pm = make_param_matrix(4, 5, Scheme::kTangent);
  Eigen::MatrixXd m = expansion_matrix(pm);
  std::mt19937_64 eng(3);
  std::uniform_real_distribution<double> expo(-9.0, 9.0);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    m.col(c) *= std::pow(10.0, expo(eng));
    m.col(c) /= m.col(c).norm();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(1e-14);
  CHECK(qr.rank() == m.rows());
}

TEST_CASE("certify_rank detects duplicate nodes") {
  ParamMatrix pm = make_param_matrix(2, 4, Scheme::kInteger);
  pm.rows(1, 3) = pm.rows(1, 1);  // repeated Vandermonde node
  CHECK_FALSE(pm.distinct_within_rows());
  CHECK_THROWS_WITH_AS(certify_rank(pm), doctest::Contains("rank deficient"),
                       NumericalError);

  ParamMatrix pm4 = make_param_matrix(4, 3, Scheme::kTangent);
  pm4.rows(2, 0) = pm4.rows(2, 2);
  CHECK_THROWS_AS(certify_rank(pm4), NumericalError);
}

TEST_CASE("operator basis sizes and parameter layout") {
  const OperatorBasis b1 = operator_basis(1, Scheme::kInteger);
  CHECK(b1.size() == 4);
  CHECK(b1.a.size() == 2);

  CHECK(operator_basis(2, Scheme::kInteger).size() == 10);
  CHECK(operator_basis(4, Scheme::kInteger).size() == 35);
  CHECK(operator_basis(4, Scheme::kTangent).size() == 35);
}
