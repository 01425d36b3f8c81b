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

#include "pimeas/io.hpp"

#include <cmath>
#include <fstream>

namespace pimeas {

namespace {

void check_schema(const Json& doc, const char* what) {
  if (!doc.is_object() || !doc.contains("schema_version"))
    throw ValidationError(std::string(what) + ": missing schema_version");
  if (doc.at("schema_version").get<int>() != kSchemaVersion)
    throw ValidationError(std::string(what) + ": unsupported schema_version");
}

template <typename T>
T field(const Json& doc, const char* key, const char* what) {
  if (!doc.contains(key))
    throw ValidationError(std::string(what) + ": missing field '" + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ValidationError(std::string(what) + ": field '" + key + "' has wrong type");
  }
}

}  // namespace

Json to_json(const SymCoords& coords) {
  Json entries = Json::array();
  const SymBasis basis(coords.n);
  for (std::size_t p = 0; p < coords.values.size(); ++p) {
    if (std::abs(coords.values[p]) < tol::kSparseZero) continue;
    const SymIndex& idx = basis.at(p);
    entries.push_back({{"i", idx.i}, {"j", idx.j}, {"k", idx.k}, {"v", coords.values[p]}});
  }
  return Json{{"schema_version", kSchemaVersion}, {"n", coords.n}, {"coords", entries}};
}

SymCoords sym_coords_from_json(const Json& doc) {
  check_schema(doc, "sym-coords");
  SymCoords coords(field<int>(doc, "n", "sym-coords"));
  for (const Json& entry : field<Json>(doc, "coords", "sym-coords")) {
    coords.at(field<int>(entry, "i", "coords entry"), field<int>(entry, "j", "coords entry"),
              field<int>(entry, "k", "coords entry")) =
        field<double>(entry, "v", "coords entry");
  }
  return coords;
}

Json to_json(const ParamMatrix& pm) {
  Json rows = Json::array();
  for (int k = 0; k < pm.d; ++k) {
    Json row = Json::array();
    for (int j = 0; j <= pm.n; ++j) row.push_back(pm.rows(k, j));
    rows.push_back(std::move(row));
  }
  return Json{{"schema_version", kSchemaVersion},
              {"d", pm.d},
              {"n", pm.n},
              {"scheme", to_string(pm.scheme)},
              {"rows", rows}};
}

ParamMatrix param_matrix_from_json(const Json& doc) {
  check_schema(doc, "param-matrix");
  ParamMatrix pm;
  pm.d = field<int>(doc, "d", "param-matrix");
  pm.n = field<int>(doc, "n", "param-matrix");
  pm.scheme = scheme_from_string(field<std::string>(doc, "scheme", "param-matrix"));
  const Json rows = field<Json>(doc, "rows", "param-matrix");
  if (static_cast<int>(rows.size()) != pm.d)
    throw ValidationError("param-matrix: row count differs from d");
  pm.rows.resize(pm.d, pm.n + 1);
  for (int k = 0; k < pm.d; ++k) {
    if (static_cast<int>(rows[k].size()) != pm.n + 1)
      throw ValidationError("param-matrix: row length differs from n+1");
    for (int j = 0; j <= pm.n; ++j) pm.rows(k, j) = rows[k][j].get<double>();
  }
  return pm;
}

Json to_json(const Decomposition& dec) {
  Json gamma = Json::array();
  for (Eigen::Index p = 0; p < dec.gamma.size(); ++p) gamma.push_back(dec.gamma(p));
  return Json{{"schema_version", kSchemaVersion},
              {"n", dec.n},
              {"scheme", to_string(dec.basis.scheme)},
              {"gamma", gamma},
              {"residual", dec.residual},
              {"omega_condition", dec.omega_condition}};
}

Json to_json(const MeasurementPlan& plan) {
  Json settings = Json::array();
  for (const LocalSetting& s : plan.settings)
    settings.push_back({{"b", s.axis(0)}, {"c", s.axis(1)}, {"d", s.axis(2)},
                        {"scale", s.scale}});
  Json coeffs = Json::array();
  for (std::size_t s = 0; s < plan.coeffs.size(); ++s)
    for (int t = 0; t <= plan.n; ++t)
      if (std::abs(plan.coeffs[s][t]) >= tol::kSparseZero)
        coeffs.push_back({{"setting", s}, {"j", t}, {"alpha", plan.coeffs[s][t]}});
  return Json{{"schema_version", kSchemaVersion},
              {"n", plan.n},
              {"target", plan.target_id},
              {"settings", settings},
              {"coeffs", coeffs},
              {"residual", plan.residual}};
}

MeasurementPlan plan_from_json(const Json& doc) {
  check_schema(doc, "plan");
  MeasurementPlan plan;
  plan.n = field<int>(doc, "n", "plan");
  if (plan.n < 1) throw ValidationError("plan: invalid qubit count");
  plan.target_id = field<std::string>(doc, "target", "plan");
  plan.residual = field<double>(doc, "residual", "plan");
  for (const Json& entry : field<Json>(doc, "settings", "plan")) {
    LocalSetting s;
    s.axis = Eigen::Vector3d(field<double>(entry, "b", "setting"),
                             field<double>(entry, "c", "setting"),
                             field<double>(entry, "d", "setting"));
    s.scale = field<double>(entry, "scale", "setting");
    const double norm = s.axis.norm();
    if (norm == 0.0) throw ValidationError("plan: zero setting direction");
    // Hand-written files may carry an unnormalized axis; fold the length
    // into the scale so the raw operator is unchanged.
    if (std::abs(norm - 1.0) > 1e-12) {
      s.axis /= norm;
      s.scale *= norm;
    }
    plan.settings.push_back(s);
  }
  plan.coeffs.assign(plan.settings.size(), std::vector<double>(plan.n + 1, 0.0));
  for (const Json& entry : field<Json>(doc, "coeffs", "plan")) {
    const auto s = field<std::size_t>(entry, "setting", "coeff");
    const int t = field<int>(entry, "j", "coeff");
    if (s >= plan.settings.size() || t < 0 || t > plan.n)
      throw ValidationError("plan: coefficient index out of range");
    plan.coeffs[s][t] = field<double>(entry, "alpha", "coeff");
  }
  return plan;
}

Json to_json(const ShotRecord& record) {
  Json counts = Json::object();
  for (const auto& [key, count] : record.counts) counts[key] = count;
  return Json{{"schema_version", kSchemaVersion},
              {"setting", record.setting_index},
              {"shots", record.shots},
              {"seed", record.seed},
              {"counts", counts}};
}

ShotRecord shot_record_from_json(const Json& doc) {
  check_schema(doc, "shot-record");
  ShotRecord record;
  record.setting_index = field<int>(doc, "setting", "shot-record");
  record.shots = field<std::uint64_t>(doc, "shots", "shot-record");
  record.seed = field<std::uint64_t>(doc, "seed", "shot-record");
  std::uint64_t total = 0;
  const Json counts = field<Json>(doc, "counts", "shot-record");
  for (const auto& [key, value] : counts.items()) {
    record.counts[key] = value.get<std::uint64_t>();
    total += record.counts[key];
  }
  if (total != record.shots)
    throw ValidationError("shot-record: counts do not sum to shots");
  return record;
}

Json to_json(const FidelityEstimate& est) {
  return Json{{"schema_version", kSchemaVersion},
              {"value", est.value},
              {"std_error", est.std_error},
              {"mode", est.mode},
              {"plan_id", est.plan_id},
              {"shots_per_setting", est.shots_per_setting},
              {"seed", est.seed}};
}

Json to_json(const BoundCertificate& cert) {
  return Json{{"schema_version", kSchemaVersion},
              {"state", cert.state_id},
              {"n", cert.n},
              {"m", cert.m},
              {"lower_bound", cert.lower_bound},
              {"plan_size", cert.plan_size},
              {"verdict", cert.pass ? "pass" : "fail"},
              {"witness", cert.witness}};
}

Json to_json(const DenseOperator& op) {
  const int n = qubit_count(op);
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < op.rows(); ++r) {
    Json re_row = Json::array(), im_row = Json::array();
    for (Eigen::Index c = 0; c < op.cols(); ++c) {
      re_row.push_back(op(r, c).real());
      im_row.push_back(op(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return Json{{"schema_version", kSchemaVersion}, {"n", n}, {"re", re}, {"im", im}};
}

DenseOperator dense_operator_from_json(const Json& doc) {
  check_schema(doc, "dense-operator");
  const int n = field<int>(doc, "n", "dense-operator");
  if (n < 1 || n > kMaxDenseQubits)
    throw ValidationError("dense-operator: qubit count out of range");
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Json re = field<Json>(doc, "re", "dense-operator");
  const Json im = field<Json>(doc, "im", "dense-operator");
  if (static_cast<Eigen::Index>(re.size()) != dim ||
      static_cast<Eigen::Index>(im.size()) != dim)
    throw ValidationError("dense-operator: matrix dimension mismatch");
  DenseOperator op(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    if (static_cast<Eigen::Index>(re[r].size()) != dim ||
        static_cast<Eigen::Index>(im[r].size()) != dim)
      throw ValidationError("dense-operator: matrix row length mismatch");
    for (Eigen::Index c = 0; c < dim; ++c)
      op(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
  }
  return op;
}

void write_json_atomic(const std::filesystem::path& path, const Json& doc) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ValidationError("cannot open '" + tmp.string() + "' for writing");
    out << doc.dump(2) << "\n";
  }
  fs::rename(tmp, path);
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& err) {
    throw ValidationError("invalid JSON in '" + path.string() + "': " + err.what());
  }
}

}  // namespace pimeas
