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

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>

#include "pimeas/bounds.hpp"
#include "pimeas/dense.hpp"
#include "pimeas/lms_planner.hpp"
#include "pimeas/pi_decomp.hpp"
#include "pimeas/product_basis.hpp"
#include "pimeas/simulator.hpp"
#include "pimeas/types.hpp"

namespace pimeas {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

// Every document carries {"schema_version": 1}; readers validate it and
// the field structure, throwing ValidationError on mismatch.

Json to_json(const SymCoords& coords);          // zeros below 1e-14 omitted
SymCoords sym_coords_from_json(const Json& doc);

Json to_json(const ParamMatrix& pm);
ParamMatrix param_matrix_from_json(const Json& doc);

Json to_json(const Decomposition& dec);

Json to_json(const MeasurementPlan& plan);      // unit axis + scale per setting
MeasurementPlan plan_from_json(const Json& doc);

Json to_json(const ShotRecord& record);
ShotRecord shot_record_from_json(const Json& doc);

Json to_json(const FidelityEstimate& est);

Json to_json(const BoundCertificate& cert);

Json to_json(const DenseOperator& op);          // {"n", "re", "im"} state files
DenseOperator dense_operator_from_json(const Json& doc);

/// Writes through a temp file and renames, so partial output never lands
/// under the target name.
void write_json_atomic(const std::filesystem::path& path, const Json& doc);
Json read_json(const std::filesystem::path& path);

}  // namespace pimeas
