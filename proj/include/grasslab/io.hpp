// Copyright 2026 The Grasslab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "grasslab/jets.hpp"
#include "grasslab/pairs.hpp"

#include <json.hpp>

namespace grasslab::io {

using json = nlohmann::ordered_json;

// Vectors: [[re, im], ...]; real payload vectors: [x0, ..., x_{n-1}];
// operators: flat row-major 2n x 2n; payload matrices: list of columns.

json cvec_to_json(const CVec& v);
CVec cvec_from_json(const json& j);

json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const json& j);

json operator_to_json(const RMat& m);
RMat operator_from_json(const json& j);

json model_to_json(const CurvatureModel& m);
CurvatureModel model_from_json(const json& j);

json tag_to_json(const TypeTag& t);
TypeTag tag_from_json(const json& j);

json jet_to_json(const TwoJet& jet);
TwoJet jet_from_json(const json& j);

json pair_record_to_json(const PairRecord& r);
PairRecord pair_record_from_json(const json& j);

std::vector<PairRecord> load_pair_records(const std::string& path);
void save_pair_records(const std::vector<PairRecord>& records, const std::string& path);

}  // namespace grasslab::io
