#pragma once

#include <json.hpp>

#include <string>

#include "qig/algebra.hpp"
#include "qig/channels.hpp"

namespace qig::cli {

using json = nlohmann::json;

// ---- matrix schema ----------------------------------------------------------
// {"block_dims":[n1,...], "blocks":[ [[ [re,im], ... ], ...], ... ]}
// row-major complex entries as two-element arrays

json matrix_to_json(const MatrixAlgebra& alg, const Blocks& blocks);
MatrixAlgebra algebra_from_json(const json& j, const std::string& path);
Blocks blocks_from_json(const json& j, const MatrixAlgebra& alg, const std::string& path);

PositiveFunctional read_positive(const json& j, const std::string& path);
HermitianElement read_hermitian(const json& j, const std::string& path);
SelfAdjointFunctional read_selfadjoint(const json& j, const std::string& path);

// ---- channel schema ---------------------------------------------------------
// {"source_dims":[...], "target_dims":[...], "kraus":[matrix, ...]}
// with each Kraus operator a full (target_total x source_total) matrix

json channel_to_json(const Channel& T);
Channel read_channel(const json& j, const std::string& path);

// ---- report serialization ----------------------------------------------------
// floats with 17 significant digits; ±infinity as the strings "inf"/"-inf"

std::string dump_report(const json& j, int indent = 2);
json number_or_inf(double v);
double parse_p(const std::string& text);  // "inf" or a number >= 1

}  // namespace qig::cli
