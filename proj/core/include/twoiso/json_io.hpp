#pragma once

#include <nlohmann/json.hpp>

#include "twoiso/analysis.hpp"
#include "twoiso/function_spaces.hpp"
#include "twoiso/operator.hpp"
#include "twoiso/weighted_space.hpp"

namespace twoiso::json_io {

using nlohmann::json;

// Documents:
//   space     {"kind": "dirichlet"|"bidisc"|"custom", "max_degree": n,
//              "weights": [...], "labels": [[...], ...], "truncated": bool}
//   operator  {"space": <space>, "matrix": [[re, im], ...] (row-major),
//              "degree_growth": n | "unbounded"}
//   vector    [[re, im], ...]
//   poly      [[re, im], ...] for a_1..a_k
//
// Readers throw InvalidArgument on malformed input.

json to_json(const WeightedSpace& space);
WeightedSpace space_from_json(const json& doc);

json to_json(const Vec& x);
Vec vec_from_json(const json& doc, const WeightedSpace& space);

json to_json(const Op& op);
Op op_from_json(const json& doc);

json to_json(const PolyCoeffs& p);
PolyCoeffs poly_from_json(const json& doc);

Complex complex_from_json(const json& doc);

/// All report fields plus tolerances, coverage dimensions and the space descriptor.
json to_json(const TheoremReport& report, const WeightedSpace& space);

}  // namespace twoiso::json_io
