#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "pencilrank/orbit.hpp"
#include "pencilrank/pencil.hpp"

namespace pencilrank::io {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& m);
// Expects rows x cols nested arrays of scalar strings (integers also accepted).
Matrix matrix_from_json(const Json& j, const Field& field, std::size_t rows, std::size_t cols);

// {"field", "m", "p", "q", "matrices"}
Json tuple_to_json(const MatrixTuple& a);
MatrixTuple tuple_from_json(const Json& j);

// Linear pencils use the tuple layout with m + 1 matrices, T0 first.
// Homogeneous pencils add "homogeneous": true and carry m matrices.
Json pencil_to_json(const LinearPencil& l);
Json pencil_to_json(const RectPencil& l);
std::variant<LinearPencil, RectPencil> pencil_from_json(const Json& j);

// Verdict fields only: decision, certificate, witness, ranks, checks.
Json verdict_fields(const Verdict& v);
Verdict verdict_from_json(const Json& j, const Field& field);

Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);

}  // namespace pencilrank::io
