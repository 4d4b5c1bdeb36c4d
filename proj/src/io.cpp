#include "pencilrank/io.hpp"

#include <fstream>
#include <sstream>

#include "pencilrank/errors.hpp"

namespace pencilrank::io {

namespace {

// Location of a byte offset, 1-based.
ParseError json_error(const std::string& text, std::size_t offset, const std::string& what) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return ParseError(what, line, column);
}

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t count(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    bad(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

Scalar scalar_from_json(const Json& j, const Field& field) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>(), field);
  if (j.is_number_integer()) return field.from_int(j.get<long long>());
  bad("matrix entries must be strings or integers");
}

Decision parse_decision(const std::string& s) {
  for (Decision d : {Decision::Equivalent, Decision::NotEquivalent, Decision::Indeterminate,
                     Decision::ProbablyInNullCone})
    if (s == to_string(d)) return d;
  bad("unknown decision '" + s + "'");
}

Field field_of(const Json& j) {
  const Json& f = member(j, "field");
  if (!f.is_string()) bad("field must be a string");
  return Field::parse(f.get<std::string>());
}

std::vector<Matrix> matrices_of(const Json& j, const Field& field, std::size_t count, std::size_t rows,
                                std::size_t cols) {
  const Json& ms = member(j, "matrices");
  if (!ms.is_array() || ms.size() != count)
    bad("expected " + std::to_string(count) + " matrices, found " + std::to_string(ms.is_array() ? ms.size() : 0));
  std::vector<Matrix> out;
  for (const auto& m : ms) out.push_back(matrix_from_json(m, field, rows, cols));
  return out;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const Field& field, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) bad("matrix must have " + std::to_string(rows) + " rows");
  Matrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) bad("matrix rows must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = scalar_from_json(j[i][k], field);
  }
  return m;
}

Json tuple_to_json(const MatrixTuple& a) {
  Json j;
  j["field"] = a.field().to_string();
  j["m"] = a.m();
  j["p"] = a.p();
  j["q"] = a.q();
  Json ms = Json::array();
  for (const auto& x : a.matrices()) ms.push_back(matrix_to_json(x));
  j["matrices"] = std::move(ms);
  return j;
}

MatrixTuple tuple_from_json(const Json& j) {
  const Field field = field_of(j);
  const std::size_t m = count(j, "m"), p = count(j, "p"), q = count(j, "q");
  return MatrixTuple(field, p, q, matrices_of(j, field, m, p, q));
}

Json pencil_to_json(const LinearPencil& l) {
  Json j;
  j["field"] = l.field.to_string();
  j["m"] = l.m();
  j["p"] = l.size();
  j["q"] = l.size();
  Json ms = Json::array();
  for (const auto& t : l.coefficients) ms.push_back(matrix_to_json(t));
  j["matrices"] = std::move(ms);
  return j;
}

Json pencil_to_json(const RectPencil& l) {
  Json j;
  j["field"] = l.field.to_string();
  j["m"] = l.coefficients.size();
  j["p"] = l.rows;
  j["q"] = l.cols;
  j["homogeneous"] = true;
  Json ms = Json::array();
  for (const auto& t : l.coefficients) ms.push_back(matrix_to_json(t));
  j["matrices"] = std::move(ms);
  return j;
}

std::variant<LinearPencil, RectPencil> pencil_from_json(const Json& j) {
  const Field field = field_of(j);
  const std::size_t m = count(j, "m"), p = count(j, "p"), q = count(j, "q");
  if (j.contains("homogeneous") && j.at("homogeneous").is_boolean() && j.at("homogeneous").get<bool>())
    return RectPencil(field, p, q, matrices_of(j, field, m, p, q));
  if (p != q) bad("a linear pencil must be square");
  return LinearPencil(field, matrices_of(j, field, m + 1, p, q));
}

Json verdict_fields(const Verdict& v) {
  Json j;
  j["decision"] = to_string(v.decision);
  if (v.p) {
    Json c;
    c["p"] = matrix_to_json(*v.p);
    if (v.q) c["q"] = matrix_to_json(*v.q);
    j["certificate"] = std::move(c);
  }
  if (v.linear_witness || v.rect_witness || v.invariant) {
    Json w;
    if (v.linear_witness) w["pencil"] = pencil_to_json(*v.linear_witness);
    if (v.rect_witness) w["pencil"] = pencil_to_json(*v.rect_witness);
    if (v.invariant) {
      Json inv;
      inv["name"] = v.invariant->name;
      inv["a"] = v.invariant->value_a.to_string();
      inv["b"] = v.invariant->value_b.to_string();
      if (v.invariant->pencil) inv["pencil"] = pencil_to_json(*v.invariant->pencil);
      w["invariant"] = std::move(inv);
    }
    j["witness"] = std::move(w);
  }
  if (v.linear_witness || v.rect_witness) j["ranks"] = Json{{"a", v.rank_a}, {"b", v.rank_b}};
  if (!v.determinant_checks.empty()) {
    Json checks = Json::array();
    for (const auto& t : v.determinant_checks) checks.push_back(pencil_to_json(t));
    j["checks"] = std::move(checks);
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Verdict verdict_from_json(const Json& j, const Field& field) {
  Verdict v;
  const Json& d = member(j, "decision");
  if (!d.is_string()) bad("decision must be a string");
  v.decision = parse_decision(d.get<std::string>());
  auto square = [&](const Json& m) {
    const std::size_t n = m.is_array() ? m.size() : 0;
    return matrix_from_json(m, field, n, n);
  };
  if (j.contains("certificate")) {
    const Json& c = j.at("certificate");
    v.p = square(member(c, "p"));
    if (c.contains("q")) v.q = square(c.at("q"));
  }
  if (j.contains("witness")) {
    const Json& w = j.at("witness");
    if (w.contains("pencil")) {
      auto pencil = pencil_from_json(w.at("pencil"));
      if (auto* l = std::get_if<LinearPencil>(&pencil))
        v.linear_witness = std::move(*l);
      else
        v.rect_witness = std::get<RectPencil>(std::move(pencil));
    }
    if (w.contains("invariant")) {
      const Json& inv = w.at("invariant");
      InvariantWitness iw{member(inv, "name").get<std::string>(), scalar_from_json(member(inv, "a"), field),
                          scalar_from_json(member(inv, "b"), field), std::nullopt};
      if (inv.contains("pencil")) {
        auto pencil = pencil_from_json(inv.at("pencil"));
        if (!std::holds_alternative<RectPencil>(pencil)) bad("invariant pencil must be homogeneous");
        iw.pencil = std::get<RectPencil>(std::move(pencil));
      }
      v.invariant = std::move(iw);
    }
  }
  if (j.contains("ranks")) {
    v.rank_a = count(j.at("ranks"), "a");
    v.rank_b = count(j.at("ranks"), "b");
  }
  if (j.contains("checks")) {
    for (const auto& c : j.at("checks")) {
      auto pencil = pencil_from_json(c);
      if (!std::holds_alternative<RectPencil>(pencil)) bad("determinant checks must be homogeneous pencils");
      v.determinant_checks.push_back(std::get<RectPencil>(std::move(pencil)));
    }
  }
  if (j.contains("note") && j.at("note").is_string()) v.note = j.at("note").get<std::string>();
  return v;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw json_error(text, e.byte == 0 ? 0 : e.byte - 1, "invalid JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

}  // namespace pencilrank::io
