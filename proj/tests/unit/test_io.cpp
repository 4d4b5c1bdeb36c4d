#include <doctest.h>

#include "../support/oracles.hpp"
#include "pencilrank/commands.hpp"
#include "pencilrank/errors.hpp"
#include "pencilrank/ncpoly.hpp"

using namespace pencilrank;
using io::Json;

namespace {

const Field kQ = Field::rationals();

MatrixTuple hl_a() {
  return MatrixTuple(kQ, 3, 3, {Matrix::unit(kQ, 3, 3, 0, 1), Matrix::unit(kQ, 3, 3, 0, 2)});
}
MatrixTuple hl_b() {
  return MatrixTuple(kQ, 3, 3, {Matrix::unit(kQ, 3, 3, 1, 0), Matrix::unit(kQ, 3, 3, 2, 0)});
}

}  // namespace

TEST_CASE("tuple files round-trip exactly") {
  Rng rng(1);
  for (const Field& k : {kQ, Field::prime(101), Field::gaussian()}) {
    MatrixTuple a = MatrixTuple::random(k, 2, 2, 3, rng);
    a = a.scaled(k == kQ ? Scalar::rational(mpq_class(-3, 7)) : k.from_int(5));
    const std::string text = io::tuple_to_json(a).dump(2);
    const MatrixTuple back = io::tuple_from_json(io::parse_json(text));
    CHECK(back == a);
    CHECK(io::tuple_to_json(back).dump(2) == text);
  }
  const Json j = io::tuple_to_json(hl_a());
  CHECK(j.begin().key() == "field");
  CHECK(j["matrices"][0][0][1] == "1");
}

TEST_CASE("tuple files reject malformed input") {
  CHECK_THROWS_AS(io::parse_json("{\"field\": \"Q\",\n  \"m\": }"), ParseError);
  try {
    io::parse_json("{\"field\": \"Q\",\n  \"m\": }");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(io::tuple_from_json(Json::parse(R"({"field":"Q","m":1,"p":2,"q":2,"matrices":[]})")), FormatError);
  CHECK_THROWS_AS(io::tuple_from_json(Json::parse(R"({"field":"Q","m":1,"p":1,"q":1,"matrices":[[["x"]]]})")),
                  ParseError);
  CHECK_THROWS_AS(io::tuple_from_json(Json::parse(R"({"field":"R","m":0,"p":1,"q":1,"matrices":[]})")), ParseError);
  const MatrixTuple ints = io::tuple_from_json(Json::parse(R"({"field":"Q","m":1,"p":1,"q":2,"matrices":[[[1,"1/2"]]]})"));
  CHECK(ints[0](0, 1) == Scalar::rational(mpq_class(1, 2)));
}

TEST_CASE("pencil files") {
  const LinearPencil l(kQ, {Matrix(kQ, 2, 2), Matrix::unit(kQ, 2, 2, 0, 0), Matrix::unit(kQ, 2, 2, 1, 0)});
  const Json j = io::pencil_to_json(l);
  CHECK(j["m"] == 2);
  CHECK(j["matrices"].size() == 3);
  auto back = io::pencil_from_json(j);
  REQUIRE(std::holds_alternative<LinearPencil>(back));
  CHECK(std::get<LinearPencil>(back).coefficients == l.coefficients);
  CHECK(commands::pencil_rank(j, hl_a()) == 2);
  CHECK(commands::pencil_rank(j, hl_b()) == 1);

  const RectPencil r(kQ, 2, 1, {Matrix::unit(kQ, 2, 1, 0, 0), Matrix::unit(kQ, 2, 1, 1, 0)});
  auto rb = io::pencil_from_json(io::pencil_to_json(r));
  REQUIRE(std::holds_alternative<RectPencil>(rb));
  CHECK(std::get<RectPencil>(rb).coefficients == r.coefficients);
}

TEST_CASE("verdict documents verify and detect tampering") {
  const Json sim = commands::similar(hl_a(), hl_b(), 0);
  CHECK(sim["decision"] == "NotEquivalent");
  CHECK(sim.contains("witness"));
  CHECK(commands::verify(sim).empty());
  Json bad = sim;
  bad["ranks"]["b"] = 2;
  CHECK_FALSE(commands::verify(bad).empty());
  bad = sim;
  bad["decision"] = "Equivalent";
  CHECK_FALSE(commands::verify(bad).empty());

  Rng rng(2);
  const MatrixTuple a = MatrixTuple::random(kQ, 2, 3, 3, rng);
  const MatrixTuple b = a.conjugate(oracle::random_invertible(kQ, rng, 3));
  const Json eq = commands::similar(a, b, 5);
  CHECK(eq["decision"] == "Equivalent");
  CHECK(commands::verify(eq).empty());
  bad = eq;
  bad["certificate"]["p"][0][0] = "12345";
  CHECK_FALSE(commands::verify(bad).empty());
  CHECK(commands::similar(a, b, 5).dump() == eq.dump());

  const Json same = commands::similar(a, a, 0);
  CHECK(same["certificate"]["p"] == io::matrix_to_json(Matrix::identity(kQ, 3)));

  const Json lr = commands::lr_equiv(a, a.left_right(oracle::random_invertible(kQ, rng, 3),
                                                     oracle::random_invertible(kQ, rng, 3)), 0);
  CHECK(lr["decision"] == "Equivalent");
  CHECK(commands::verify(lr).empty());

  const MatrixTuple id = MatrixTuple(kQ, 2, 2, {Matrix::identity(kQ, 2)});
  const Json sl = commands::sl_equiv(id, id.scaled(kQ.from_int(2)), 0, false);
  CHECK(sl["decision"] == "NotEquivalent");
  CHECK(commands::verify(sl).empty());
  const Json out = commands::sl_equiv(id, id.scaled(kQ.from_int(-1)), 0, true);
  CHECK(out["decision"] == "Equivalent");
  CHECK(out["checks"].size() == 2);
  CHECK(commands::verify(out).empty());
  const MatrixTuple nil(kQ, 2, 2, {Matrix::unit(kQ, 2, 2, 0, 1)});
  const Json nc = commands::sl_equiv(nil, nil, 0, true);
  CHECK(nc["decision"] == "ProbablyInNullCone");
  CHECK(commands::exit_code(Decision::ProbablyInNullCone) == commands::kUndecided);

  const Json st = commands::similar(a, a, 0, InvolutionKind::Transpose);
  CHECK(st["inputs"]["involution"] == "transpose");
  CHECK(commands::verify(st).empty());
}

TEST_CASE("witness command") {
  const Json w = commands::witness(hl_a(), hl_b(), 0);
  CHECK(w["decision"] == "NotEquivalent");
  CHECK(w["witness"]["pencil"]["p"] == 2);
  CHECK(w["witness"]["candidate"]["p"] == 1);
  CHECK(commands::verify(w).empty());
}

TEST_CASE("linearize and polynomial ranks") {
  const Json lin = commands::linearize("x1*x2", 2, kQ);
  CHECK(lin["offset"] == 1);
  CHECK(lin["pencil"]["p"] == 2);
  CHECK(lin["pencil"]["matrices"].size() == 3);
  CHECK_THROWS_AS(commands::linearize("x3", 2, kQ), ParseError);
  CHECK(commands::ncpoly_rank("x1*x2", hl_a()) == 0);
  CHECK(commands::ncpoly_rank("x1 + x2", hl_a()) == 1);
  // rank [[X, I], [0, Y]] = n + rank(Y X), and B_2 B_1 = 0.
  CHECK(commands::ncpoly_rank("[[x1, 1], [0, x2]]", hl_b()) == 3);
  CHECK(commands::ncpoly_rank("[[x1, 1], [0, x2]]", hl_a()) == 3);
  CHECK(rank(evaluate(parse_nc("[[x1, 1], [0, x2]]", kQ, 2), hl_b())) == 3);
}

TEST_CASE("decompose command") {
  const MatrixTuple j(kQ, 5, 5, {oracle::nilpotent_jordan(kQ, {2, 3})});
  const Json d = commands::decompose(j, false, 0);
  CHECK(d["dimensions"] == Json::array({2, 3}));
  CHECK(d["certified"] == true);
  const MatrixTuple c(kQ, 2, 3, {Matrix::from_ints(kQ, {{1, 0, 0}, {0, 1, 0}})});
  const Json q = commands::decompose(c, true, 0);
  CHECK(q["dimensions"] == Json::array({1, 2, 2}));
  CHECK(q["dimension_vectors"].size() == 3);
}
