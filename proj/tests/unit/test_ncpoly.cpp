#include <doctest.h>

#include "../support/oracles.hpp"
#include "pencilrank/errors.hpp"
#include "pencilrank/ncpoly.hpp"

using namespace pencilrank;

namespace {

const Field kQ = Field::rationals();

}  // namespace

TEST_CASE("parsing expressions") {
  NcMatPoly f = parse_nc("x1*x2 - 2", kQ, 2);
  REQUIRE(f.rows() == 1);
  CHECK(f(0, 0).coefficient({0, 1}) == kQ.one());
  CHECK(f(0, 0).coefficient({}) == kQ.from_int(-2));
  CHECK(f(0, 0).terms().size() == 2);

  NcMatPoly g = parse_nc("(x1+x2)*(x1-x2)", kQ, 2);
  CHECK(g(0, 0).coefficient({0, 0}) == kQ.one());
  CHECK(g(0, 0).coefficient({0, 1}) == kQ.from_int(-1));
  CHECK(g(0, 0).coefficient({1, 0}) == kQ.one());
  CHECK(g(0, 0).coefficient({1, 1}) == kQ.from_int(-1));

  NcMatPoly h = parse_nc("[[x1, 1],[0, x2*x1*x2]]", kQ, 2);
  CHECK(h.rows() == 2);
  CHECK(h.cols() == 2);
  CHECK(h(1, 1).degree() == 3);
  CHECK(h(1, 0).is_zero());

  CHECK(parse_nc("22/7*x1", kQ, 1)(0, 0).coefficient({0}) == Scalar::rational(mpq_class(22, 7)));
  const Field g_field = Field::gaussian();
  CHECK(parse_nc("(1+2i)*x1", g_field, 1)(0, 0).coefficient({0}) == Scalar::gaussian(1, 2));
  CHECK(parse_nc("i", g_field, 1)(0, 0).coefficient({}) == g_field.imaginary_unit());
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_nc("x1 +\n  * x2", kQ, 2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_nc("x3", kQ, 2), ParseError);
  CHECK_THROWS_AS(parse_nc("x0", kQ, 2), ParseError);
  CHECK_THROWS_AS(parse_nc("[[x1, 1], [x2]]", kQ, 2), ParseError);
  CHECK_THROWS_AS(parse_nc("2i", kQ, 2), ParseError);
  CHECK_THROWS_AS(parse_nc("x1 x2", kQ, 2), ParseError);
  CHECK_THROWS_AS(parse_nc("1/0", kQ, 1), ParseError);
}

TEST_CASE("printing round-trips") {
  Rng rng(1);
  for (const Field& k : {Field::rationals(), Field::prime(101), Field::gaussian()})
    for (int t = 0; t < 30; ++t) {
      NcMatPoly f(k, 2, 2);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) f(i, j) = random_ncpoly(k, rng, 3, 3, 4);
      const std::string text = f.to_string();
      NcMatPoly g = parse_nc(text, k, 3);
      CHECK(g == f);
      CHECK(g.to_string() == text);
    }
  CHECK(parse_nc("x1*x2 - 2", kQ, 2).to_string() == "x1*x2 - 2");
}

TEST_CASE("evaluation") {
  MatrixTuple a(kQ, 2, 2, {Matrix::unit(kQ, 2, 2, 0, 1), Matrix::unit(kQ, 2, 2, 1, 0)});
  CHECK(evaluate(parse_nc("x1*x2", kQ, 2), a) == Matrix::unit(kQ, 2, 2, 0, 0));
  CHECK(evaluate(parse_nc("x1", kQ, 2), a) == a[0]);
  CHECK(evaluate(parse_nc("3", kQ, 2), a) == kQ.from_int(3) * Matrix::identity(kQ, 2));
}

TEST_CASE("linearizing a product of two variables") {
  LinearizationResult r = higman_linearize(parse_nc("x1*x2", kQ, 2), 2);
  CHECK(r.offset == 1);
  CHECK(r.pencil.size() == 2);
  // Symbol matrix [[0, x1], [-x2, 1]].
  CHECK(r.pencil.coefficients[0] == Matrix::from_ints(kQ, {{0, 0}, {0, 1}}));
  CHECK(r.pencil.coefficients[1] == Matrix::from_ints(kQ, {{0, 1}, {0, 0}}));
  CHECK(r.pencil.coefficients[2] == Matrix::from_ints(kQ, {{0, 0}, {-1, 0}}));
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng.below(3);
    MatrixTuple a = MatrixTuple::random(kQ, 2, n, n, rng, 1);
    CHECK(rank(evaluate(parse_nc("x1*x2", kQ, 2), a)) + n == rank(evaluate_pencil(r.pencil, a)));
  }
}

TEST_CASE("affine input is unchanged and degree three takes two steps") {
  LinearizationResult r = higman_linearize(parse_nc("[[x1 + 1, 2*x2], [0, x1]]", kQ, 2), 2);
  CHECK(r.offset == 0);
  CHECK(r.pencil.size() == 2);
  LinearizationResult r3 = higman_linearize(parse_nc("x1*x2*x3", kQ, 3), 3);
  CHECK(r3.offset == 2);
  CHECK(r3.pencil.size() == 3);
  Rng rng(3);
  for (std::size_t n : {2u, 3u})
    for (int t = 0; t < 10; ++t) {
      MatrixTuple a = MatrixTuple::random(kQ, 3, n, n, rng, 1);
      CHECK(rank(evaluate(parse_nc("x1*x2*x3", kQ, 3), a)) + 2 * n == rank(evaluate_pencil(r3.pencil, a)));
    }
}

TEST_CASE("linearization rank identity on random matrices of polynomials") {
  Rng rng(4);
  for (const Field& k : {Field::rationals(), Field::prime(101)})
    for (int t = 0; t < 40; ++t) {
      const std::size_t d = 1 + rng.below(2), m = 1 + rng.below(3), n = 1 + rng.below(3);
      NcMatPoly f(k, d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) f(i, j) = random_ncpoly(k, rng, m, 3, 3);
      LinearizationResult r = higman_linearize(f, m);
      CHECK(r.pencil.size() == d + r.offset);
      MatrixTuple a = MatrixTuple::random(k, m, n, n, rng, 2);
      CHECK(rank(evaluate(f, a)) + r.offset * n == rank(evaluate_pencil(r.pencil, a)));
      CHECK(higman_linearize(f, m).pencil.coefficients == r.pencil.coefficients);
    }
  CHECK_THROWS_AS(higman_linearize(NcMatPoly(kQ, 1, 2), 1), NonSquare);
}
