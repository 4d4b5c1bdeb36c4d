#include <doctest.h>

#include "pencilrank/errors.hpp"
#include "pencilrank/field.hpp"
#include "pencilrank/random.hpp"

using namespace pencilrank;

TEST_CASE("field descriptors parse and print") {
  CHECK(Field::parse("Q") == Field::rationals());
  CHECK(Field::parse("Qi") == Field::gaussian());
  CHECK(Field::parse("Fp:101") == Field::prime(101));
  CHECK(Field::prime(7).to_string() == "Fp:7");
  CHECK_THROWS_AS(Field::prime(91), PreconditionViolation);
  CHECK_THROWS(Field::parse("R"));
  CHECK_THROWS(Field::parse("Fp:x"));
}

TEST_CASE("rational scalars are canonical") {
  const Field q = Field::rationals();
  Scalar a = Scalar::parse("6/4", q);
  CHECK(a.to_string() == "3/2");
  CHECK((a + Scalar::parse("1/2", q)).to_string() == "2");
  CHECK((a * a).to_string() == "9/4");
  CHECK(a.inverse().to_string() == "2/3");
  CHECK(Scalar::parse("-7", q).to_string() == "-7");
  CHECK_THROWS_AS(q.zero().inverse(), DivisionByZero);
  CHECK(a.pow(-2).to_string() == "4/9");
}

TEST_CASE("prime field residues wrap") {
  const Field f = Field::prime(7);
  Scalar a = Scalar::parse("-1", f);
  CHECK(a.to_string() == "6");
  CHECK((a * a).is_one());
  CHECK(Scalar::parse("1/3", f).to_string() == "5");
  CHECK_THROWS_AS(Scalar::parse("1/7", f), DivisionByZero);
  for (long long v = 1; v < 7; ++v) CHECK((f.from_int(v) * f.from_int(v).inverse()).is_one());
}

TEST_CASE("gaussian rationals") {
  const Field g = Field::gaussian();
  Scalar i = g.imaginary_unit();
  CHECK((i * i) == g.from_int(-1));
  Scalar z = Scalar::parse("3/2+5i", g);
  CHECK(z.to_string() == "3/2+5i");
  CHECK((z * z.conj()).to_string() == "109/4");
  CHECK((z * z.inverse()).is_one());
  CHECK(Scalar::parse("-i", g) == -i);
  CHECK(Scalar::parse("2i", g).to_string() == "2i");
}

TEST_CASE("mixing fields throws") {
  const Scalar a = Field::rationals().one();
  const Scalar b = Field::prime(5).one();
  CHECK_THROWS_AS(a + b, FieldMismatch);
  CHECK_THROWS_AS(a * Field::gaussian().one(), FieldMismatch);
}

TEST_CASE("field axioms hold on random samples") {
  Rng rng(11);
  for (const Field& k : {Field::rationals(), Field::prime(101), Field::gaussian()}) {
    for (int t = 0; t < 50; ++t) {
      Scalar a = random_scalar(k, rng, 9), b = random_scalar(k, rng, 9), c = random_scalar(k, rng, 9);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - b) + b == a);
      if (!b.is_zero()) CHECK((a / b) * b == a);
      CHECK(Scalar::parse(a.to_string(), k) == a);
    }
  }
}

TEST_CASE("rng is deterministic") {
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  Rng c(1);
  for (int i = 0; i < 100; ++i) {
    auto v = c.uniform(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
  }
}
