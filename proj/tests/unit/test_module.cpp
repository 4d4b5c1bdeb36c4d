#include <doctest.h>

#include <algorithm>

#include "../support/oracles.hpp"
#include "pencilrank/errors.hpp"
#include "pencilrank/module.hpp"
#include "pencilrank/witness_search.hpp"

using namespace pencilrank;

namespace {

const Field kQ = Field::rationals();
const Field kF = Field::prime(101);

std::vector<std::size_t> summand_dims(const Decomposition& d) {
  std::vector<std::size_t> out;
  for (const auto& s : d.summands) out.push_back(s.module.dimension());
  std::sort(out.begin(), out.end());
  return out;
}

ModuleRep single(const Matrix& a) { return ModuleRep::free_algebra(MatrixTuple(a.field(), a.rows(), a.cols(), {a})); }

}  // namespace

TEST_CASE("hom dimensions of small modules") {
  ModuleRep zero = ModuleRep::free_algebra(MatrixTuple::zero(kQ, 1, 1, 1));
  CHECK(hom_matricization(zero, zero).rows() == 1);
  CHECK(dim_hom(zero, zero) == 1);
  CHECK(dim_hom(single(Matrix::from_ints(kQ, {{1}})), single(Matrix::from_ints(kQ, {{2}}))) == 0);
  CHECK(dim_hom(single(oracle::nilpotent_jordan(kQ, {2})), single(oracle::nilpotent_jordan(kQ, {2}))) == 2);
  ModuleRep one = ModuleRep::kronecker(MatrixTuple(kQ, 1, 1, {Matrix::from_ints(kQ, {{1}})}));
  CHECK(hom_matricization(one, one) == Matrix::from_ints(kQ, {{1, -1}}));
  CHECK(dim_hom(one, one) == 1);
  CHECK_THROWS_AS(dim_hom(one, zero), PreconditionViolation);
}

TEST_CASE("hom dimension matches the entrywise system and is additive") {
  Rng rng(1);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = 1 + rng.below(2);
    MatrixTuple c = MatrixTuple::random(kQ, m, 1 + rng.below(3), 1 + rng.below(3), rng, 1);
    MatrixTuple x = MatrixTuple::random(kQ, m, 1 + rng.below(3), 1 + rng.below(3), rng, 1);
    MatrixTuple y = MatrixTuple::random(kQ, m, 1 + rng.below(2), 1 + rng.below(2), rng, 1);
    const ModuleRep nc = ModuleRep::kronecker(c), nx = ModuleRep::kronecker(x), ny = ModuleRep::kronecker(y);
    CHECK(dim_hom(nc, nx) == oracle::dim_hom_quiver(c, x));
    CHECK(dim_hom(nc, direct_sum(nx, ny)) == dim_hom(nc, nx) + dim_hom(nc, ny));
    CHECK(hom_basis(nc, nx).size() == dim_hom(nc, nx));
    const Matrix p = oracle::random_invertible(kQ, rng, x.p()), q = oracle::random_invertible(kQ, rng, x.q());
    CHECK(dim_hom(nc, ModuleRep::kronecker(x.left_right(p, q))) == dim_hom(nc, nx));

    const std::size_t t1 = 1 + rng.below(3), n1 = 1 + rng.below(3);
    MatrixTuple sc = MatrixTuple::random(kQ, m, t1, t1, rng, 1);
    MatrixTuple sx = direct_sum(sc, MatrixTuple::random(kQ, m, n1, n1, rng, 1));
    const ModuleRep mc = ModuleRep::free_algebra(sc), mx = ModuleRep::free_algebra(sx);
    CHECK(dim_hom(mc, mx) == oracle::dim_hom_free(sc, sx));
    CHECK(dim_hom(mc, ModuleRep::free_algebra(sx.conjugate(oracle::random_invertible(kQ, rng, sx.p())))) ==
          dim_hom(mc, mx));
    for (const auto& h : hom_basis(mc, mx))
      for (std::size_t i = 0; i < m; ++i) CHECK(h * sc[i] == sx[i] * h);
  }
}

TEST_CASE("endomorphism algebra and radical") {
  EndAlgebra e = end_algebra(single(oracle::nilpotent_jordan(kQ, {2})));
  CHECK(e.basis.size() == 2);
  REQUIRE(e.radical_basis.size() == 1);
  CHECK((e.radical_basis[0] * e.radical_basis[0]).is_zero());
  CHECK_FALSE(e.radical_basis[0].is_zero());

  // A generic pair is simple: End is the scalars.
  MatrixTuple g(kQ, 3, 3, {Matrix::from_ints(kQ, {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}}),
                           Matrix::from_ints(kQ, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}})});
  EndAlgebra eg = end_algebra(ModuleRep::free_algebra(g));
  CHECK(eg.basis.size() == 1);
  CHECK(eg.radical_basis.empty());
  EndAlgebra e2 = end_algebra(ModuleRep::free_algebra(direct_sum(g, g)));
  CHECK(e2.basis.size() == 4);
  CHECK(e2.radical_basis.empty());

  CHECK_THROWS_AS(end_algebra(single(Matrix::identity(Field::prime(3), 3))), CharacteristicTooSmall);

  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    MatrixTuple a = direct_sum(MatrixTuple(kQ, 2, 2, {oracle::nilpotent_jordan(kQ, {2})}),
                               MatrixTuple::random(kQ, 1, 2, 2, rng, 1));
    const ModuleRep m = ModuleRep::free_algebra(a);
    EndAlgebra ea = end_algebra(m);
    for (const auto& r : ea.radical_basis) {
      Matrix pw = Matrix::identity(kQ, 4);
      for (int k = 0; k < 4; ++k) pw = pw * r;
      CHECK(pw.is_zero());
    }
  }
}

TEST_CASE("radical submodule and chain") {
  const ModuleRep j2 = single(oracle::nilpotent_jordan(kQ, {2}));
  Submodule s = radical_submodule(j2, end_algebra(j2));
  CHECK(s.module.dimension() == 1);
  CHECK(s.module.tuple()[0].is_zero());

  const ModuleRep simple = single(Matrix::from_ints(kQ, {{5}}));
  CHECK(radical_submodule(simple, end_algebra(simple)).module.dimension() == 0);

  Rng rng(3);
  ModuleRep m = ModuleRep::free_algebra(MatrixTuple::random(kQ, 2, 4, 4, rng, 1));
  std::size_t steps = 0;
  while (m.dimension() > 0) {
    m = radical_submodule(m, end_algebra(m)).module;
    ++steps;
  }
  CHECK(steps <= 4);
}

TEST_CASE("decomposition of nilpotent Jordan types") {
  const ModuleRep m = single(oracle::nilpotent_jordan(kQ, {2, 3}));
  Decomposition d = decompose(m);
  CHECK(d.certified);
  CHECK(summand_dims(d) == std::vector<std::size_t>{2, 3});
  // The embeddings together form a basis.
  std::vector<Matrix> cols;
  for (const auto& s : d.summands) cols.push_back(s.embedding);
  CHECK(det(hstack(cols)) != kQ.zero());

  Decomposition one = decompose(single(Matrix::from_ints(kQ, {{0, -1}, {1, 0}})));
  CHECK(one.certified);
  CHECK(summand_dims(one) == std::vector<std::size_t>{2});
}

TEST_CASE("decomposition is seed independent over a prime field") {
  Rng rng(4);
  for (int t = 0; t < 6; ++t) {
    MatrixTuple a = MatrixTuple::random(kF, 2, 2, 2, rng);
    MatrixTuple b = MatrixTuple(kF, 2, 2, {oracle::nilpotent_jordan(kF, {2}), Matrix(kF, 2, 2)});
    MatrixTuple x = direct_sum(direct_sum(a, b), MatrixTuple::zero(kF, 2, 1, 1));
    const ModuleRep m = ModuleRep::free_algebra(x.conjugate(oracle::random_invertible(kF, rng, 5)));
    const auto reference = summand_dims(decompose(m, {0, 64}));
    for (std::uint64_t seed = 1; seed < 5; ++seed) {
      Decomposition d = decompose(m, {seed, 64});
      CHECK(d.certified);
      CHECK(summand_dims(d) == reference);
    }
  }
}

TEST_CASE("quiver decomposition") {
  // Two copies of the one-arrow module k -> k plus the simple at the source.
  MatrixTuple c(kQ, 2, 3, {Matrix::from_ints(kQ, {{1, 0, 0}, {0, 1, 0}})});
  Decomposition d = decompose(ModuleRep::kronecker(c));
  CHECK(d.certified);
  CHECK(summand_dims(d) == std::vector<std::size_t>{1, 2, 2});
  for (const auto& s : d.summands) CHECK(s.embedding.rows() == 5);
}

TEST_CASE("candidate search on the three-dimensional example pair") {
  auto e = [](std::size_t i, std::size_t j) { return Matrix::unit(kQ, 3, 3, i, j); };
  MatrixTuple a(kQ, 3, 3, {e(0, 1), e(0, 2)});
  MatrixTuple b(kQ, 3, 3, {e(1, 0), e(2, 0)});
  SimilaritySearch s = find_similarity_witness(a, b, 0);
  REQUIRE(s.outcome == SearchOutcome::Witness);
  CHECK(s.pencil->size() == 2);
  CHECK(s.rank_a == 2);
  CHECK(s.rank_b == 1);

  CandidatePool pool = candidate_modules(ModuleRep::free_algebra(a), ModuleRep::free_algebra(b), 0);
  std::vector<std::size_t> dims;
  for (const auto& c : pool.modules) dims.push_back(c.dimension());
  CHECK(std::count(dims.begin(), dims.end(), 1) >= 1);
  CHECK(std::count(dims.begin(), dims.end(), 3) >= 2);

  Rng rng(5);
  MatrixTuple x = MatrixTuple::random(kQ, 2, 3, 3, rng);
  SimilaritySearch same = find_similarity_witness(x, x.conjugate(oracle::random_invertible(kQ, rng, 3)), 1);
  CHECK(same.outcome == SearchOutcome::Equivalent);
}

TEST_CASE("left-right candidate search") {
  MatrixTuple a(kQ, 1, 2, {Matrix::from_ints(kQ, {{1, 0}})});
  MatrixTuple b(kQ, 1, 2, {Matrix::from_ints(kQ, {{0, 0}})});
  LeftRightSearch s = find_left_right_witness(a, b, 0);
  REQUIRE(s.outcome == SearchOutcome::Witness);
  CHECK(s.rank_a != s.rank_b);

  // Equal stacked ranks, different structure: a regular pencil block vs a
  // direct sum of smaller pieces.
  MatrixTuple c(kQ, 2, 2, {Matrix::from_ints(kQ, {{1, 0}, {0, 1}}), Matrix::from_ints(kQ, {{0, 1}, {0, 0}})});
  MatrixTuple d(kQ, 2, 2, {Matrix::from_ints(kQ, {{1, 0}, {0, 1}}), Matrix::from_ints(kQ, {{0, 0}, {0, 0}})});
  LeftRightSearch s2 = find_left_right_witness(c, d, 0);
  REQUIRE(s2.outcome == SearchOutcome::Witness);
  CHECK(rank(evaluate_homogeneous(*s2.pencil, c)) != rank(evaluate_homogeneous(*s2.pencil, d)));
}
