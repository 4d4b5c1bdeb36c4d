#include "pencilrank/witness_search.hpp"

#include <algorithm>

#include "pencilrank/errors.hpp"

namespace pencilrank {

namespace {

constexpr std::size_t kSimilarityTrials = 32;

void check_same_shape(const MatrixTuple& a, const MatrixTuple& b) {
  if (a.field() != b.field()) throw FieldMismatch("tuples from different fields");
  if (a.m() != b.m() || a.p() != b.p() || a.q() != b.q()) throw DimensionMismatch("tuples differ in shape");
}

}  // namespace

CandidatePool candidate_modules(const ModuleRep& m, const ModuleRep& n, std::uint64_t seed) {
  Rng rng(seed);
  CandidatePool pool;
  ModuleRep level = direct_sum(m, n);
  std::vector<ModuleRep> levels;
  while (level.dimension() > 0) {
    const Decomposition d = decompose(level, {rng.fork(), 64});
    pool.certified = pool.certified && d.certified;
    for (const auto& s : d.summands) pool.modules.push_back(s.module);
    levels.push_back(level);
    const EndAlgebra e = end_algebra(level);
    Submodule next = radical_submodule(level, e);
    if (next.module.dimension() >= level.dimension()) throw InternalError("radical chain did not shrink");
    level = std::move(next.module);
  }
  pool.chain_length = levels.size();
  for (auto& l : levels) pool.modules.push_back(std::move(l));
  pool.modules.push_back(m);
  pool.modules.push_back(n);
  std::stable_sort(pool.modules.begin(), pool.modules.end(), [](const ModuleRep& x, const ModuleRep& y) {
    return x.dimension() < y.dimension();
  });
  return pool;
}

SimilaritySearch find_similarity_witness(const MatrixTuple& a, const MatrixTuple& b, std::uint64_t seed) {
  check_same_shape(a, b);
  if (!a.is_square()) throw NonSquare("similarity needs square tuples");
  Rng rng(seed);
  const ModuleRep ma = ModuleRep::free_algebra(a), mb = ModuleRep::free_algebra(b);
  const CandidatePool pool = candidate_modules(ma, mb, rng.fork());
  SimilaritySearch out;
  for (const auto& c : pool.modules) {
    ++out.candidates_tested;
    const std::size_t da = dim_hom(c, ma), db = dim_hom(c, mb);
    if (da == db) continue;
    LinearPencil pencil = witness_from_module_sim(c.tuple());
    out.rank_a = rank(evaluate_pencil(pencil, a));
    out.rank_b = rank(evaluate_pencil(pencil, b));
    const std::size_t tn = c.dimension() * a.p();
    if (out.rank_a != tn - da || out.rank_b != tn - db)
      throw InternalError("similarity witness pencil violates its rank contract");
    out.outcome = SearchOutcome::Witness;
    out.pencil = std::move(pencil);
    out.candidate = c.tuple();
    return out;
  }
  if (auto p = sample_invertible_hom(ma, mb, rng, kSimilarityTrials)) {
    out.outcome = SearchOutcome::Equivalent;
    out.certificate = std::move(*p);
  }
  return out;
}

RectPencil stacked_rank_pencil(const Field& field, std::size_t m) {
  std::vector<Matrix> coeffs;
  for (std::size_t i = 0; i < m; ++i) coeffs.push_back(Matrix::unit(field, m, 1, i, 0));
  return RectPencil(field, m, 1, std::move(coeffs));
}

LeftRightSearch find_left_right_witness(const MatrixTuple& a, const MatrixTuple& b, std::uint64_t seed) {
  check_same_shape(a, b);
  Rng rng(seed);
  const ModuleRep na = ModuleRep::kronecker(a), nb = ModuleRep::kronecker(b);
  const CandidatePool pool = candidate_modules(na, nb, rng.fork());
  LeftRightSearch out;
  for (const auto& c : pool.modules) {
    ++out.candidates_tested;
    if (dim_hom(c, na) == dim_hom(c, nb)) continue;
    RectPencil pencil = c.tuple().is_zero() ? stacked_rank_pencil(a.field(), a.m())
                                            : witness_from_module_lr(c.tuple());
    out.rank_a = rank(evaluate_homogeneous(pencil, a));
    out.rank_b = rank(evaluate_homogeneous(pencil, b));
    if (out.rank_a == out.rank_b) throw InternalError("left-right witness pencil failed to separate");
    out.outcome = SearchOutcome::Witness;
    out.pencil = std::move(pencil);
    out.candidate = c.tuple();
    return out;
  }
  if (auto x = sample_invertible_hom(na, nb, rng, kSimilarityTrials)) {
    const std::size_t p = a.p(), q = a.q();
    out.outcome = SearchOutcome::Equivalent;
    out.certificate = std::make_pair(x->block(0, 0, p, p), invert(x->block(p, p, q, q)));
  }
  return out;
}

}  // namespace pencilrank
