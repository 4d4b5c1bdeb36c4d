#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pencilrank/module.hpp"
#include "pencilrank/pencil.hpp"

namespace pencilrank {

enum class SearchOutcome { Equivalent, Witness, Indeterminate };

// Candidate modules harvested from L_0 = M (+) N and its radical chain
// L_{i+1} = rad(End L_i) L_i: the summands of every level, every level
// itself, and M and N. Stably sorted by dimension.
struct CandidatePool {
  std::vector<ModuleRep> modules;
  std::size_t chain_length = 0;  // number of nonzero levels
  bool certified = true;         // every decomposition was certified
};
CandidatePool candidate_modules(const ModuleRep& m, const ModuleRep& n, std::uint64_t seed);

struct SimilaritySearch {
  SearchOutcome outcome = SearchOutcome::Indeterminate;
  std::optional<Matrix> certificate;  // P with P A_i P^{-1} = B_i
  std::optional<LinearPencil> pencil;
  std::optional<MatrixTuple> candidate;
  std::size_t rank_a = 0;
  std::size_t rank_b = 0;
  std::size_t candidates_tested = 0;
};

// Decision by candidate modules: the first candidate C with
// dim Hom(C, M_A) != dim Hom(C, M_B) yields the pencil witness_from_module_sim(C).
// Without one, an invertible intertwiner is sampled.
SimilaritySearch find_similarity_witness(const MatrixTuple& a, const MatrixTuple& b, std::uint64_t seed);

struct LeftRightSearch {
  SearchOutcome outcome = SearchOutcome::Indeterminate;
  std::optional<std::pair<Matrix, Matrix>> certificate;  // (P, Q) with P A_i Q = B_i
  std::optional<RectPencil> pencil;
  std::optional<MatrixTuple> candidate;
  std::size_t rank_a = 0;
  std::size_t rank_b = 0;
  std::size_t candidates_tested = 0;
};

// Pencil whose evaluation stacks the tuple vertically (T_i = e_i, m x 1);
// its rank is the rank of [X_1; ...; X_m].
RectPencil stacked_rank_pencil(const Field& field, std::size_t m);

// Quiver analogue for the left-right action. A zero candidate that separates
// is answered with stacked_rank_pencil.
LeftRightSearch find_left_right_witness(const MatrixTuple& a, const MatrixTuple& b, std::uint64_t seed);

}  // namespace pencilrank
