#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pencilrank/pencil.hpp"

namespace pencilrank {

enum class Decision { Equivalent, NotEquivalent, Indeterminate, ProbablyInNullCone };

const char* to_string(Decision d);

// Two values of a named invariant; they differ for a NotEquivalent verdict.
struct InvariantWitness {
  std::string name;
  Scalar value_a;
  Scalar value_b;
  std::optional<RectPencil> pencil;  // blow-up used by determinant invariants
};

struct Verdict {
  Decision decision = Decision::Indeterminate;
  // Certificate: P alone (similarity) or (P, Q) with P A_i Q = B_i.
  std::optional<Matrix> p;
  std::optional<Matrix> q;
  // Pencil witness with the ranks on A and B.
  std::optional<LinearPencil> linear_witness;
  std::optional<RectPencil> rect_witness;
  std::size_t rank_a = 0;
  std::size_t rank_b = 0;
  std::optional<InvariantWitness> invariant;
  // Blow-ups whose determinants agree on A and B (outside the null cone).
  std::vector<RectPencil> determinant_checks;
  std::string note;
};

struct SimilarOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 8;
};

// Random elements of {P : P A_i = B_i P}; falls back to the candidate-module
// search when every sample is singular.
Verdict similar(const MatrixTuple& a, const MatrixTuple& b, const SimilarOptions& options = {});

// GL_p x GL_q left-right equivalence; certificate (P, Q) with P A_i Q = B_i.
Verdict glr_equivalent(const MatrixTuple& a, const MatrixTuple& b, const SimilarOptions& options = {});

enum class InvolutionKind { Transpose, ConjugateTranspose, Symplectic };

const char* to_string(InvolutionKind k);
InvolutionKind parse_involution(const std::string& text);

// A -> A*: transpose, conjugate transpose (Q[i] only), or -J A^t J with
// J = [[0, I], [-I, 0]] (even size only).
Matrix apply_involution(const Matrix& a, InvolutionKind kind);
MatrixTuple apply_involution(const MatrixTuple& a, InvolutionKind kind);

// Similarity of (A, A*) and (B, B*). The answer concerns the group preserving
// the form over the closure of the ground field; the certificate is a GL_n
// element conjugating the doubled tuples.
Verdict structured_similar(const MatrixTuple& a, const MatrixTuple& b, InvolutionKind kind,
                           const SimilarOptions& options = {});

struct NullconeResult {
  bool probably_in_nullcone = true;
  std::optional<RectPencil> certificate;  // det(sum A_i (x) T_i) != 0
  std::string note;
};

struct NullconeOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 32;
};

// Randomized surrogate for null-cone membership. Tries T_i = I_d with the
// other coefficients zero first, then random T with entries in [-n, n], at
// sizes d = n-1 and d = n.
NullconeResult nullcone_member(const MatrixTuple& a, const NullconeOptions& options = {});

// T of size d with det(sum A_i (x) T_i) != 0, if sampling finds one.
std::optional<RectPencil> nonsingular_blowup(const MatrixTuple& a, std::size_t d, const NullconeOptions& options);

// SL_n x SL_n equivalence of square tuples outside the null cone, by
// comparing determinants of blow-ups at sizes n-1 and n.
// Throws PreconditionViolation when either tuple looks like a null-cone member.
Verdict sl_equivalent_outside_nullcone(const MatrixTuple& a, const MatrixTuple& b,
                                       const SimilarOptions& options = {});

// Consistency of sum A_i C_i = q I_p, sum C_i A_i = p I_q in the unknown tuple C.
bool scaling_system_consistent(const MatrixTuple& a);

// det(P)^(l/p) * det(Q)^(l/q) with l = lcm(p, q).
Scalar weighted_determinant(const Matrix& p, const Matrix& q);

// SL_p x SL_q equivalence over the algebraic closure.
Verdict sl_equivalent(const MatrixTuple& a, const MatrixTuple& b, const SimilarOptions& options = {});

// Whether A and lambda A share an SL_p x SL_q orbit.
bool lambda_equivalent(const MatrixTuple& a, const Scalar& lambda);

struct BlockScaling {
  Matrix d1;  // p x p, determinant 1
  Matrix d2;  // q x q, determinant 1
  Scalar lambda;  // D1 A D2 = lambda A for block tuples of shape (k x l, (p-k) x (q-l))
};

// D1 = mu^((p-k)q) I_k (+) mu^(-kq) I_(p-k), D2 = mu^(p(l-q)) I_l (+) mu^(pl) I_(q-l),
// lambda = mu^(pl - qk).
BlockScaling block_scaling_pair(const Field& field, std::size_t p, std::size_t q, std::size_t k,
                                std::size_t l, const Scalar& mu);

struct SubsetVerdict {
  Verdict verdict;
  std::vector<std::size_t> basis;          // indices spanning span(A_i)
  std::optional<std::size_t> extra_index;  // added index of a separating subset
};

// Decides similarity through the subsets I and I + {j}, where I indexes a
// basis of span(A_1, ..., A_m). Witnesses are padded back to the full tuple.
SubsetVerdict similar_by_subsets(const MatrixTuple& a, const MatrixTuple& b, const SimilarOptions& options = {});

enum class Action { Similarity, LeftRight, SpecialLeftRight, SpecialOutsideNullcone, Structured };

// Re-checks every certificate and witness in the verdict exactly. Returns an
// empty string when the verdict verifies, otherwise the reason it does not.
std::string verify_verdict(const Verdict& v, const MatrixTuple& a, const MatrixTuple& b, Action action,
                           std::optional<InvolutionKind> involution = std::nullopt);

}  // namespace pencilrank
