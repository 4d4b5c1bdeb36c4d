#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pencilrank/matrix.hpp"
#include "pencilrank/random.hpp"

namespace pencilrank {

// m matrices of a common p x q shape over one field.
class MatrixTuple {
 public:
  MatrixTuple(Field field, std::size_t p, std::size_t q, std::vector<Matrix> matrices);

  static MatrixTuple zero(const Field& field, std::size_t m, std::size_t p, std::size_t q);
  static MatrixTuple random(const Field& field, std::size_t m, std::size_t p, std::size_t q, Rng& rng,
                            std::int64_t bound = 3);

  const Field& field() const { return field_; }
  std::size_t m() const { return matrices_.size(); }
  std::size_t p() const { return p_; }
  std::size_t q() const { return q_; }
  bool is_square() const { return p_ == q_; }
  bool is_zero() const;
  const std::vector<Matrix>& matrices() const { return matrices_; }
  const Matrix& operator[](std::size_t i) const { return matrices_[i]; }

  // P A_i P^{-1} for every i.
  MatrixTuple conjugate(const Matrix& p) const;
  // P A_i Q for every i.
  MatrixTuple left_right(const Matrix& p, const Matrix& q) const;
  MatrixTuple scaled(const Scalar& c) const;
  MatrixTuple transposed() const;
  // Zero-based indices, kept in the given order.
  MatrixTuple subset(const std::vector<std::size_t>& indices) const;
  // Concatenation of two tuples of the same shape.
  MatrixTuple concat(const MatrixTuple& other) const;

  friend bool operator==(const MatrixTuple& a, const MatrixTuple& b) {
    return a.field_ == b.field_ && a.p_ == b.p_ && a.q_ == b.q_ && a.matrices_ == b.matrices_;
  }
  friend bool operator!=(const MatrixTuple& a, const MatrixTuple& b) { return !(a == b); }

 private:
  Field field_;
  std::size_t p_;
  std::size_t q_;
  std::vector<Matrix> matrices_;
};

// Coordinatewise direct sum A_i (+) B_i.
MatrixTuple direct_sum(const MatrixTuple& a, const MatrixTuple& b);

// Affine pencil T_0 + x_1 T_1 + ... + x_m T_m with square coefficients.
struct LinearPencil {
  Field field;
  std::vector<Matrix> coefficients;  // T_0 first

  LinearPencil(Field field, std::vector<Matrix> coefficients);
  std::size_t size() const { return coefficients[0].rows(); }
  std::size_t m() const { return coefficients.size() - 1; }
};

// Homogeneous pencil x_1 T_1 + ... + x_m T_m with rectangular coefficients.
struct RectPencil {
  Field field;
  std::size_t rows;
  std::size_t cols;
  std::vector<Matrix> coefficients;  // T_1 first

  RectPencil(Field field, std::size_t rows, std::size_t cols, std::vector<Matrix> coefficients);
  std::size_t m() const { return coefficients.size(); }
};

// I_n (x) T_0 + sum A_i (x) T_i. Tuple factor on the left.
Matrix evaluate_pencil(const LinearPencil& pencil, const MatrixTuple& a);
// sum A_i (x) T_i.
Matrix evaluate_homogeneous(const RectPencil& pencil, const MatrixTuple& a);
// sum T_i (x) A_i; same rank as evaluate_homogeneous.
Matrix evaluate_homogeneous_swapped(const RectPencil& pencil, const MatrixTuple& a);

// Permutation K(rows, cols) with K vec(X) = vec(X^t) for X of shape rows x cols.
// For A of shape p x q and B of shape r x s: K(r,p) kron(A,B) K(q,s) = kron(B,A).
Matrix commutation_matrix(const Field& field, std::size_t rows, std::size_t cols);

// Pencil of size m*t built from a square t x t tuple C. For every square
// tuple X of size n: rank L(X) = t*n - dim Hom(M_C, M_X).
LinearPencil witness_from_module_sim(const MatrixTuple& c);

// Homogeneous pencil built from an r x s tuple C != 0, with coefficients of
// size (m*s - k) x s where k is the rank of the stacked C_i^t. For every
// p x q tuple X: rank(sum X_i (x) T_i) = q*s + p*(r - k) - dim Hom(N_C, N_X).
// Throws ZeroModule when C = 0.
RectPencil witness_from_module_lr(const MatrixTuple& c);

// Rank of the stacked C_i^t used by witness_from_module_lr.
std::size_t stacked_transpose_rank(const MatrixTuple& c);

// Entries uniform in [-3, 3] (real and imaginary parts over Q[i]); uniform over F_p.
LinearPencil random_pencil(const Field& field, std::size_t m, std::size_t size, Rng& rng);

struct RankViolation {
  LinearPencil pencil;
  std::size_t rank_a;
  std::size_t rank_b;
};

struct SampleReport {
  std::size_t samples = 0;
  std::vector<RankViolation> violations;
};

// Evaluates `trials` random pencils of sizes 1..max_size on both tuples and
// reports those whose ranks differ. An empty report is evidence, not proof.
SampleReport rank_equality_sample(const MatrixTuple& a, const MatrixTuple& b, std::size_t max_size,
                                  std::size_t trials, std::uint64_t seed);

// Zero-based indices of a basis of span(A_1, ..., A_m), chosen greedily.
std::vector<std::size_t> select_spanning_subset(const MatrixTuple& a);

}  // namespace pencilrank
