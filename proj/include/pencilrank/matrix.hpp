#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pencilrank/field.hpp"
#include "pencilrank/unipoly.hpp"

namespace pencilrank {

// Dense row-major matrix over an exact field. Zero-sized dimensions are valid.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);
  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(const Field& field, std::size_t n);
  // Convenience for literals and tests.
  static Matrix from_ints(const Field& field, const std::vector<std::vector<long long>>& rows);
  // Elementary matrix with a single one at (i, j), zero-based.
  static Matrix unit(const Field& field, std::size_t rows, std::size_t cols, std::size_t i,
                     std::size_t j);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;

  Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<Scalar>& entries() const { return entries_; }

  Matrix operator-() const;
  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& c, Matrix a);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const;
  Matrix conj_transpose() const;
  Matrix block(std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t row, std::size_t col, const Matrix& m);
  Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }
  Scalar trace() const;

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);
// Horizontal / vertical concatenation; all parts share the row (column) count.
Matrix hstack(const std::vector<Matrix>& parts);
Matrix vstack(const std::vector<Matrix>& parts);

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivot_columns;  // one per nonzero row
};

// Gauss-Jordan reduced row echelon form. Pivot: first nonzero entry in
// column-then-row scan order, so the output is deterministic.
Rref rref(const Matrix& m);

// Default rank: fraction-free Bareiss over Q, modular elimination over F_p,
// Gauss-Jordan over Q[i].
std::size_t rank(const Matrix& m);
// Rank through plain reduced echelon form, for every field.
std::size_t rank_by_rref(const Matrix& m);

// Columns form a basis of the right kernel (derived from the RREF).
Matrix kernel_basis(const Matrix& m);

struct SolveResult {
  bool consistent;
  Matrix solution;  // particular solution (free variables zero) when consistent
  Matrix kernel;    // basis of the homogeneous solution space
};
SolveResult solve(const Matrix& m, const Matrix& rhs);

// Bareiss over Q, elimination elsewhere.
Scalar det(const Matrix& m);
// Plain elimination for every field.
Scalar det_by_elimination(const Matrix& m);
// Throws SingularMatrix.
Matrix invert(const Matrix& m);

struct RankNormalForm {
  Matrix q;  // invertible, rows x rows
  Matrix p;  // invertible, cols x cols
  std::size_t rank;
};
// q * m * p == diag(I_rank, 0).
RankNormalForm rank_normal_form(const Matrix& m);

// Basis (as columns, in column echelon form) of the span of the columns.
Matrix column_basis(const Matrix& spanning);

UniPoly minimal_polynomial(const Matrix& m);
Matrix evaluate(const UniPoly& f, const Matrix& m);

// Column-major vectorization and its inverse.
Matrix vec(const Matrix& m);
Matrix unvec(const Matrix& column, std::size_t rows, std::size_t cols);

}  // namespace pencilrank
