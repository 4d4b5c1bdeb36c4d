#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pencilrank/matrix.hpp"
#include "pencilrank/pencil.hpp"
#include "pencilrank/random.hpp"

namespace pencilrank {

// Word over x_1..x_m, stored as zero-based variable indices. Empty = constant.
using Word = std::vector<std::size_t>;

// Noncommutative polynomial: word -> nonzero coefficient.
class NcPoly {
 public:
  explicit NcPoly(Field field) : field_(field) {}

  static NcPoly constant(const Scalar& c);
  // x_{index+1}
  static NcPoly variable(const Field& field, std::size_t index);

  const Field& field() const { return field_; }
  const std::map<Word, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // -1 for the zero polynomial.
  int degree() const;
  Scalar coefficient(const Word& w) const;
  // Adds c*w, dropping the term if it cancels.
  void add_term(const Word& w, const Scalar& c);

  NcPoly operator-() const;
  NcPoly& operator+=(const NcPoly& other);
  NcPoly& operator-=(const NcPoly& other);
  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
  friend NcPoly operator*(const Scalar& c, const NcPoly& a);
  friend bool operator==(const NcPoly& a, const NcPoly& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  // Terms by descending degree, then lexicographically; re-parses to itself.
  std::string to_string() const;

 private:
  Field field_;
  std::map<Word, Scalar> terms_;
};

// rows x cols matrix of noncommutative polynomials.
class NcMatPoly {
 public:
  NcMatPoly(Field field, std::size_t rows, std::size_t cols);
  NcMatPoly(Field field, std::size_t rows, std::size_t cols, std::vector<NcPoly> entries);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  NcPoly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const NcPoly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  int degree() const;

  friend bool operator==(const NcMatPoly& a, const NcMatPoly& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  // A 1x1 matrix prints as a bare expression.
  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<NcPoly> entries_;
};

// Grammar (whitespace insignificant):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := scalar | var | '(' expr ')'
//   scalar := digits ['/' digits] ['i'] | 'i'
//   var    := 'x' positive-integer          (index at most m)
//   matrix := '[' row (',' row)* ']',  row := '[' expr (',' expr)* ']'
// The input is either a matrix or a single expression (a 1x1 matrix).
// Throws ParseError with line and column.
NcMatPoly parse_nc(std::string_view text, const Field& field, std::size_t m);

// Substitutes the tuple; constants act as scalar multiples of I_n.
Matrix evaluate(const NcPoly& f, const MatrixTuple& a);
// Block matrix whose (i, j) block of size n is F_ij(A).
Matrix evaluate(const NcMatPoly& f, const MatrixTuple& a);

// `terms` random words of length <= degree with coefficients from
// random_scalar(bound 3); repeated words accumulate.
NcPoly random_ncpoly(const Field& field, Rng& rng, std::size_t m, std::size_t degree, std::size_t terms);

struct LinearizationResult {
  LinearPencil pencil;
  std::size_t offset;  // pencil size minus input size
};

// Bordering linearization of a square F over x_1..x_m. For every square
// tuple A of size n: rank F(A) = rank L(A) - offset * n.
LinearizationResult higman_linearize(const NcMatPoly& f, std::size_t m);

}  // namespace pencilrank
