#include "pencilrank/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "pencilrank/errors.hpp"

namespace pencilrank {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, field.zero()) {}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw DimensionMismatch("entry count does not match shape");
  for (const auto& e : entries_)
    if (e.field() != field_) throw FieldMismatch("matrix entry from another field");
}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Matrix Matrix::from_ints(const Field& field, const std::vector<std::vector<long long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows[0].size();
  Matrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged matrix literal");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
  }
  return m;
}

Matrix Matrix::unit(const Field& field, std::size_t rows, std::size_t cols, std::size_t i,
                    std::size_t j) {
  Matrix m(field, rows, cols);
  m(i, j) = field.one();
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (auto& e : r.entries_) e = -e;
  return r;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (other.field_ != field_) throw FieldMismatch("matrices from different fields");
  if (other.rows_ != rows_ || other.cols_ != cols_) throw DimensionMismatch("matrix sum shape");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (other.field_ != field_) throw FieldMismatch("matrices from different fields");
  if (other.rows_ != rows_ || other.cols_ != cols_) throw DimensionMismatch("matrix difference shape");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.field_ != b.field_) throw FieldMismatch("matrices from different fields");
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape");
  Matrix c(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b(k, j);
        if (!bkj.is_zero()) c(i, j) += aik * bkj;
      }
    }
  return c;
}

Matrix operator*(const Scalar& c, Matrix a) {
  for (auto& e : a.entries_) e *= c;
  return a;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::conj_transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conj();
  return t;
}

Matrix Matrix::block(std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols) const {
  if (row + nrows > rows_ || col + ncols > cols_) throw DimensionMismatch("block out of range");
  Matrix b(field_, nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(row + i, col + j);
  return b;
}

void Matrix::set_block(std::size_t row, std::size_t col, const Matrix& m) {
  if (m.field_ != field_) throw FieldMismatch("block from another field");
  if (row + m.rows_ > rows_ || col + m.cols_ > cols_) throw DimensionMismatch("block out of range");
  for (std::size_t i = 0; i < m.rows_; ++i)
    for (std::size_t j = 0; j < m.cols_; ++j) (*this)(row + i, col + j) = m(i, j);
}

Scalar Matrix::trace() const {
  if (!is_square()) throw NonSquare("trace of non-square matrix");
  Scalar t = field_.zero();
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw FieldMismatch("kron of matrices from different fields");
  Matrix k(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& aij = a(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          if (!b(r, c).is_zero()) k(i * b.rows() + r, j * b.cols() + c) = aij * b(r, c);
    }
  return k;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw FieldMismatch("direct sum of matrices from different fields");
  Matrix d(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  d.set_block(0, 0, a);
  d.set_block(a.rows(), a.cols(), b);
  return d;
}

Matrix hstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw DimensionMismatch("hstack of nothing");
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != parts[0].rows()) throw DimensionMismatch("hstack row mismatch");
    cols += p.cols();
  }
  Matrix m(parts[0].field(), parts[0].rows(), cols);
  std::size_t at = 0;
  for (const auto& p : parts) {
    m.set_block(0, at, p);
    at += p.cols();
  }
  return m;
}

Matrix vstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw DimensionMismatch("vstack of nothing");
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != parts[0].cols()) throw DimensionMismatch("vstack column mismatch");
    rows += p.rows();
  }
  Matrix m(parts[0].field(), rows, parts[0].cols());
  std::size_t at = 0;
  for (const auto& p : parts) {
    m.set_block(at, 0, p);
    at += p.rows();
  }
  return m;
}

namespace {

using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1, e = p - 2;
  while (e) {
    if (e & 1) result = mulmod(result, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> residues(const Matrix& m) {
  std::vector<std::uint64_t> r;
  r.reserve(m.entries().size());
  for (const auto& e : m.entries()) r.push_back(e.as_residue());
  return r;
}

// In-place Gauss-Jordan mod p; returns pivot columns.
std::vector<std::size_t> rref_mod(std::vector<std::uint64_t>& a, std::size_t rows, std::size_t cols,
                                  std::uint64_t p, bool reduce_above) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const std::uint64_t inv = invmod(a[r * cols + c], p);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = mulmod(a[r * cols + j], inv, p);
    for (std::size_t i = reduce_above ? 0 : r + 1; i < rows; ++i) {
      if (i == r) continue;
      const std::uint64_t f = a[i * cols + c];
      if (f == 0) continue;
      const std::uint64_t nf = p - f;
      for (std::size_t j = c; j < cols; ++j) {
        const std::uint64_t v = a[r * cols + j];
        if (v) a[i * cols + j] = (a[i * cols + j] + mulmod(nf, v, p)) % p;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// In-place Gauss-Jordan over any field.
std::vector<std::size_t> rref_generic(std::vector<Scalar>& a, std::size_t rows, std::size_t cols,
                                      bool reduce_above, int* swaps = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c].is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
      if (swaps) ++*swaps;
    }
    if (reduce_above) {
      const Scalar inv = a[r * cols + c].inverse();
      for (std::size_t j = c; j < cols; ++j)
        if (!a[r * cols + j].is_zero()) a[r * cols + j] *= inv;
    }
    const Scalar pivot = a[r * cols + c];
    for (std::size_t i = reduce_above ? 0 : r + 1; i < rows; ++i) {
      if (i == r || a[i * cols + c].is_zero()) continue;
      const Scalar f = reduce_above ? a[i * cols + c] : a[i * cols + c] / pivot;
      for (std::size_t j = c; j < cols; ++j) {
        const Scalar& v = a[r * cols + j];
        if (!v.is_zero()) a[i * cols + j] -= f * v;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

struct BareissResult {
  std::size_t rank;
  mpz_class last_pivot;
  int sign;
};

// Fraction-free elimination; entries stay integral minors of the input.
BareissResult bareiss(std::vector<mpz_class>& a, std::size_t rows, std::size_t cols) {
  mpz_class prev = 1;
  std::size_t r = 0;
  int sign = 1;
  mpz_class t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(a[piv * cols + c]) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
      sign = -sign;
    }
    const mpz_class& p = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      mpz_class& aic = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class& aij = a[i * cols + j];
        mpz_mul(aij.get_mpz_t(), aij.get_mpz_t(), p.get_mpz_t());
        mpz_mul(t.get_mpz_t(), aic.get_mpz_t(), a[r * cols + j].get_mpz_t());
        aij -= t;
        mpz_divexact(aij.get_mpz_t(), aij.get_mpz_t(), prev.get_mpz_t());
      }
      aic = 0;
    }
    prev = p;
    ++r;
  }
  return {r, prev, sign};
}

// Rows scaled to integers; returns the product of the scale factors.
mpz_class integer_rows(const Matrix& m, std::vector<mpz_class>& out) {
  out.assign(m.rows() * m.cols(), 0);
  mpz_class scale_product = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).as_rational().get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& q = m(i, j).as_rational();
      mpz_class v;
      mpz_divexact(v.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
      out[i * m.cols() + j] = v * q.get_num();
    }
    scale_product *= l;
  }
  return scale_product;
}

Matrix from_residue_vector(const Field& field, std::size_t rows, std::size_t cols,
                           const std::vector<std::uint64_t>& a) {
  std::vector<Scalar> e;
  e.reserve(a.size());
  for (std::uint64_t v : a) e.push_back(Scalar::residue(static_cast<std::int64_t>(v), field.characteristic()));
  return Matrix(field, rows, cols, std::move(e));
}

}  // namespace

Rref rref(const Matrix& m) {
  if (m.field().is_prime_field()) {
    auto a = residues(m);
    auto piv = rref_mod(a, m.rows(), m.cols(), m.field().characteristic(), true);
    return {from_residue_vector(m.field(), m.rows(), m.cols(), a), std::move(piv)};
  }
  std::vector<Scalar> a = m.entries();
  auto piv = rref_generic(a, m.rows(), m.cols(), true);
  return {Matrix(m.field(), m.rows(), m.cols(), std::move(a)), std::move(piv)};
}

std::size_t rank(const Matrix& m) {
  switch (m.field().kind()) {
    case Field::Kind::Rationals: {
      std::vector<mpz_class> a;
      integer_rows(m, a);
      return bareiss(a, m.rows(), m.cols()).rank;
    }
    case Field::Kind::PrimeField: {
      auto a = residues(m);
      return rref_mod(a, m.rows(), m.cols(), m.field().characteristic(), false).size();
    }
    case Field::Kind::GaussianRationals:
      break;
  }
  std::vector<Scalar> a = m.entries();
  return rref_generic(a, m.rows(), m.cols(), false).size();
}

std::size_t rank_by_rref(const Matrix& m) {
  std::vector<Scalar> a = m.entries();
  return rref_generic(a, m.rows(), m.cols(), true).size();
}

Matrix kernel_basis(const Matrix& m) {
  const Rref r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : r.pivot_columns) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(m.field(), n, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    k(free_cols[f], f) = m.field().one();
    for (std::size_t row = 0; row < r.pivot_columns.size(); ++row)
      k(r.pivot_columns[row], f) = -r.reduced(row, free_cols[f]);
  }
  return k;
}

SolveResult solve(const Matrix& m, const Matrix& rhs) {
  if (rhs.rows() != m.rows()) throw DimensionMismatch("right-hand side row count");
  const Rref r = rref(hstack({m, rhs}));
  const std::size_t n = m.cols();
  std::vector<std::size_t> left_pivots;
  for (std::size_t c : r.pivot_columns) {
    if (c >= n) return {false, Matrix(m.field(), n, rhs.cols()), kernel_basis(m)};
    left_pivots.push_back(c);
  }
  Matrix x(m.field(), n, rhs.cols());
  for (std::size_t row = 0; row < left_pivots.size(); ++row)
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(left_pivots[row], j) = r.reduced(row, n + j);
  // Kernel from the left block of the same reduction.
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : left_pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(m.field(), n, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    k(free_cols[f], f) = m.field().one();
    for (std::size_t row = 0; row < left_pivots.size(); ++row)
      k(left_pivots[row], f) = -r.reduced(row, free_cols[f]);
  }
  return {true, std::move(x), std::move(k)};
}

Scalar det_by_elimination(const Matrix& m) {
  if (!m.is_square()) throw NonSquare("determinant of non-square matrix");
  std::vector<Scalar> a = m.entries();
  int swaps = 0;
  const auto piv = rref_generic(a, m.rows(), m.cols(), false, &swaps);
  if (piv.size() < m.rows()) return m.field().zero();
  Scalar d = m.field().one();
  for (std::size_t i = 0; i < m.rows(); ++i) d *= a[i * m.cols() + i];
  return swaps % 2 ? -d : d;
}

Scalar det(const Matrix& m) {
  if (!m.is_square()) throw NonSquare("determinant of non-square matrix");
  if (m.rows() == 0) return m.field().one();
  switch (m.field().kind()) {
    case Field::Kind::Rationals: {
      std::vector<mpz_class> a;
      const mpz_class scale = integer_rows(m, a);
      const BareissResult b = bareiss(a, m.rows(), m.cols());
      if (b.rank < m.rows()) return m.field().zero();
      mpq_class d(b.last_pivot * b.sign, scale);
      return Scalar::rational(d);
    }
    case Field::Kind::PrimeField: {
      const std::uint64_t p = m.field().characteristic();
      auto a = residues(m);
      const std::size_t n = m.rows();
      std::uint64_t d = 1;
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv * n + c] == 0) ++piv;
        if (piv == n) return m.field().zero();
        if (piv != c) {
          for (std::size_t j = 0; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
          d = d == 0 ? 0 : p - d;
        }
        d = mulmod(d, a[c * n + c], p);
        const std::uint64_t inv = invmod(a[c * n + c], p);
        for (std::size_t i = c + 1; i < n; ++i) {
          const std::uint64_t f = mulmod(a[i * n + c], inv, p);
          if (f == 0) continue;
          for (std::size_t j = c; j < n; ++j)
            a[i * n + j] = (a[i * n + j] + mulmod(p - f, a[c * n + j], p)) % p;
        }
      }
      return Scalar::residue(static_cast<std::int64_t>(d), p);
    }
    case Field::Kind::GaussianRationals:
      break;
  }
  return det_by_elimination(m);
}

Matrix invert(const Matrix& m) {
  if (!m.is_square()) throw NonSquare("inverse of non-square matrix");
  const std::size_t n = m.rows();
  const Rref r = rref(hstack({m, Matrix::identity(m.field(), n)}));
  if (r.pivot_columns.size() < n || (n > 0 && r.pivot_columns[n - 1] >= n))
    throw SingularMatrix("matrix is singular");
  return r.reduced.block(0, n, n, n);
}

RankNormalForm rank_normal_form(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const Field& k = m.field();
  const Rref r = rref(hstack({m, Matrix::identity(k, rows)}));
  std::vector<std::size_t> pivots;
  for (std::size_t c : r.pivot_columns)
    if (c < cols) pivots.push_back(c);
  const std::size_t rk = pivots.size();
  Matrix q = r.reduced.block(0, cols, rows, rows);
  const Matrix reduced = r.reduced.block(0, 0, rows, cols);

  // Column permutation: pivots first, then the remaining columns in order.
  std::vector<std::size_t> order = pivots;
  std::vector<bool> used(cols, false);
  for (std::size_t c : pivots) used[c] = true;
  for (std::size_t c = 0; c < cols; ++c)
    if (!used[c]) order.push_back(c);
  Matrix perm(k, cols, cols);
  for (std::size_t j = 0; j < cols; ++j) perm(order[j], j) = k.one();
  // reduced * perm = [[I, X], [0, 0]]; clear X with a unipotent column operation.
  const Matrix x = (reduced * perm).block(0, rk, rk, cols - rk);
  Matrix clear = Matrix::identity(k, cols);
  clear.set_block(0, rk, -x);
  return {std::move(q), perm * clear, rk};
}

Matrix column_basis(const Matrix& spanning) {
  const Rref r = rref(spanning.transpose());
  return r.reduced.block(0, 0, r.pivot_columns.size(), spanning.rows()).transpose();
}

Matrix vec(const Matrix& m) {
  Matrix v(m.field(), m.rows() * m.cols(), 1);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) v(j * m.rows() + i, 0) = m(i, j);
  return v;
}

Matrix unvec(const Matrix& column, std::size_t rows, std::size_t cols) {
  if (column.rows() != rows * cols || column.cols() != 1) throw DimensionMismatch("unvec shape");
  Matrix m(column.field(), rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = column(j * rows + i, 0);
  return m;
}

UniPoly minimal_polynomial(const Matrix& m) {
  if (!m.is_square()) throw NonSquare("minimal polynomial of non-square matrix");
  const Field& k = m.field();
  const std::size_t n = m.rows();
  std::vector<Matrix> powers{vec(Matrix::identity(k, n))};
  Matrix current = Matrix::identity(k, n);
  for (std::size_t d = 1; d <= n; ++d) {
    current = current * m;
    const Matrix target = vec(current);
    const SolveResult s = solve(hstack(powers), target);
    if (s.consistent) {
      std::vector<Scalar> coeffs(d + 1, k.zero());
      for (std::size_t j = 0; j < d; ++j) coeffs[j] = -s.solution(j, 0);
      coeffs[d] = k.one();
      return UniPoly(k, std::move(coeffs));
    }
    powers.push_back(target);
  }
  throw InternalError("minimal polynomial degree exceeded dimension");
}

Matrix evaluate(const UniPoly& f, const Matrix& m) {
  if (!m.is_square()) throw NonSquare("polynomial evaluation at non-square matrix");
  const Field& k = m.field();
  Matrix acc(k, m.rows(), m.cols());
  const Matrix id = Matrix::identity(k, m.rows());
  const auto& c = f.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * m + *it * id;
  return acc;
}

}  // namespace pencilrank
