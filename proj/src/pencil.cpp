#include "pencilrank/pencil.hpp"

#include "pencilrank/errors.hpp"

namespace pencilrank {

MatrixTuple::MatrixTuple(Field field, std::size_t p, std::size_t q, std::vector<Matrix> matrices)
    : field_(field), p_(p), q_(q), matrices_(std::move(matrices)) {
  for (const auto& a : matrices_) {
    if (a.field() != field_) throw FieldMismatch("tuple entry from another field");
    if (a.rows() != p_ || a.cols() != q_) throw DimensionMismatch("tuple entries differ in shape");
  }
}

MatrixTuple MatrixTuple::zero(const Field& field, std::size_t m, std::size_t p, std::size_t q) {
  return MatrixTuple(field, p, q, std::vector<Matrix>(m, Matrix(field, p, q)));
}

MatrixTuple MatrixTuple::random(const Field& field, std::size_t m, std::size_t p, std::size_t q,
                                Rng& rng, std::int64_t bound) {
  std::vector<Matrix> mats;
  for (std::size_t k = 0; k < m; ++k) {
    Matrix a(field, p, q);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < q; ++j) a(i, j) = random_scalar(field, rng, bound);
    mats.push_back(std::move(a));
  }
  return MatrixTuple(field, p, q, std::move(mats));
}

bool MatrixTuple::is_zero() const {
  for (const auto& a : matrices_)
    if (!a.is_zero()) return false;
  return true;
}

MatrixTuple MatrixTuple::conjugate(const Matrix& p) const {
  if (!is_square()) throw NonSquare("conjugation of a rectangular tuple");
  const Matrix inv = invert(p);
  std::vector<Matrix> out;
  for (const auto& a : matrices_) out.push_back(p * a * inv);
  return MatrixTuple(field_, p_, q_, std::move(out));
}

MatrixTuple MatrixTuple::left_right(const Matrix& p, const Matrix& q) const {
  std::vector<Matrix> out;
  for (const auto& a : matrices_) out.push_back(p * a * q);
  return MatrixTuple(field_, p.rows(), q.cols(), std::move(out));
}

MatrixTuple MatrixTuple::scaled(const Scalar& c) const {
  std::vector<Matrix> out;
  for (const auto& a : matrices_) out.push_back(c * a);
  return MatrixTuple(field_, p_, q_, std::move(out));
}

MatrixTuple MatrixTuple::transposed() const {
  std::vector<Matrix> out;
  for (const auto& a : matrices_) out.push_back(a.transpose());
  return MatrixTuple(field_, q_, p_, std::move(out));
}

MatrixTuple MatrixTuple::subset(const std::vector<std::size_t>& indices) const {
  std::vector<Matrix> out;
  for (std::size_t i : indices) {
    if (i >= matrices_.size()) throw DimensionMismatch("tuple index out of range");
    out.push_back(matrices_[i]);
  }
  return MatrixTuple(field_, p_, q_, std::move(out));
}

MatrixTuple MatrixTuple::concat(const MatrixTuple& other) const {
  if (other.field_ != field_) throw FieldMismatch("tuples from different fields");
  if (other.p_ != p_ || other.q_ != q_) throw DimensionMismatch("tuples differ in shape");
  std::vector<Matrix> out = matrices_;
  out.insert(out.end(), other.matrices_.begin(), other.matrices_.end());
  return MatrixTuple(field_, p_, q_, std::move(out));
}

MatrixTuple direct_sum(const MatrixTuple& a, const MatrixTuple& b) {
  if (a.m() != b.m()) throw DimensionMismatch("direct sum of tuples of different length");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < a.m(); ++i) out.push_back(direct_sum(a[i], b[i]));
  return MatrixTuple(a.field(), a.p() + b.p(), a.q() + b.q(), std::move(out));
}

LinearPencil::LinearPencil(Field f, std::vector<Matrix> coeffs)
    : field(f), coefficients(std::move(coeffs)) {
  if (coefficients.empty()) throw DimensionMismatch("pencil needs a constant coefficient");
  const std::size_t d = coefficients[0].rows();
  for (const auto& t : coefficients) {
    if (t.field() != field) throw FieldMismatch("pencil coefficient from another field");
    if (t.rows() != d || t.cols() != d) throw DimensionMismatch("pencil coefficients must be square of equal size");
  }
}

RectPencil::RectPencil(Field f, std::size_t r, std::size_t c, std::vector<Matrix> coeffs)
    : field(f), rows(r), cols(c), coefficients(std::move(coeffs)) {
  for (const auto& t : coefficients) {
    if (t.field() != field) throw FieldMismatch("pencil coefficient from another field");
    if (t.rows() != rows || t.cols() != cols) throw DimensionMismatch("pencil coefficient shape");
  }
}

namespace {

void check_compatible(const Field& field, std::size_t pencil_m, const MatrixTuple& a) {
  if (a.field() != field) throw FieldMismatch("pencil and tuple over different fields");
  if (a.m() != pencil_m) throw DimensionMismatch("pencil and tuple have different lengths");
}

// acc += A (x) T without forming the product separately.
void add_kron(Matrix& acc, const Matrix& a, const Matrix& t) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& aij = a(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t r = 0; r < t.rows(); ++r)
        for (std::size_t c = 0; c < t.cols(); ++c)
          if (!t(r, c).is_zero()) acc(i * t.rows() + r, j * t.cols() + c) += aij * t(r, c);
    }
}

}  // namespace

Matrix evaluate_pencil(const LinearPencil& pencil, const MatrixTuple& a) {
  check_compatible(pencil.field, pencil.m(), a);
  if (!a.is_square()) throw NonSquare("affine pencils evaluate on square tuples");
  const std::size_t n = a.p(), d = pencil.size();
  Matrix acc(a.field(), n * d, n * d);
  add_kron(acc, Matrix::identity(a.field(), n), pencil.coefficients[0]);
  for (std::size_t i = 0; i < a.m(); ++i) add_kron(acc, a[i], pencil.coefficients[i + 1]);
  return acc;
}

Matrix evaluate_homogeneous(const RectPencil& pencil, const MatrixTuple& a) {
  check_compatible(pencil.field, pencil.m(), a);
  Matrix acc(a.field(), a.p() * pencil.rows, a.q() * pencil.cols);
  for (std::size_t i = 0; i < a.m(); ++i) add_kron(acc, a[i], pencil.coefficients[i]);
  return acc;
}

Matrix evaluate_homogeneous_swapped(const RectPencil& pencil, const MatrixTuple& a) {
  check_compatible(pencil.field, pencil.m(), a);
  Matrix acc(a.field(), a.p() * pencil.rows, a.q() * pencil.cols);
  for (std::size_t i = 0; i < a.m(); ++i) add_kron(acc, pencil.coefficients[i], a[i]);
  return acc;
}

Matrix commutation_matrix(const Field& field, std::size_t rows, std::size_t cols) {
  // vec(X)[j*rows + i] = X(i,j) maps to vec(X^t)[i*cols + j].
  Matrix k(field, rows * cols, rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) k(i * cols + j, j * rows + i) = field.one();
  return k;
}

LinearPencil witness_from_module_sim(const MatrixTuple& c) {
  if (!c.is_square()) throw NonSquare("similarity witness needs a square tuple");
  const Field& k = c.field();
  const std::size_t m = c.m(), t = c.p();
  std::vector<Matrix> coeffs;
  Matrix t0(k, m * t, m * t);
  for (std::size_t j = 0; j < m; ++j)
    t0 -= kron(Matrix::unit(k, m, m, j, 0), c[j].transpose());
  coeffs.push_back(std::move(t0));
  const Matrix id = Matrix::identity(k, t);
  for (std::size_t i = 0; i < m; ++i) coeffs.push_back(kron(Matrix::unit(k, m, m, i, 0), id));
  return LinearPencil(k, std::move(coeffs));
}

namespace {

Matrix stacked_neg_transposes(const MatrixTuple& c) {
  std::vector<Matrix> parts;
  for (const auto& ci : c.matrices()) parts.push_back(-ci.transpose());
  return vstack(parts);
}

}  // namespace

std::size_t stacked_transpose_rank(const MatrixTuple& c) { return rank(stacked_neg_transposes(c)); }

RectPencil witness_from_module_lr(const MatrixTuple& c) {
  if (c.m() == 0 || c.is_zero()) throw ZeroModule("witness construction needs a nonzero tuple");
  const Field& k = c.field();
  const std::size_t m = c.m(), s = c.q();
  const RankNormalForm nf = rank_normal_form(stacked_neg_transposes(c));
  const std::size_t keep = m * s - nf.rank;
  std::vector<Matrix> coeffs;
  const Matrix id = Matrix::identity(k, s);
  for (std::size_t i = 0; i < m; ++i) {
    const Matrix full = nf.q * kron(Matrix::unit(k, m, 1, i, 0), id);
    coeffs.push_back(full.block(nf.rank, 0, keep, s));
  }
  return RectPencil(k, keep, s, std::move(coeffs));
}

LinearPencil random_pencil(const Field& field, std::size_t m, std::size_t size, Rng& rng) {
  std::vector<Matrix> coeffs;
  for (std::size_t i = 0; i <= m; ++i) {
    Matrix t(field, size, size);
    for (std::size_t r = 0; r < size; ++r)
      for (std::size_t c = 0; c < size; ++c) t(r, c) = random_scalar(field, rng, 3);
    coeffs.push_back(std::move(t));
  }
  return LinearPencil(field, std::move(coeffs));
}

SampleReport rank_equality_sample(const MatrixTuple& a, const MatrixTuple& b, std::size_t max_size,
                                  std::size_t trials, std::uint64_t seed) {
  if (a.field() != b.field()) throw FieldMismatch("tuples from different fields");
  if (a.m() != b.m() || a.p() != b.p() || a.q() != b.q()) throw DimensionMismatch("tuples differ in shape");
  if (max_size == 0) throw PreconditionViolation("pencil size bound must be positive");
  Rng rng(seed);
  SampleReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t size = 1 + rng.below(max_size);
    LinearPencil l = random_pencil(a.field(), a.m(), size, rng);
    const std::size_t ra = rank(evaluate_pencil(l, a));
    const std::size_t rb = rank(evaluate_pencil(l, b));
    ++report.samples;
    if (ra != rb) report.violations.push_back({std::move(l), ra, rb});
  }
  return report;
}

std::vector<std::size_t> select_spanning_subset(const MatrixTuple& a) {
  std::vector<std::size_t> chosen;
  std::vector<Matrix> columns;
  std::size_t current = 0;
  for (std::size_t i = 0; i < a.m(); ++i) {
    columns.push_back(vec(a[i]));
    const std::size_t r = rank(hstack(columns));
    if (r > current) {
      chosen.push_back(i);
      current = r;
    } else {
      columns.pop_back();
    }
  }
  return chosen;
}

}  // namespace pencilrank
