#include "pencilrank/module.hpp"

#include <algorithm>
#include <bit>

#include "pencilrank/errors.hpp"
#include "pencilrank/unipoly.hpp"

namespace pencilrank {

ModuleRep::ModuleRep(ModuleKind kind, MatrixTuple tuple) : kind_(kind), tuple_(std::move(tuple)) {
  if (kind_ == ModuleKind::FreeAlgebra && !tuple_.is_square())
    throw NonSquare("free-algebra modules come from square tuples");
}

std::size_t ModuleRep::dimension() const {
  return kind_ == ModuleKind::FreeAlgebra ? tuple_.p() : tuple_.p() + tuple_.q();
}

Matrix ModuleRep::vertex_projection() const {
  const std::size_t d = dimension();
  Matrix e(field(), d, d);
  const std::size_t top = kind_ == ModuleKind::FreeAlgebra ? d : tuple_.p();
  for (std::size_t i = 0; i < top; ++i) e(i, i) = field().one();
  return e;
}

std::vector<Matrix> ModuleRep::action() const {
  if (kind_ == ModuleKind::FreeAlgebra) return tuple_.matrices();
  std::vector<Matrix> out{vertex_projection()};
  const std::size_t d = dimension();
  for (const auto& c : tuple_.matrices()) {
    Matrix y(field(), d, d);
    y.set_block(0, tuple_.p(), c);
    out.push_back(std::move(y));
  }
  return out;
}

ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b) {
  if (a.kind() != b.kind()) throw PreconditionViolation("direct sum of modules of different kinds");
  return ModuleRep(a.kind(), direct_sum(a.tuple(), b.tuple()));
}

namespace {

void check_pair(const ModuleRep& c, const ModuleRep& a) {
  if (c.kind() != a.kind()) throw PreconditionViolation("modules of different kinds");
  if (c.field() != a.field()) throw FieldMismatch("modules over different fields");
  if (c.tuple().m() != a.tuple().m()) throw DimensionMismatch("modules over different numbers of generators");
}

}  // namespace

Matrix hom_matricization(const ModuleRep& c, const ModuleRep& a) {
  check_pair(c, a);
  const Field& k = c.field();
  const std::size_t m = c.tuple().m();
  if (c.kind() == ModuleKind::FreeAlgebra) {
    const std::size_t t = c.tuple().p(), n = a.tuple().p();
    Matrix out(k, m * t * n, t * n);
    const Matrix it = Matrix::identity(k, t), in = Matrix::identity(k, n);
    for (std::size_t i = 0; i < m; ++i)
      out.set_block(i * t * n, 0, kron(it, a.tuple()[i]) - kron(c.tuple()[i].transpose(), in));
    return out;
  }
  const std::size_t r = c.tuple().p(), s = c.tuple().q();
  const std::size_t p = a.tuple().p(), q = a.tuple().q();
  Matrix out(k, m * p * s, q * s + p * r);
  const Matrix is = Matrix::identity(k, s), ip = Matrix::identity(k, p);
  for (std::size_t i = 0; i < m; ++i) {
    out.set_block(i * p * s, 0, kron(is, a.tuple()[i]));
    out.set_block(i * p * s, q * s, -kron(c.tuple()[i].transpose(), ip));
  }
  return out;
}

std::size_t dim_hom(const ModuleRep& c, const ModuleRep& a) {
  const Matrix h = hom_matricization(c, a);
  return h.cols() - rank(h);
}

std::vector<Matrix> hom_basis(const ModuleRep& c, const ModuleRep& a) {
  const Matrix ker = kernel_basis(hom_matricization(c, a));
  std::vector<Matrix> out;
  if (c.kind() == ModuleKind::FreeAlgebra) {
    const std::size_t t = c.tuple().p(), n = a.tuple().p();
    for (std::size_t j = 0; j < ker.cols(); ++j) out.push_back(unvec(ker.column(j), n, t));
    return out;
  }
  const std::size_t r = c.tuple().p(), s = c.tuple().q();
  const std::size_t p = a.tuple().p(), q = a.tuple().q();
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    const Matrix col = ker.column(j);
    Matrix map(c.field(), p + q, r + s);
    map.set_block(0, 0, unvec(col.block(q * s, 0, p * r, 1), p, r));
    map.set_block(p, r, unvec(col.block(0, 0, q * s, 1), q, s));
    out.push_back(std::move(map));
  }
  return out;
}

EndAlgebra end_algebra(const ModuleRep& m) {
  const Field& k = m.field();
  if (k.is_prime_field() && k.characteristic() <= m.dimension())
    throw CharacteristicTooSmall("trace-form radical needs characteristic above the module dimension");
  EndAlgebra e;
  e.basis = hom_basis(m, m);
  const std::size_t b = e.basis.size();
  Matrix gram(k, b, b);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = i; j < b; ++j) {
      // tr(XY) without forming XY.
      Scalar t = k.zero();
      const Matrix& x = e.basis[i];
      const Matrix& y = e.basis[j];
      for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < x.cols(); ++c)
          if (!x(r, c).is_zero() && !y(c, r).is_zero()) t += x(r, c) * y(c, r);
      gram(i, j) = t;
      gram(j, i) = t;
    }
  const Matrix ker = kernel_basis(gram);
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    Matrix x(k, m.dimension(), m.dimension());
    for (std::size_t i = 0; i < b; ++i)
      if (!ker(i, j).is_zero()) x += ker(i, j) * e.basis[i];
    e.radical_basis.push_back(std::move(x));
  }
  return e;
}

Matrix graded_basis(const ModuleRep& m, const Matrix& spanning) {
  if (m.kind() == ModuleKind::FreeAlgebra) return column_basis(spanning);
  const std::size_t r = m.tuple().p(), s = m.tuple().q();
  const Matrix top = column_basis(spanning.block(0, 0, r, spanning.cols()));
  const Matrix bottom = column_basis(spanning.block(r, 0, s, spanning.cols()));
  Matrix out(m.field(), r + s, top.cols() + bottom.cols());
  out.set_block(0, 0, top);
  out.set_block(r, top.cols(), bottom);
  return out;
}

namespace {

Matrix solve_exact(const Matrix& w, const Matrix& rhs) {
  SolveResult s = solve(w, rhs);
  if (!s.consistent) throw InternalError("subspace is not invariant under the action");
  return std::move(s.solution);
}

}  // namespace

ModuleRep compress(const ModuleRep& m, const Matrix& w) {
  const Field& k = m.field();
  std::vector<Matrix> induced;
  if (m.kind() == ModuleKind::FreeAlgebra) {
    for (const auto& c : m.tuple().matrices()) induced.push_back(solve_exact(w, c * w));
    return ModuleRep::free_algebra(MatrixTuple(k, w.cols(), w.cols(), std::move(induced)));
  }
  const std::size_t r = m.tuple().p(), s = m.tuple().q();
  std::size_t top = 0;
  while (top < w.cols() && w.block(r, top, s, 1).is_zero()) ++top;
  const std::size_t bottom = w.cols() - top;
  const Matrix wt = w.block(0, 0, r, top);
  const Matrix wb = w.block(r, top, s, bottom);
  if (!w.block(0, top, r, bottom).is_zero()) throw InternalError("basis is not graded");
  for (const auto& c : m.tuple().matrices()) induced.push_back(solve_exact(wt, c * wb));
  return ModuleRep::kronecker(MatrixTuple(k, top, bottom, std::move(induced)));
}

Submodule radical_submodule(const ModuleRep& m, const EndAlgebra& e) {
  const std::size_t d = m.dimension();
  Matrix spanning(m.field(), d, 0);
  if (!e.radical_basis.empty()) spanning = hstack(e.radical_basis);
  Matrix w = graded_basis(m, spanning);
  return {compress(m, w), std::move(w)};
}

namespace {

std::size_t lifting_bound(std::size_t dim) {
  return static_cast<std::size_t>(std::bit_width(dim)) + 2;
}

// Idempotent in k[phi] lifting the f-primary projection modulo nilpotents.
Matrix split_idempotent(const Matrix& phi, const UniPoly& f, const UniPoly& g) {
  const ExtendedGcd eg = extended_gcd(f, g);
  if (!eg.gcd.is_one()) throw InternalError("factors are not coprime");
  Matrix e = evaluate(eg.t * g, phi);
  const Field& k = phi.field();
  const Scalar two = k.from_int(2), three = k.from_int(3);
  for (std::size_t it = 0; it <= lifting_bound(phi.rows()); ++it) {
    const Matrix e2 = e * e;
    if (e2 == e) return e;
    e = three * e2 - two * (e2 * e);
  }
  throw InternalError("idempotent lifting did not converge");
}

struct Node {
  ModuleRep module;
  Matrix embedding;
};

// Candidate endomorphism number `attempt` for the splitting search.
Matrix candidate_endomorphism(const EndAlgebra& e, std::size_t attempt, Rng& rng, std::size_t dim) {
  const std::size_t b = e.basis.size();
  if (attempt < b) return e.basis[attempt];
  attempt -= b;
  if (attempt < b * (b - 1) / 2) {
    std::size_t i = 0;
    while (attempt >= b - 1 - i) {
      attempt -= b - 1 - i;
      ++i;
    }
    return e.basis[i] + e.basis[i + 1 + attempt];
  }
  const Field& k = e.basis[0].field();
  Matrix x(k, dim, dim);
  const auto bound = static_cast<std::int64_t>(2 * dim);
  for (const auto& y : e.basis) x += random_scalar(k, rng, bound) * y;
  return x;
}

}  // namespace

Decomposition decompose(const ModuleRep& m, const DecomposeOptions& options) {
  const Field& k = m.field();
  if (k.is_prime_field() && k.characteristic() <= m.dimension())
    throw CharacteristicTooSmall("decomposition needs characteristic above the module dimension");
  Rng rng(options.seed);
  Decomposition out;
  std::vector<Node> work;
  work.push_back({m, Matrix::identity(k, m.dimension())});
  while (!work.empty()) {
    Node node = std::move(work.back());
    work.pop_back();
    const std::size_t dim = node.module.dimension();
    if (dim == 0) continue;
    const EndAlgebra e = end_algebra(node.module);
    if (e.semisimple_dimension() == 1) {
      out.summands.push_back({node.module, node.embedding});
      continue;
    }
    bool resolved = false;
    for (std::size_t attempt = 0; attempt < options.attempts_per_node && !resolved; ++attempt) {
      const Matrix phi = candidate_endomorphism(e, attempt, rng, dim);
      const UniPoly s = squarefree_part(minimal_polynomial(phi));
      const FactorList factors = factor(s, {rng.next(), 64});
      if (factors.size() >= 2) {
        const UniPoly& f = factors[0].first;
        const Matrix idem = split_idempotent(phi, f, s / f);
        const Matrix id = Matrix::identity(k, dim);
        for (const Matrix& proj : {idem, id - idem}) {
          const Matrix w = graded_basis(node.module, proj);
          work.push_back({compress(node.module, w), node.embedding * w});
        }
        resolved = true;
      } else if (factors.size() == 1 && static_cast<std::size_t>(factors[0].first.degree()) ==
                                             e.semisimple_dimension()) {
        // k[phi] maps onto End/rad, which is then a field: End is local.
        out.summands.push_back({node.module, node.embedding});
        resolved = true;
      }
    }
    if (!resolved) {
      out.summands.push_back({node.module, node.embedding});
      out.certified = false;
    }
  }
  std::stable_sort(out.summands.begin(), out.summands.end(), [](const Submodule& a, const Submodule& b) {
    return a.module.dimension() < b.module.dimension();
  });
  return out;
}

std::optional<Matrix> sample_invertible_hom(const ModuleRep& c, const ModuleRep& a, Rng& rng,
                                            std::size_t trials) {
  check_pair(c, a);
  if (c.tuple().p() != a.tuple().p() || c.tuple().q() != a.tuple().q()) return std::nullopt;
  const std::vector<Matrix> basis = hom_basis(c, a);
  if (basis.empty()) return c.dimension() == 0 ? std::optional<Matrix>(Matrix(c.field(), 0, 0)) : std::nullopt;
  const std::size_t dim = c.dimension();
  const auto bound = static_cast<std::int64_t>(2 * std::max<std::size_t>(dim, 1));
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix x(c.field(), dim, dim);
    for (const auto& b : basis) x += random_scalar(c.field(), rng, bound) * b;
    if (!det(x).is_zero()) return x;
  }
  return std::nullopt;
}

}  // namespace pencilrank
