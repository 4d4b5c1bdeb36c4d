#include "pencilrank/orbit.hpp"

#include <algorithm>
#include <numeric>

#include "pencilrank/errors.hpp"
#include "pencilrank/module.hpp"
#include "pencilrank/witness_search.hpp"

namespace pencilrank {

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Equivalent:
      return "Equivalent";
    case Decision::NotEquivalent:
      return "NotEquivalent";
    case Decision::Indeterminate:
      return "Indeterminate";
    case Decision::ProbablyInNullCone:
      return "ProbablyInNullCone";
  }
  return "Indeterminate";
}

namespace {

void check_same_shape(const MatrixTuple& a, const MatrixTuple& b) {
  if (a.field() != b.field()) throw FieldMismatch("tuples from different fields");
  if (a.m() != b.m() || a.p() != b.p() || a.q() != b.q()) throw DimensionMismatch("tuples differ in shape");
}

void require_verified(const Verdict& v, const MatrixTuple& a, const MatrixTuple& b, Action action,
                      std::optional<InvolutionKind> inv = std::nullopt) {
  const std::string problem = verify_verdict(v, a, b, action, inv);
  if (!problem.empty()) throw InternalError("verdict failed re-verification: " + problem);
}

Matrix blowup(const RectPencil& t, const MatrixTuple& a) { return evaluate_homogeneous(t, a); }

std::vector<std::size_t> blowup_sizes(std::size_t n) {
  if (n <= 1) return {1};
  return {n - 1, n};
}

}  // namespace

Verdict similar(const MatrixTuple& a, const MatrixTuple& b, const SimilarOptions& options) {
  check_same_shape(a, b);
  if (!a.is_square()) throw NonSquare("similarity needs square tuples");
  Rng rng(options.seed);
  Verdict v;
  const ModuleRep ma = ModuleRep::free_algebra(a), mb = ModuleRep::free_algebra(b);
  if (a == b) {
    v.decision = Decision::Equivalent;
    v.p = Matrix::identity(a.field(), a.p());
  } else if (auto p = sample_invertible_hom(ma, mb, rng, options.samples)) {
    v.decision = Decision::Equivalent;
    v.p = std::move(*p);
  } else {
    SimilaritySearch s = find_similarity_witness(a, b, rng.fork());
    if (s.outcome == SearchOutcome::Witness) {
      v.decision = Decision::NotEquivalent;
      v.linear_witness = std::move(s.pencil);
      v.rank_a = s.rank_a;
      v.rank_b = s.rank_b;
      v.note = "witness from a candidate module of dimension " + std::to_string(s.candidate->p());
    } else if (s.outcome == SearchOutcome::Equivalent) {
      v.decision = Decision::Equivalent;
      v.p = std::move(s.certificate);
    } else {
      v.note = "no separating candidate and no invertible intertwiner found";
    }
  }
  require_verified(v, a, b, Action::Similarity);
  return v;
}

Verdict glr_equivalent(const MatrixTuple& a, const MatrixTuple& b, const SimilarOptions& options) {
  check_same_shape(a, b);
  Rng rng(options.seed);
  Verdict v;
  const ModuleRep na = ModuleRep::kronecker(a), nb = ModuleRep::kronecker(b);
  if (a == b) {
    v.decision = Decision::Equivalent;
    v.p = Matrix::identity(a.field(), a.p());
    v.q = Matrix::identity(a.field(), a.q());
  } else if (auto x = sample_invertible_hom(na, nb, rng, options.samples)) {
    v.decision = Decision::Equivalent;
    v.p = x->block(0, 0, a.p(), a.p());
    v.q = invert(x->block(a.p(), a.p(), a.q(), a.q()));
  } else {
    LeftRightSearch s = find_left_right_witness(a, b, rng.fork());
    if (s.outcome == SearchOutcome::Witness) {
      v.decision = Decision::NotEquivalent;
      v.rect_witness = std::move(s.pencil);
      v.rank_a = s.rank_a;
      v.rank_b = s.rank_b;
      v.note = "witness from a candidate module of dimension vector (" + std::to_string(s.candidate->p()) +
               "," + std::to_string(s.candidate->q()) + ")";
    } else if (s.outcome == SearchOutcome::Equivalent) {
      v.decision = Decision::Equivalent;
      v.p = std::move(s.certificate->first);
      v.q = std::move(s.certificate->second);
    } else {
      v.note = "no separating candidate and no invertible intertwiner found";
    }
  }
  require_verified(v, a, b, Action::LeftRight);
  return v;
}

const char* to_string(InvolutionKind k) {
  switch (k) {
    case InvolutionKind::Transpose:
      return "transpose";
    case InvolutionKind::ConjugateTranspose:
      return "conjugate-transpose";
    case InvolutionKind::Symplectic:
      return "symplectic";
  }
  return "transpose";
}

InvolutionKind parse_involution(const std::string& text) {
  if (text == "transpose") return InvolutionKind::Transpose;
  if (text == "conjugate-transpose") return InvolutionKind::ConjugateTranspose;
  if (text == "symplectic") return InvolutionKind::Symplectic;
  throw PreconditionViolation("unknown involution '" + text + "'");
}

Matrix apply_involution(const Matrix& a, InvolutionKind kind) {
  if (!a.is_square()) throw NonSquare("involutions act on square matrices");
  switch (kind) {
    case InvolutionKind::Transpose:
      return a.transpose();
    case InvolutionKind::ConjugateTranspose:
      if (!a.field().has_conjugation()) throw PreconditionViolation("conjugate transpose needs the field Qi");
      return a.conj_transpose();
    case InvolutionKind::Symplectic: {
      const std::size_t n = a.rows();
      if (n % 2 != 0) throw PreconditionViolation("symplectic involution needs even size");
      const Field& k = a.field();
      Matrix j(k, n, n);
      j.set_block(0, n / 2, Matrix::identity(k, n / 2));
      j.set_block(n / 2, 0, -Matrix::identity(k, n / 2));
      return -(j * a.transpose() * j);
    }
  }
  throw PreconditionViolation("unknown involution");
}

MatrixTuple apply_involution(const MatrixTuple& a, InvolutionKind kind) {
  std::vector<Matrix> out;
  for (const auto& x : a.matrices()) out.push_back(apply_involution(x, kind));
  if (a.m() == 0 && kind == InvolutionKind::Symplectic && a.p() % 2 != 0)
    throw PreconditionViolation("symplectic involution needs even size");
  return MatrixTuple(a.field(), a.p(), a.q(), std::move(out));
}

namespace {

MatrixTuple doubled(const MatrixTuple& a, InvolutionKind kind) { return a.concat(apply_involution(a, kind)); }

}  // namespace

Verdict structured_similar(const MatrixTuple& a, const MatrixTuple& b, InvolutionKind kind,
                           const SimilarOptions& options) {
  check_same_shape(a, b);
  Verdict v = similar(doubled(a, kind), doubled(b, kind), options);
  require_verified(v, a, b, Action::Structured, kind);
  return v;
}

std::optional<RectPencil> nonsingular_blowup(const MatrixTuple& a, std::size_t d, const NullconeOptions& options) {
  if (!a.is_square()) throw NonSquare("null-cone test needs a square tuple");
  const Field& k = a.field();
  const std::size_t m = a.m();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Matrix> coeffs(m, Matrix(k, d, d));
    coeffs[i] = Matrix::identity(k, d);
    RectPencil t(k, d, d, std::move(coeffs));
    if (!det(blowup(t, a)).is_zero()) return t;
  }
  Rng rng(options.seed ^ (0x51ed27ULL * (d + 1)));
  const auto n = static_cast<std::int64_t>(a.p());
  for (std::size_t s = 0; s < options.samples; ++s) {
    std::vector<Matrix> coeffs;
    for (std::size_t i = 0; i < m; ++i) {
      Matrix t(k, d, d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) t(r, c) = k.from_int(rng.uniform(-n, n));
      coeffs.push_back(std::move(t));
    }
    RectPencil t(k, d, d, std::move(coeffs));
    if (!det(blowup(t, a)).is_zero()) return t;
  }
  return std::nullopt;
}

NullconeResult nullcone_member(const MatrixTuple& a, const NullconeOptions& options) {
  const std::vector<std::size_t> sizes = blowup_sizes(a.p());
  NullconeOptions per_size = options;
  per_size.samples = (options.samples + sizes.size() - 1) / sizes.size();
  NullconeResult out;
  for (std::size_t d : sizes)
    if (auto t = nonsingular_blowup(a, d, per_size)) {
      out.probably_in_nullcone = false;
      out.certificate = std::move(t);
      return out;
    }
  out.note = "all " + std::to_string(per_size.samples * sizes.size()) +
             " sampled blow-ups were singular; a tuple outside the null cone gives a nonsingular sample with "
             "high probability";
  return out;
}

Verdict sl_equivalent_outside_nullcone(const MatrixTuple& a, const MatrixTuple& b, const SimilarOptions& options) {
  check_same_shape(a, b);
  if (!a.is_square()) throw NonSquare("this test needs square tuples");
  const NullconeOptions nc{options.seed, 32};
  if (nullcone_member(a, nc).probably_in_nullcone || nullcone_member(b, nc).probably_in_nullcone)
    throw PreconditionViolation("tuple appears to lie in the null cone");
  Verdict v = glr_equivalent(a, b, options);
  if (v.decision != Decision::Equivalent) return v;
  for (std::size_t d : blowup_sizes(a.p())) {
    std::optional<RectPencil> t = nonsingular_blowup(a, d, nc);
    if (!t) throw PreconditionViolation("no nonsingular blow-up of size " + std::to_string(d) + " found");
    const Scalar da = det(blowup(*t, a)), db = det(blowup(*t, b));
    if (da != db) {
      Verdict out;
      out.decision = Decision::NotEquivalent;
      out.invariant = InvariantWitness{"blow-up determinant", da, db, std::move(t)};
      require_verified(out, a, b, Action::SpecialOutsideNullcone);
      return out;
    }
    v.determinant_checks.push_back(std::move(*t));
  }
  require_verified(v, a, b, Action::SpecialOutsideNullcone);
  return v;
}

bool scaling_system_consistent(const MatrixTuple& a) {
  const Field& k = a.field();
  const std::size_t m = a.m(), p = a.p(), q = a.q();
  const std::size_t block = p * q;
  Matrix sys(k, p * p + q * q, m * block);
  const Matrix ip = Matrix::identity(k, p), iq = Matrix::identity(k, q);
  for (std::size_t i = 0; i < m; ++i) {
    sys.set_block(0, i * block, kron(ip, a[i]));
    sys.set_block(p * p, i * block, kron(a[i].transpose(), iq));
  }
  const Matrix rhs = vstack({vec(k.from_int(static_cast<long long>(q)) * ip),
                             vec(k.from_int(static_cast<long long>(p)) * iq)});
  return solve(sys, rhs).consistent;
}

Scalar weighted_determinant(const Matrix& p, const Matrix& q) {
  const std::size_t a = p.rows(), b = q.rows();
  if (a == 0 || b == 0) return p.field().one();
  const std::size_t l = std::lcm(a, b);
  return det(p).pow(static_cast<long long>(l / a)) * det(q).pow(static_cast<long long>(l / b));
}

Verdict sl_equivalent(const MatrixTuple& a, const MatrixTuple& b, const SimilarOptions& options) {
  check_same_shape(a, b);
  Verdict v = glr_equivalent(a, b, options);
  if (v.decision != Decision::Equivalent) return v;
  if (!scaling_system_consistent(a)) {
    v.note = "scaling system inconsistent: a determinant-one block scaling absorbs any scalar";
  } else {
    const Scalar w = weighted_determinant(*v.p, *v.q);
    if (!w.is_one()) {
      v.decision = Decision::NotEquivalent;
      v.invariant = InvariantWitness{"weighted determinant", w, a.field().one(), std::nullopt};
      v.note = "(P, Q) is a GL witness; det(P)^(l/p) det(Q)^(l/q) differs from 1";
    } else {
      v.note = "det(P)^(l/p) det(Q)^(l/q) = 1";
    }
  }
  require_verified(v, a, b, Action::SpecialLeftRight);
  return v;
}

bool lambda_equivalent(const MatrixTuple& a, const Scalar& lambda) {
  if (a.is_zero() || a.p() == 0 || a.q() == 0) return true;
  const std::size_t l = std::lcm(a.p(), a.q());
  if (lambda.pow(static_cast<long long>(l)).is_one()) return true;
  return !lambda.is_zero() && !scaling_system_consistent(a);
}

BlockScaling block_scaling_pair(const Field& field, std::size_t p, std::size_t q, std::size_t k, std::size_t l,
                                const Scalar& mu) {
  if (k > p || l > q) throw DimensionMismatch("block sizes exceed the tuple shape");
  if (mu.is_zero()) throw PreconditionViolation("scaling parameter must be nonzero");
  const auto sp = static_cast<long long>(p), sq = static_cast<long long>(q);
  const auto sk = static_cast<long long>(k), sl = static_cast<long long>(l);
  Matrix d1(field, p, p), d2(field, q, q);
  for (std::size_t i = 0; i < p; ++i) d1(i, i) = mu.pow(i < k ? (sp - sk) * sq : -sk * sq);
  for (std::size_t i = 0; i < q; ++i) d2(i, i) = mu.pow(i < l ? sp * (sl - sq) : sp * sl);
  return {std::move(d1), std::move(d2), mu.pow(sp * sl - sq * sk)};
}

namespace {

LinearPencil pad_pencil(const LinearPencil& sub, const std::vector<std::size_t>& idx, std::size_t m) {
  std::vector<Matrix> coeffs(m + 1, Matrix(sub.field, sub.size(), sub.size()));
  coeffs[0] = sub.coefficients[0];
  for (std::size_t t = 0; t < idx.size(); ++t) coeffs[idx[t] + 1] = sub.coefficients[t + 1];
  return LinearPencil(sub.field, std::move(coeffs));
}

}  // namespace

SubsetVerdict similar_by_subsets(const MatrixTuple& a, const MatrixTuple& b, const SimilarOptions& options) {
  check_same_shape(a, b);
  SubsetVerdict out;
  out.basis = select_spanning_subset(a);
  auto finish = [&](Verdict v, const std::vector<std::size_t>& idx) {
    if (v.linear_witness) v.linear_witness = pad_pencil(*v.linear_witness, idx, a.m());
    if (v.decision == Decision::NotEquivalent) require_verified(v, a, b, Action::Similarity);
    out.verdict = std::move(v);
    return out;
  };
  Verdict base = similar(a.subset(out.basis), b.subset(out.basis), options);
  if (base.decision != Decision::Equivalent) return finish(std::move(base), out.basis);
  for (std::size_t j = 0; j < a.m(); ++j) {
    if (std::find(out.basis.begin(), out.basis.end(), j) != out.basis.end()) continue;
    std::vector<std::size_t> idx = out.basis;
    idx.push_back(j);
    Verdict v = similar(a.subset(idx), b.subset(idx), options);
    if (v.decision != Decision::Equivalent) {
      out.extra_index = j;
      return finish(std::move(v), idx);
    }
  }
  // The base conjugator carries every A_j to B_j once all extended subsets are similar.
  Verdict v;
  v.decision = Decision::Equivalent;
  v.p = std::move(base.p);
  require_verified(v, a, b, Action::Similarity);
  out.verdict = std::move(v);
  return out;
}

namespace {

std::string check_similarity_certificate(const Matrix& p, const MatrixTuple& a, const MatrixTuple& b) {
  if (p.rows() != a.p() || p.cols() != a.p()) return "certificate has the wrong size";
  if (det(p).is_zero()) return "certificate is singular";
  for (std::size_t i = 0; i < a.m(); ++i)
    if (p * a[i] != b[i] * p) return "P A_" + std::to_string(i + 1) + " P^-1 differs from B_" + std::to_string(i + 1);
  return "";
}

std::string check_left_right_certificate(const Verdict& v, const MatrixTuple& a, const MatrixTuple& b) {
  if (!v.p || !v.q) return "left-right certificate needs P and Q";
  if (v.p->rows() != a.p() || v.p->cols() != a.p() || v.q->rows() != a.q() || v.q->cols() != a.q())
    return "certificate has the wrong size";
  if (det(*v.p).is_zero() || det(*v.q).is_zero()) return "certificate is singular";
  for (std::size_t i = 0; i < a.m(); ++i)
    if (*v.p * a[i] * *v.q != b[i]) return "P A_" + std::to_string(i + 1) + " Q differs from B_" + std::to_string(i + 1);
  return "";
}

}  // namespace

std::string verify_verdict(const Verdict& v, const MatrixTuple& a, const MatrixTuple& b, Action action,
                           std::optional<InvolutionKind> involution) {
  check_same_shape(a, b);
  MatrixTuple ea = a, eb = b;
  if (action == Action::Structured) {
    if (!involution) return "structured verdict needs an involution";
    ea = doubled(a, *involution);
    eb = doubled(b, *involution);
  }
  switch (v.decision) {
    case Decision::Indeterminate:
    case Decision::ProbablyInNullCone:
      return "";
    case Decision::Equivalent:
      switch (action) {
        case Action::Similarity:
        case Action::Structured:
          if (!v.p) return "missing certificate";
          return check_similarity_certificate(*v.p, ea, eb);
        case Action::LeftRight:
          return check_left_right_certificate(v, a, b);
        case Action::SpecialLeftRight: {
          if (auto e = check_left_right_certificate(v, a, b); !e.empty()) return e;
          if (!scaling_system_consistent(a)) return "";
          if (!weighted_determinant(*v.p, *v.q).is_one()) return "weighted determinant differs from 1";
          return "";
        }
        case Action::SpecialOutsideNullcone: {
          if (auto e = check_left_right_certificate(v, a, b); !e.empty()) return e;
          std::vector<std::size_t> sizes;
          for (const auto& t : v.determinant_checks) {
            const Scalar da = det(blowup(t, a));
            if (da.is_zero()) return "determinant check is singular on A";
            if (da != det(blowup(t, b))) return "determinant check differs";
            sizes.push_back(t.rows);
          }
          for (std::size_t d : blowup_sizes(a.p()))
            if (std::find(sizes.begin(), sizes.end(), d) == sizes.end())
              return "missing determinant check of size " + std::to_string(d);
          return "";
        }
      }
      return "unknown action";
    case Decision::NotEquivalent: {
      if (v.linear_witness) {
        const std::size_t ra = rank(evaluate_pencil(*v.linear_witness, ea));
        const std::size_t rb = rank(evaluate_pencil(*v.linear_witness, eb));
        if (ra != v.rank_a || rb != v.rank_b) return "stated ranks do not match the pencil";
        if (ra == rb) return "witness ranks coincide";
        return "";
      }
      if (v.rect_witness) {
        const std::size_t ra = rank(evaluate_homogeneous(*v.rect_witness, ea));
        const std::size_t rb = rank(evaluate_homogeneous(*v.rect_witness, eb));
        if (ra != v.rank_a || rb != v.rank_b) return "stated ranks do not match the pencil";
        if (ra == rb) return "witness ranks coincide";
        return "";
      }
      if (v.invariant) {
        const InvariantWitness& w = *v.invariant;
        if (w.value_a == w.value_b) return "invariant values coincide";
        if (w.pencil) {
          if (det(blowup(*w.pencil, a)) != w.value_a || det(blowup(*w.pencil, b)) != w.value_b)
            return "stated determinants do not match the blow-up";
          return "";
        }
        if (action == Action::SpecialLeftRight) {
          if (auto e = check_left_right_certificate(v, a, b); !e.empty()) return e;
          if (!scaling_system_consistent(a)) return "scaling system is inconsistent, so scalars are absorbed";
          if (weighted_determinant(*v.p, *v.q) != w.value_a || !w.value_b.is_one())
            return "stated weighted determinant does not match";
          return "";
        }
        return "invariant cannot be checked for this action";
      }
      return "missing witness";
    }
  }
  return "unknown decision";
}

}  // namespace pencilrank
