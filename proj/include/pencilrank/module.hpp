#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pencilrank/matrix.hpp"
#include "pencilrank/pencil.hpp"
#include "pencilrank/random.hpp"

namespace pencilrank {

enum class ModuleKind {
  FreeAlgebra,     // square n x n tuple C acting on k^n
  KroneckerQuiver  // r x s tuple C: arrows k^s -> k^r, total space k^r (+) k^s
};

class ModuleRep {
 public:
  ModuleRep(ModuleKind kind, MatrixTuple tuple);
  static ModuleRep free_algebra(MatrixTuple tuple) { return ModuleRep(ModuleKind::FreeAlgebra, std::move(tuple)); }
  static ModuleRep kronecker(MatrixTuple tuple) { return ModuleRep(ModuleKind::KroneckerQuiver, std::move(tuple)); }

  ModuleKind kind() const { return kind_; }
  const MatrixTuple& tuple() const { return tuple_; }
  const Field& field() const { return tuple_.field(); }
  std::size_t dimension() const;

  // Matrices generating the action on the total space. For the quiver these
  // are the vertex idempotent diag(I_r, 0) followed by [[0, C_j], [0, 0]].
  std::vector<Matrix> action() const;
  // Vertex idempotent diag(I_r, 0) for the quiver, identity otherwise.
  Matrix vertex_projection() const;

 private:
  ModuleKind kind_;
  MatrixTuple tuple_;
};

ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b);

// Matrix whose right kernel is Hom(C, A).
//   FreeAlgebra (C: t x t, A: n x n): rows I_t (x) A_i - C_i^t (x) I_n, size m t n x t n.
//   Quiver (C: r x s, A: p x q): [sum (e_i (x) I_s) (x) A_i | stacked(-C_i^t) (x) I_p],
//   size m p s x (q s + p r); unknowns (vec P, vec Q) with Q C_i = A_i P.
Matrix hom_matricization(const ModuleRep& c, const ModuleRep& a);

std::size_t dim_hom(const ModuleRep& c, const ModuleRep& a);

// Basis of Hom(C, A) as maps between total spaces (dim A x dim C); quiver
// homomorphisms are block diagonal diag(Q, P).
std::vector<Matrix> hom_basis(const ModuleRep& c, const ModuleRep& a);

struct EndAlgebra {
  std::vector<Matrix> basis;
  std::vector<Matrix> radical_basis;
  std::size_t semisimple_dimension() const { return basis.size() - radical_basis.size(); }
};

// Radical by the trace-form criterion. Throws CharacteristicTooSmall over F_p
// when p <= dim M.
EndAlgebra end_algebra(const ModuleRep& m);

// Basis (as columns of the total space) of an invariant subspace, adapted to
// the vertex grading for the quiver: vertex-r vectors first.
Matrix graded_basis(const ModuleRep& m, const Matrix& spanning);

// Induced module on the invariant subspace with graded basis w.
ModuleRep compress(const ModuleRep& m, const Matrix& w);

struct Submodule {
  ModuleRep module;
  Matrix embedding;  // columns span the subspace in the parent's coordinates
};

// rad(End M) * M.
Submodule radical_submodule(const ModuleRep& m, const EndAlgebra& e);

struct Decomposition {
  std::vector<Submodule> summands;
  bool certified = true;
};

struct DecomposeOptions {
  std::uint64_t seed = 0;
  std::size_t attempts_per_node = 64;
};

// Splits M into summands by idempotents from endomorphisms. A leaf is
// certified when its endomorphism ring is provably local.
Decomposition decompose(const ModuleRep& m, const DecomposeOptions& options = {});

// Random element of Hom(C, A) invertible as a map, if one is found within
// `trials` samples. Coefficients are drawn from a set of size >= 4 dim.
std::optional<Matrix> sample_invertible_hom(const ModuleRep& c, const ModuleRep& a, Rng& rng,
                                            std::size_t trials);

}  // namespace pencilrank
