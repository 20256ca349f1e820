#pragma once

#include <memory>
#include <vector>

#include "stendo/fdalgebra.hpp"

namespace stendo {

using AlgPtr = std::shared_ptr<const FDAlgebra>;

// Per-algebra cache access. The opposite is owned by the original algebra
// (strong pointer one way, weak pointer back) so repeated calls hand out the
// same object and pointer-identity checks on algebras stay meaningful.
struct AlgPtrCaches {
  static AlgPtr opposite(const AlgPtr& A);
  static std::optional<bool>& self_injective(const AlgPtr& A);
};

// Shared opposite-algebra instance (cached per algebra object).
AlgPtr opposite_of(const AlgPtr& A);

// Right module over an FDAlgebra: elements are row vectors, the action of an
// algebra element a is v -> v * action(a), and action(mul(a,b)) =
// action(a) * action(b).
class FDModule {
 public:
  FDModule() = default;
  FDModule(AlgPtr alg, int dim, std::vector<Matrix> action_of_basis);
  static FDModule zero(AlgPtr alg) { return FDModule(std::move(alg), 0, {}); }

  const AlgPtr& algebra() const { return alg_; }
  int dim() const { return dim_; }
  const Fp& field() const { return alg_->field(); }

  // Action matrix of an arbitrary algebra element.
  Matrix action(const std::vector<uint32_t>& a) const;
  const Matrix& action_of_basis(int i) const { return act_[i]; }

  void verify() const;  // unital homomorphism on basis pairs

 private:
  AlgPtr alg_;
  int dim_ = 0;
  std::vector<Matrix> act_;
};

// Module map matrices are dim(src) x dim(dst); composition "f then g" is the
// matrix product f*g.
bool is_module_map(const FDModule& M, const FDModule& N, const Matrix& f);

FDModule regular_module(const AlgPtr& A);

// Submodule spanned by the given rows (checked invariant); also returns the
// embedding matrix (rows = basis of the subspace in ambient coordinates).
struct SubmoduleResult {
  FDModule module;
  Matrix embed;  // dim(sub) x dim(ambient)
};
SubmoduleResult submodule(const FDModule& M, const std::vector<std::vector<uint32_t>>& rows);

// Quotient by an invariant subspace; projection is dim(M) x dim(Q).
struct QuotientResult {
  FDModule module;
  Matrix project;
};
QuotientResult quotient_module(const FDModule& M, const std::vector<std::vector<uint32_t>>& rows);

struct SumResult {
  FDModule module;
  std::vector<Matrix> include;  // summand -> sum
  std::vector<Matrix> project;  // sum -> summand
};
SumResult direct_sum(const AlgPtr& A, const std::vector<FDModule>& parts);

// k-linear dual as a right module over the opposite algebra; coordinates are
// the dual basis, so dual(dual(M)) is M on the nose and the dual of a map is
// its transpose.
FDModule dual_module(const FDModule& M);

// e*A as a right A-module (e an idempotent); basis rows live in A.
struct ProjectiveSummand {
  FDModule module;
  Matrix basis_in_A;  // rows: elements of A spanning e*A
};
ProjectiveSummand idempotent_projective(const AlgPtr& A, const std::vector<uint32_t>& e);

}  // namespace stendo
