#include "stendo/fdmodule.hpp"

namespace stendo {

AlgPtr AlgPtrCaches::opposite(const AlgPtr& A) {
  if (A->op_strong_) return A->op_strong_;
  if (auto back = A->op_weak_.lock()) return back;
  auto op = std::make_shared<FDAlgebra>(A->opposite());
  if (A->has_structure()) {
    FDAlgebra::Structure st = A->structure();  // radical/idempotents coincide
    op->set_structure(std::move(st));
  }
  op->op_weak_ = A;
  A->op_strong_ = op;
  return op;
}

std::optional<bool>& AlgPtrCaches::self_injective(const AlgPtr& A) { return A->self_injective_; }

AlgPtr opposite_of(const AlgPtr& A) { return AlgPtrCaches::opposite(A); }

FDModule::FDModule(AlgPtr alg, int dim, std::vector<Matrix> action_of_basis)
    : alg_(std::move(alg)), dim_(dim), act_(std::move(action_of_basis)) {
  if (act_.empty()) act_.assign(alg_->dim(), Matrix(alg_->field(), dim_, dim_));
  STENDO_ASSERT(static_cast<int>(act_.size()) == alg_->dim(), "action table size");
  verify();
}

Matrix FDModule::action(const std::vector<uint32_t>& a) const {
  Matrix out(field(), dim_, dim_);
  for (int i = 0; i < alg_->dim(); ++i) {
    if (!a[i]) continue;
    out = out + act_[i].scaled(a[i]);
  }
  return out;
}

void FDModule::verify() const {
  if (dim_ == 0) return;
  const Fp& F = field();
  Matrix unit_act = action(alg_->unit());
  STENDO_ASSERT(unit_act == Matrix::identity(F, dim_), "unit does not act as identity");
  for (int i = 0; i < alg_->dim(); ++i)
    for (int j = 0; j < alg_->dim(); ++j) {
      Matrix lhs = act_[i] * act_[j];
      Matrix rhs = action(alg_->basis_product(i, j));
      STENDO_ASSERT(lhs == rhs, "action is not an algebra homomorphism");
    }
}

bool is_module_map(const FDModule& M, const FDModule& N, const Matrix& f) {
  if (f.rows() != M.dim() || f.cols() != N.dim()) return false;
  for (const auto& g : M.algebra()->generators()) {
    if (!(M.action(g) * f == f * N.action(g))) return false;
  }
  return true;
}

FDModule regular_module(const AlgPtr& A) {
  std::vector<Matrix> act;
  act.reserve(A->dim());
  for (int i = 0; i < A->dim(); ++i) {
    std::vector<uint32_t> ei(A->dim(), 0);
    ei[i] = 1;
    act.push_back(A->right_mul(ei));
  }
  return FDModule(A, A->dim(), std::move(act));
}

SubmoduleResult submodule(const FDModule& M, const std::vector<std::vector<uint32_t>>& rows) {
  const Fp& F = M.field();
  RowSpace rs(F, M.dim());
  for (const auto& r : rows) rs.add(r);
  Matrix B = rs.basis_matrix();
  int d = B.rows();
  std::vector<Matrix> act;
  act.reserve(M.algebra()->dim());
  for (int a = 0; a < M.algebra()->dim(); ++a) {
    Matrix out(F, d, d);
    for (int i = 0; i < d; ++i) {
      std::vector<uint32_t> img(M.dim(), 0);
      auto row = B.row(i);
      // row * action
      const Matrix& act_a = M.action_of_basis(a);
      for (int k = 0; k < M.dim(); ++k) {
        if (!row[k]) continue;
        for (int j = 0; j < M.dim(); ++j) img[j] = F.add(img[j], F.mul(row[k], act_a.at(k, j)));
      }
      auto c = rs.coords(img);
      STENDO_ASSERT(c.has_value(), "subspace is not invariant under the action");
      out.set_row(i, *c);
    }
    act.push_back(std::move(out));
  }
  return {FDModule(M.algebra(), d, std::move(act)), B};
}

QuotientResult quotient_module(const FDModule& M, const std::vector<std::vector<uint32_t>>& rows) {
  const Fp& F = M.field();
  RowSpace rs(F, M.dim());
  for (const auto& r : rows) rs.add(r);
  // complement coordinates = non-pivot standard positions
  std::vector<bool> piv(M.dim(), false);
  Matrix B = rs.basis_matrix();
  for (int i = 0; i < B.rows(); ++i)
    for (int j = 0; j < M.dim(); ++j)
      if (B.at(i, j)) {
        piv[j] = true;
        break;
      }
  std::vector<int> comp;
  for (int j = 0; j < M.dim(); ++j)
    if (!piv[j]) comp.push_back(j);
  int d = static_cast<int>(comp.size());
  Matrix P(F, M.dim(), d);
  for (int i = 0; i < M.dim(); ++i) {
    std::vector<uint32_t> ei(M.dim(), 0);
    ei[i] = 1;
    auto r = rs.reduce(ei);
    for (int j = 0; j < d; ++j) P.at(i, j) = r[comp[j]];
  }
  std::vector<Matrix> act;
  for (int a = 0; a < M.algebra()->dim(); ++a) {
    Matrix out(F, d, d);
    for (int i = 0; i < d; ++i) {
      std::vector<uint32_t> rep(M.dim(), 0);
      rep[comp[i]] = 1;
      // rep * action, then project
      std::vector<uint32_t> img(M.dim(), 0);
      const Matrix& act_a = M.action_of_basis(a);
      for (int j = 0; j < M.dim(); ++j) img[j] = act_a.at(comp[i], j);
      auto r = rs.reduce(img);
      for (int j = 0; j < d; ++j) out.at(i, j) = r[comp[j]];
    }
    act.push_back(std::move(out));
  }
  // invariance check: the subspace must be invariant
  for (int a = 0; a < M.algebra()->dim(); ++a) {
    for (int i = 0; i < B.rows(); ++i) {
      std::vector<uint32_t> img(M.dim(), 0);
      const Matrix& act_a = M.action_of_basis(a);
      auto row = B.row(i);
      for (int k = 0; k < M.dim(); ++k) {
        if (!row[k]) continue;
        for (int j = 0; j < M.dim(); ++j) img[j] = F.add(img[j], F.mul(row[k], act_a.at(k, j)));
      }
      STENDO_ASSERT(rs.contains(img), "quotient by non-invariant subspace");
    }
  }
  return {FDModule(M.algebra(), d, std::move(act)), P};
}

SumResult direct_sum(const AlgPtr& A, const std::vector<FDModule>& parts) {
  const Fp& F = A->field();
  int total = 0;
  for (const auto& m : parts) {
    STENDO_ASSERT(m.algebra() == A, "direct sum over mixed algebras");
    total += m.dim();
  }
  std::vector<Matrix> act;
  for (int a = 0; a < A->dim(); ++a) {
    std::vector<Matrix> blocks;
    for (const auto& m : parts) blocks.push_back(m.action_of_basis(a));
    act.push_back(Matrix::block_diag(blocks, F));
  }
  SumResult out{FDModule(A, total, std::move(act)), {}, {}};
  int off = 0;
  for (const auto& m : parts) {
    Matrix inc(F, m.dim(), total), prj(F, total, m.dim());
    for (int i = 0; i < m.dim(); ++i) {
      inc.at(i, off + i) = 1;
      prj.at(off + i, i) = 1;
    }
    out.include.push_back(std::move(inc));
    out.project.push_back(std::move(prj));
    off += m.dim();
  }
  return out;
}

FDModule dual_module(const FDModule& M) {
  AlgPtr op = opposite_of(M.algebra());
  std::vector<Matrix> act;
  act.reserve(op->dim());
  for (int i = 0; i < op->dim(); ++i) act.push_back(M.action_of_basis(i).transpose());
  return FDModule(op, M.dim(), std::move(act));
}

ProjectiveSummand idempotent_projective(const AlgPtr& A, const std::vector<uint32_t>& e) {
  FDModule reg = regular_module(A);
  std::vector<std::vector<uint32_t>> rows;
  for (int i = 0; i < A->dim(); ++i) {
    std::vector<uint32_t> ei(A->dim(), 0);
    ei[i] = 1;
    rows.push_back(A->mul(e, ei));
  }
  auto sub = submodule(reg, rows);
  return {sub.module, sub.embed};
}

}  // namespace stendo
