#include "stendo/fdalgebra.hpp"

#include <algorithm>

namespace stendo {

FDAlgebra::FDAlgebra(Fp F, std::vector<std::vector<std::vector<uint32_t>>> table,
                     std::vector<uint32_t> unit, std::vector<std::string> labels)
    : F_(F), dim_(static_cast<int>(table.size())), unit_(std::move(unit)), labels_(std::move(labels)) {
  STENDO_ASSERT(static_cast<int>(unit_.size()) == dim_, "unit vector length");
  product_.reserve(dim_);
  for (int i = 0; i < dim_; ++i) {
    STENDO_ASSERT(static_cast<int>(table[i].size()) == dim_, "structure constant table shape");
    Matrix M(F_, dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
      STENDO_ASSERT(static_cast<int>(table[i][j].size()) == dim_, "structure constant row length");
      for (int k = 0; k < dim_; ++k) M.at(j, k) = table[i][j][k] % F_.p();
    }
    product_.push_back(std::move(M));
  }
  if (labels_.empty()) {
    for (int i = 0; i < dim_; ++i) labels_.push_back("b" + std::to_string(i));
  }
  verify_associativity_and_unit();
}

std::vector<uint32_t> FDAlgebra::basis_product(int i, int j) const {
  return product_[i].row(j);
}

std::vector<uint32_t> FDAlgebra::mul(const std::vector<uint32_t>& a,
                                     const std::vector<uint32_t>& b) const {
  STENDO_ASSERT(static_cast<int>(a.size()) == dim_ && static_cast<int>(b.size()) == dim_,
                "element length");
  std::vector<uint32_t> out(dim_, 0);
  for (int i = 0; i < dim_; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < dim_; ++j) {
      if (!b[j]) continue;
      uint32_t c = F_.mul(a[i], b[j]);
      const auto r = product_[i].row(j);
      for (int k = 0; k < dim_; ++k)
        if (r[k]) out[k] = F_.add(out[k], F_.mul(c, r[k]));
    }
  }
  return out;
}

Matrix FDAlgebra::left_mul(const std::vector<uint32_t>& a) const {
  Matrix M(F_, dim_, dim_);
  for (int k = 0; k < dim_; ++k) {
    std::vector<uint32_t> ek(dim_, 0);
    ek[k] = 1;
    M.set_row(k, mul(a, ek));
  }
  return M;
}

Matrix FDAlgebra::right_mul(const std::vector<uint32_t>& a) const {
  Matrix M(F_, dim_, dim_);
  for (int k = 0; k < dim_; ++k) {
    std::vector<uint32_t> ek(dim_, 0);
    ek[k] = 1;
    M.set_row(k, mul(ek, a));
  }
  return M;
}

bool FDAlgebra::is_unit_element(const std::vector<uint32_t>& u) const {
  return left_mul(u).invertible();
}

std::optional<std::vector<uint32_t>> FDAlgebra::inverse_element(
    const std::vector<uint32_t>& u) const {
  // v with v*u = 1; in a finite-dimensional unital algebra one-sided
  // inverses are two-sided, but both sides are checked anyway.
  Matrix R = right_mul(u);  // row k = basis_k * u, so v*u = v R
  auto v = solve_left(R, unit_);
  if (!v) return std::nullopt;
  if (mul(*v, u) != unit_ || mul(u, *v) != unit_) return std::nullopt;
  return v;
}

void FDAlgebra::verify_associativity_and_unit() const {
  for (int i = 0; i < dim_; ++i) {
    std::vector<uint32_t> ei(dim_, 0);
    ei[i] = 1;
    if (mul(unit_, ei) != ei || mul(ei, unit_) != ei)
      throw InputError("unit vector does not act as identity");
  }
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) {
      auto ij = basis_product(i, j);
      for (int k = 0; k < dim_; ++k) {
        std::vector<uint32_t> ek(dim_, 0), ei(dim_, 0);
        ek[k] = 1;
        ei[i] = 1;
        if (mul(ij, ek) != mul(ei, basis_product(j, k)))
          throw InputError("structure constants not associative");
      }
    }
}

FDAlgebra FDAlgebra::opposite() const {
  std::vector<std::vector<std::vector<uint32_t>>> table(
      dim_, std::vector<std::vector<uint32_t>>(dim_));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) table[i][j] = basis_product(j, i);
  return FDAlgebra(F_, std::move(table), unit_, labels_);
}

const std::vector<std::vector<uint32_t>>& FDAlgebra::generators() const {
  if (!generators_.empty()) return generators_;
  std::vector<std::vector<uint32_t>> gens;
  if (structure_) {
    for (const auto& e : structure_->idempotents) gens.push_back(e);
    for (const auto& r : structure_->radical_basis) gens.push_back(r);
  } else {
    for (int i = 0; i < dim_; ++i) {
      std::vector<uint32_t> ei(dim_, 0);
      ei[i] = 1;
      gens.push_back(std::move(ei));
    }
  }
  // products of generators must span the algebra
  RowSpace span(F_, dim_);
  span.add(unit_);
  for (const auto& g : gens) span.add(g);
  bool grew = true;
  while (grew && span.dim() < dim_) {
    grew = false;
    Matrix B = span.basis_matrix();
    for (int i = 0; i < B.rows() && span.dim() < dim_; ++i)
      for (const auto& g : gens) {
        if (span.add(mul(B.row(i), g))) grew = true;
        if (span.add(mul(g, B.row(i)))) grew = true;
      }
  }
  STENDO_ASSERT(span.dim() == dim_, "generator set does not generate the algebra");
  generators_ = std::move(gens);
  return generators_;
}

void FDAlgebra::set_generators(std::vector<std::vector<uint32_t>> gens) {
  generators_ = std::move(gens);
}

const FDAlgebra::Structure& FDAlgebra::structure() const {
  if (!structure_) set_structure(radical_and_idempotents(*this));
  return *structure_;
}

std::vector<uint32_t> AlgebraAuto::apply(const Fp& F, const std::vector<uint32_t>& x) const {
  std::vector<uint32_t> out(matrix.cols(), 0);
  for (int i = 0; i < matrix.rows(); ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < matrix.cols(); ++j)
      out[j] = F.add(out[j], F.mul(x[i], matrix.at(i, j)));
  }
  return out;
}

AlgebraAuto AlgebraAuto::identity(const FDAlgebra& A) {
  return AlgebraAuto{Matrix::identity(A.field(), A.dim())};
}

AlgebraAuto AlgebraAuto::compose(const AlgebraAuto& then) const {
  return AlgebraAuto{matrix * then.matrix};
}

void verify_automorphism(const FDAlgebra& A, const AlgebraAuto& sigma) {
  const Fp& F = A.field();
  if (!sigma.matrix.invertible()) throw CheckFailure("automorphism matrix not invertible");
  if (sigma.apply(F, A.unit()) != A.unit()) throw CheckFailure("automorphism does not fix 1");
  int n = A.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<uint32_t> ei(n, 0), ej(n, 0);
      ei[i] = 1;
      ej[j] = 1;
      auto lhs = sigma.apply(F, A.basis_product(i, j));
      auto rhs = A.mul(sigma.apply(F, ei), sigma.apply(F, ej));
      if (lhs != rhs) throw CheckFailure("automorphism not multiplicative");
    }
}

}  // namespace stendo
