#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stendo/matrix.hpp"

namespace stendo {

struct AlgPtrCaches;  // access token for the per-algebra caches

// Finite-dimensional associative unital algebra over F_p, given by structure
// constants. Elements are coefficient row vectors in the stored basis.
//
// mul follows function-composition order: (a*b) means "apply b, then a", so
// e_i A e_j is spanned by elements with left unit e_i and right unit e_j.
class FDAlgebra {
 public:
  FDAlgebra() = default;
  // table[i][j] = coefficients of basis_i * basis_j
  FDAlgebra(Fp F, std::vector<std::vector<std::vector<uint32_t>>> table,
            std::vector<uint32_t> unit, std::vector<std::string> labels = {});

  const Fp& field() const { return F_; }
  int dim() const { return dim_; }
  const std::vector<uint32_t>& unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::vector<uint32_t> mul(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) const;
  std::vector<uint32_t> basis_product(int i, int j) const;

  // Matrix of x -> a*x in the basis (row-vector convention: x -> x * L(a)
  // would be wrong; here row k of left_mul(a) holds coords of a*basis_k).
  Matrix left_mul(const std::vector<uint32_t>& a) const;
  // Matrix of x -> x*a.
  Matrix right_mul(const std::vector<uint32_t>& a) const;

  bool is_unit_element(const std::vector<uint32_t>& u) const;  // invertible in A
  std::optional<std::vector<uint32_t>> inverse_element(const std::vector<uint32_t>& u) const;

  // Checked on construction for every basis triple; cheap at desk scale.
  void verify_associativity_and_unit() const;

  FDAlgebra opposite() const;

  // Small generating set (unit + idempotents + radical generators when
  // available, otherwise the full basis); products of generators span A.
  const std::vector<std::vector<uint32_t>>& generators() const;
  void set_generators(std::vector<std::vector<uint32_t>> gens);

  // Structural data (filled by radical_and_idempotents; cached here).
  struct Structure {
    std::vector<std::vector<uint32_t>> radical_basis;
    std::vector<std::vector<uint32_t>> idempotents;  // primitive, orthogonal, sum = 1
    // for each idempotent, index of its Wedderburn block in A/J
    std::vector<int> idempotent_block;
    int num_blocks = 0;
  };
  const Structure& structure() const;
  bool has_structure() const { return structure_ != nullptr; }
  void set_structure(Structure s) const { structure_ = std::make_shared<Structure>(std::move(s)); }

  std::vector<uint32_t> zero() const { return std::vector<uint32_t>(dim_, 0); }

 private:
  friend AlgPtrCaches;
  Fp F_;
  int dim_ = 0;
  // product_[i] = matrix M_i with row j = coords of basis_i * basis_j
  std::vector<Matrix> product_;
  std::vector<uint32_t> unit_;
  std::vector<std::string> labels_;
  mutable std::vector<std::vector<uint32_t>> generators_;
  mutable std::shared_ptr<Structure> structure_;
  // caches owned by the object so lifetimes cannot cross algebras
  mutable std::shared_ptr<const FDAlgebra> op_strong_;
  mutable std::weak_ptr<const FDAlgebra> op_weak_;
  mutable std::optional<bool> self_injective_;
};

// Automorphism of A stored as its matrix on the basis (row convention:
// sigma(x) = x * matrix).
struct AlgebraAuto {
  Matrix matrix;

  std::vector<uint32_t> apply(const Fp& F, const std::vector<uint32_t>& x) const;
  static AlgebraAuto identity(const FDAlgebra& A);
  AlgebraAuto compose(const AlgebraAuto& then) const;  // x -> then(this(x))
};

// Verifies unit preservation, multiplicativity on basis pairs, invertibility.
void verify_automorphism(const FDAlgebra& A, const AlgebraAuto& sigma);

// Computes radical basis and a complete set of primitive orthogonal
// idempotents (lifted through the radical); fails with InputError when the
// semisimple quotient does not split over F_p.
FDAlgebra::Structure radical_and_idempotents(const FDAlgebra& A);

// Radical subspace only (Friedl-Ronyai over F_p), verified nilpotent.
std::vector<std::vector<uint32_t>> radical_basis(const FDAlgebra& A);

}  // namespace stendo
