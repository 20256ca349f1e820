#pragma once

#include <optional>

#include "stendo/repcat.hpp"

namespace stendo {

// Enveloping algebra A^op tensor A. Right modules over it are
// (A,A)-bimodules with m * (a ox b) = a*m*b. Basis element (i,j) is
// basis_i ox basis_j at index i*dim + j.
AlgPtr enveloping(const AlgPtr& A);

// A as a right module over enveloping(A): the regular bimodule.
FDModule regular_bimodule(const AlgPtr& A, const AlgPtr& Ae);

// Linear dual D(A) as a right module over enveloping(A).
FDModule dual_bimodule(const AlgPtr& A, const AlgPtr& Ae);

// A with the left action twisted by sigma: m * (a ox b) = sigma(a)*m*b.
FDModule twisted_bimodule(const AlgPtr& A, const AlgPtr& Ae, const AlgebraAuto& sigma);

// Central block decomposition: A = A_0 x A_s with A_s the product of all
// semisimple blocks.
struct SemisimpleSplit {
  std::optional<FDAlgebra> non_semisimple;  // A_0 (absent when zero)
  std::optional<FDAlgebra> semisimple;      // A_s (absent when zero)
  std::vector<uint32_t> central_idempotent_non_semisimple;  // in A, sums over A_0 blocks
  int num_blocks = 0;
  int num_semisimple_blocks = 0;
};
SemisimpleSplit semisimple_split(const FDAlgebra& A);

// Restriction of A to the corner e*A*e for a central idempotent e.
FDAlgebra central_corner(const FDAlgebra& A, const std::vector<uint32_t>& e);

struct InnerResult {
  enum class Verdict { Inner, NotInner, Inconclusive } verdict;
  std::optional<std::vector<uint32_t>> witness;  // invertible u with sigma(x)*u = u*x
  std::string reason;
  bool inner() const { return verdict == Verdict::Inner; }
};

// Decides whether sigma is conjugation by a unit. Exact obstruction first
// (sigma must fix every projective isomorphism class), then a deterministic
// scan of the twisted-centralizer solution space, then a seeded randomized
// search; never returns a silent negative from the search path.
InnerResult auto_is_inner(const FDAlgebra& A, const AlgebraAuto& sigma, Rng& rng,
                          int trials = 1000);

// The permutation sigma induces on primitive idempotent isomorphism classes
// (indices into structure().idempotents); nullopt when sigma maps some
// idempotent outside the recorded classes.
std::optional<std::vector<int>> idempotent_class_permutation(const FDAlgebra& A,
                                                             const AlgebraAuto& sigma);

struct AlgebraIsoResult {
  enum class Verdict { Yes, No, Inconclusive } verdict;
  std::optional<Matrix> witness;  // basis-change matrix, row convention
  std::string reason;
  bool yes() const { return verdict == Verdict::Yes; }
};

// Searches for an algebra isomorphism A -> B (unital, multiplicative,
// bijective). Invariant screen first; then a seeded randomized search over
// radical-compatible linear maps.
AlgebraIsoResult algebras_isomorphic(const FDAlgebra& A, const FDAlgebra& B, Rng& rng,
                                     int trials = 2000);

}  // namespace stendo
