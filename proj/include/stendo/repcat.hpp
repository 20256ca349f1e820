#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stendo/fdmodule.hpp"

namespace stendo {

// Basis of Hom_A(M, N) as matrices (solved from the commuting system over a
// generating set of the algebra).
std::vector<Matrix> hom_basis(const FDModule& M, const FDModule& N);

int hom_dim(const FDModule& M, const FDModule& N);

// Projective cover data. The cover is minimal: ker(epi) lies in rad(P)
// (asserted). Summand layout: (idempotent index, multiplicity) pairs in the
// order used to assemble P.
struct CoverResult {
  FDModule P;
  Matrix epi;  // dim(P) x dim(M)
  std::vector<std::pair<int, int>> summands;
};
CoverResult projective_cover(const FDModule& M);

struct EnvelopeResult {
  FDModule I;
  Matrix mono;  // dim(M) x dim(I)
  std::vector<std::pair<int, int>> summands;
};
EnvelopeResult injective_envelope(const FDModule& M);

bool is_projective_module(const FDModule& M);

// Self-injectivity of the algebra: D(A) projective as a right module.
bool is_self_injective(const AlgPtr& A);

// Syzygies. For k > 0 the kernel of the minimal cover, iterated; k < 0 uses
// cosyzygies via duality; k = 0 strips projective summands only when
// strip=true and the algebra is not self-injective (minimal kernels over a
// self-injective algebra carry none).
FDModule syzygy(const FDModule& M, int k);

// Stable map induced by f under the syzygy (k>0) or cosyzygy (k<0) functor.
Matrix syzygy_map(const FDModule& M, const FDModule& N, const Matrix& f, int k,
                  FDModule* outM = nullptr, FDModule* outN = nullptr);

struct ResolutionTrace {
  std::vector<FDModule> terms;          // P_0 .. P_n
  std::vector<Matrix> diff;             // diff[i] : P_{i+1} -> P_i
  Matrix aug;                           // P_0 -> M
  std::vector<int> syzygy_dims;         // dim of ker at each stage
  bool minimal = true;
  std::vector<std::string> certificates;
};

ResolutionTrace minimal_resolution(const FDModule& M, int n);

// Stable Hom: basis of Hom(M,N) modulo maps factoring through a projective
// (equivalently, through the cover of N).
class StableHom {
 public:
  StableHom(const FDModule& M, const FDModule& N);
  int dim() const { return static_cast<int>(rep_basis_.size()); }
  const std::vector<Matrix>& reps() const { return rep_basis_; }
  // Coordinates of the stable class of f.
  std::vector<uint32_t> coords(const Matrix& f) const;
  bool factors_through_projective(const Matrix& f) const;

 private:
  Fp F_;
  int rows_, cols_;
  RowSpace factoring_;
  RowSpace full_;  // factoring + representatives
  std::vector<Matrix> rep_basis_;
  std::vector<int> rep_positions_;  // positions of rep coords in full_
};

struct ExtResult {
  int dim;
  std::vector<Matrix> cocycles;  // maps P_i -> N representing a basis
};
ExtResult ext_group(const FDModule& M, const FDModule& N, int i);

// Tor_i^A(M, N) for a right module M and left module N (N given as a right
// module over the opposite algebra).
int tor_dim(const FDModule& M, const FDModule& N_op, int i);

// P tensor_A N presented as a quotient of the coordinate tensor space:
// representative coordinates comp (positions (r,s) encoded r*dim(N)+s) and
// the relation row space.
struct TensorData {
  RowSpace relations;
  std::vector<int> comp;
  int dim = 0;
};
TensorData tensor_over_algebra(const FDModule& P, const FDModule& N_op);
// Map (P tensor N) -> (P' tensor N') induced by dP : P -> P' and dN : N -> N'.
Matrix tensor_induced(const Fp& F, const TensorData& src, const TensorData& dst,
                      const Matrix& dP, const Matrix& dN);

struct IsoResult {
  enum class Verdict { Yes, No, Inconclusive } verdict;
  std::optional<Matrix> witness;
  std::string reason;
  bool yes() const { return verdict == Verdict::Yes; }
  bool no() const { return verdict == Verdict::No; }
};
IsoResult is_isomorphic(const FDModule& M, const FDModule& N, Rng& rng, int trials = 1000);

// End(M) as an FDAlgebra (product = composition, apply right factor first),
// with the matrix basis returned alongside.
struct EndAlgebra {
  FDAlgebra algebra;
  std::vector<Matrix> basis;
};
EndAlgebra end_algebra(const FDModule& M);

struct Decomposition {
  struct Piece {
    FDModule module;
    int multiplicity;
  };
  std::vector<Piece> pieces;
};
Decomposition decompose(const FDModule& M, Rng& rng);

}  // namespace stendo
