#pragma once

#include "stendo/algebra_ops.hpp"
#include "stendo/frob.hpp"

namespace stendo {

// A candidate cluster-tilting configuration: the summand list of T and the
// orthogonality degree d.
struct CTConfig {
  std::shared_ptr<FrobBackend> backend;
  std::vector<ObjId> summands;
  int d = 1;
};

// Validates basic requirements: d >= 1, nonempty T, pairwise non-isomorphic
// summands, and (for degree bookkeeping) which summands are stably zero.
void validate_config(CTConfig& cfg, Rng& rng);

struct RigidityReport {
  bool rigid = true;
  struct Violation {
    int summand_from, summand_to, shift, dim;
  };
  std::vector<Violation> violations;
};
RigidityReport check_rigid(CTConfig& cfg);

struct MaximalityReport {
  bool maximal = true;
  std::vector<int> failures;  // indices into the candidate list
};
MaximalityReport check_maximal(CTConfig& cfg, const std::vector<ObjId>& candidates, Rng& rng);

struct SyzygyClosureReport {
  bool cond_negative_vanishing = false;  // stable Hom(T, T[i]) = 0 for -d < i <= -1
  bool cond_syzygy_closure = false;      // Omega^d T_i isomorphic to a summand
  std::vector<int> syzygy_permutation;   // image summand index (or -1)
};
SyzygyClosureReport syzygy_closure_check(CTConfig& cfg, Rng& rng);

// True iff stable Hom(T, X[i]) = 0 for 1 <= i <= d-1, i != j.
bool ej_membership(CTConfig& cfg, ObjId X, int j);

// The stable endomorphism algebra with its bookkeeping: vertex v corresponds
// to the stably-nonzero summand vertex_summand[v]; basis element t is the
// basis_entries[t]-th basis vector of stable Hom(T_from, T_to).
struct GammaData {
  AlgPtr gamma;                                // absent when T is stably zero
  std::vector<int> vertex_summand;
  struct BasisEntry {
    int from_vertex, to_vertex, local_index;
  };
  std::vector<BasisEntry> basis_entries;

  bool trivial() const { return gamma == nullptr; }
  int vertex_of_summand(int summand) const;
};

struct StableEndResult {
  GammaData gamma;
  std::optional<FDAlgebra> lambda;  // ordinary endomorphism algebra (module backend)
  bool lambda_infinite = false;     // plane-curve backend: End_B(T) is not finite-dimensional
  // projection End(T) -> stable End(T) in basis coordinates (algebra map)
  std::optional<Matrix> lambda_to_gamma;
};
StableEndResult stable_end_algebra(CTConfig& cfg);

// Gamma-element of a backend stable map between summands; and back.
std::vector<uint32_t> gamma_coords_of_map(CTConfig& cfg, const GammaData& gd, const FrobMap& f);
FrobMap map_of_gamma_element(CTConfig& cfg, const GammaData& gd,
                             const std::vector<uint32_t>& elt, int from_vertex, int to_vertex);

// The functor stable Hom(T, X) as a right module over Gamma.
FDModule functor_module(CTConfig& cfg, const GammaData& gd, ObjId X);
// The Gamma-module map stable Hom(T, f) for f : X -> Y.
Matrix functor_map(CTConfig& cfg, const GammaData& gd, const FrobMap& f);

struct TwistData {
  std::vector<int> permutation;       // on stably-nonzero summands
  std::vector<FrobMap> eta;           // Omega^d T_i -> T_perm(i)
  std::optional<AlgebraAuto> sigma;   // on Gamma (absent when Gamma = 0)
  std::optional<int> r;               // least r with sigma^r inner
  int r_bound = 12;
  std::string r_status;               // "certified" or "unknown <= bound"
};
TwistData periodic_object_check(CTConfig& cfg, const GammaData& gd, Rng& rng, int r_bound = 12);

struct QuiverOfAlgebra {
  int vertices = 0;
  std::vector<std::vector<int>> arrow_counts;  // [to][from] = dim e_to (J/J^2) e_from
  int loops_at(int v) const { return arrow_counts[v][v]; }
};
QuiverOfAlgebra quiver_of_gamma(const FDAlgebra& gamma);

// Lemma-style completion of a map to a short exact sequence (reported form).
ExactCompletion complete_to_exact(CTConfig& cfg, const FrobMap& f);

struct RealizeResult {
  ObjId X;
  FrobMap presentation_map;   // f : C1 -> C0
  FrobMap cover_map;          // q : C0 -> X
  FrobMap connecting;         // X -> C1[1]
  bool functor_isomorphic = false;
  bool in_e_dminus1 = false;
};
// Realizes a Gamma-module as stable Hom(T, X) via the cone of a lifted
// minimal presentation. Requires d >= 2.
RealizeResult realize_module(CTConfig& cfg, const GammaData& gd, const FDModule& M, Rng& rng);

struct CertifiedResolution {
  std::vector<ObjId> C;            // C_0 .. C_{d+1}
  std::vector<ObjId> L;            // L_1 .. L_d
  std::vector<int> functor_dims;   // dims of stable Hom(T, C_j)
  std::vector<int> tor_dims;       // homology dims at spots 0..d+1
  bool cert_L_in_E = false;        // (i)
  bool cert_Cd1_in_addT = false;   // (ii)
  bool cert_exactness = false;     // (iii)
  bool cert_tor_vanishing = false; // (iv)
  bool cert_end_kernel = false;    // (v)
  std::vector<Matrix> deltas;      // functor-level differentials D_j -> D_{j-1}
  Matrix eps;                      // augmentation D_0 -> M
  std::vector<std::string> log;
  bool all() const {
    return cert_L_in_E && cert_Cd1_in_addT && cert_exactness && cert_tor_vanishing &&
           cert_end_kernel;
  }
};
// Runs the resolution construction for X in E_{d-1} and certifies it.
// Throws CheckFailure when a certificate fails.
CertifiedResolution certified_resolution(CTConfig& cfg, const GammaData& gd, ObjId X, Rng& rng);

struct CoverResolution {
  std::vector<int> middle_sizes;
  std::vector<int> middle_stable_dims;   // must all be zero
  int left_end_summand = -1;             // Omega^d C lands on this summand
  bool left_end_in_addT = false;
  bool exactness = false;                // evaluated exactness certificate
  bool end_identification = false;       // stable Hom(T, Omega^d C) = e Gamma
  std::vector<std::string> log;
  bool all() const { return left_end_in_addT && exactness && end_identification; }
};
CoverResolution cover_resolution(CTConfig& cfg, const GammaData& gd, int summand, Rng& rng);

}  // namespace stendo
