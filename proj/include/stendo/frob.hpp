#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stendo/mf.hpp"
#include "stendo/repcat.hpp"

namespace stendo {

using ObjId = int;
using PolyMat = std::vector<std::vector<Poly2>>;

// Stable map between backend objects. Exactly one payload is populated:
// a module-map matrix for the module backend, a chain-map pair (U0, U1)
// for the matrix-factorization backend.
struct FrobMap {
  ObjId src = -1, dst = -1;
  std::optional<Matrix> mod;
  std::optional<std::pair<PolyMat, PolyMat>> mf;
};

struct StableIso {
  bool yes = false;
  bool conclusive = true;
  std::optional<FrobMap> witness;
  std::string reason;
};

// Data reported by complete_to_exact: 0 -> Z -> X (+) P -> Y -> 0.
struct ExactCompletion {
  ObjId Z = -1;
  ObjId P = -1;
  int mid_size = 0;
  FrobMap z_to_x;  // stable class of Z -> X
  std::vector<std::string> certificates;
};

// A Frobenius category presented through its stable structure, together
// with a fixed list of tilting-object summands.
class FrobBackend {
 public:
  virtual ~FrobBackend() = default;

  virtual const Fp& field() const = 0;
  virtual std::string name() const = 0;
  virtual int n_tilting() const = 0;
  virtual ObjId tilting_summand(int i) const = 0;

  virtual bool is_stably_zero(ObjId X) = 0;
  virtual int obj_size(ObjId X) const = 0;  // module dimension / presentation rank
  virtual std::string obj_label(ObjId X) const = 0;
  virtual ObjId zero_object() = 0;
  virtual ObjId sum(const std::vector<ObjId>& parts) = 0;
  // X[k] = Omega^{-k} X; results are cached so handles are stable
  virtual ObjId suspend(ObjId X, int k) = 0;

  virtual int stable_dim(ObjId X, ObjId Y) = 0;
  virtual FrobMap stable_basis_map(ObjId X, ObjId Y, int t) = 0;
  virtual std::vector<uint32_t> stable_coords(const FrobMap& f) = 0;

  virtual FrobMap identity(ObjId X) = 0;
  virtual FrobMap zero_map(ObjId X, ObjId Y) = 0;
  virtual FrobMap add_maps(const FrobMap& f, const FrobMap& g) = 0;
  virtual FrobMap scale_map(const FrobMap& f, uint32_t c) = 0;
  // f then g
  virtual FrobMap compose(const FrobMap& f, const FrobMap& g) = 0;
  virtual FrobMap suspend_map(const FrobMap& f, int k) = 0;

  // Triangle tools. cone(f : X -> Y) completes to X -> Y -> W -> X[1] and
  // returns (W, q : Y -> W, conn : W -> X[1]); cocone(f : X -> Y) returns
  // (Z, g : Z -> X) from the rotated triangle Z -> X -> Y.
  struct ConeResult {
    ObjId obj;
    FrobMap q;
    FrobMap connecting;
  };
  virtual ConeResult cone(const FrobMap& f) = 0;
  struct CoconeResult {
    ObjId obj;
    FrobMap g;
  };
  virtual CoconeResult cocone(const FrobMap& f) = 0;

  virtual ExactCompletion complete_to_exact(const FrobMap& f) = 0;

  virtual StableIso stably_isomorphic(ObjId X, ObjId Y, Rng& rng) = 0;

  // Assembles the map (sum of T_i^{m_i}) -> X out of component maps.
  FrobMap assemble_columns(ObjId src_sum, ObjId dst, const std::vector<FrobMap>& columns);
  // Assembles a map into a sum from maps into its parts.
  FrobMap assemble_rows(ObjId src, ObjId dst_sum, const std::vector<FrobMap>& rows);
  // General block assembly: blocks[u][s] : src_parts[s] -> dst_parts[u].
  FrobMap assemble_block(ObjId src_sum, ObjId dst_sum,
                         const std::vector<std::vector<FrobMap>>& blocks);
};

// mod-A backend over a self-injective algebra.
class ModBackend : public FrobBackend {
 public:
  ModBackend(AlgPtr A, std::vector<FDModule> tilting_summands);

  const Fp& field() const override { return A_->field(); }
  std::string name() const override { return "mod-algebra"; }
  int n_tilting() const override { return static_cast<int>(tilting_.size()); }
  ObjId tilting_summand(int i) const override { return tilting_[i]; }
  const AlgPtr& algebra() const { return A_; }
  const FDModule& module_of(ObjId X) const { return objects_[X]; }
  ObjId store(FDModule M);

  bool is_stably_zero(ObjId X) override;
  int obj_size(ObjId X) const override { return objects_[X].dim(); }
  std::string obj_label(ObjId X) const override;
  ObjId zero_object() override;
  ObjId sum(const std::vector<ObjId>& parts) override;
  ObjId suspend(ObjId X, int k) override;

  int stable_dim(ObjId X, ObjId Y) override;
  FrobMap stable_basis_map(ObjId X, ObjId Y, int t) override;
  std::vector<uint32_t> stable_coords(const FrobMap& f) override;

  FrobMap identity(ObjId X) override;
  FrobMap zero_map(ObjId X, ObjId Y) override;
  FrobMap add_maps(const FrobMap& f, const FrobMap& g) override;
  FrobMap scale_map(const FrobMap& f, uint32_t c) override;
  FrobMap compose(const FrobMap& f, const FrobMap& g) override;
  FrobMap suspend_map(const FrobMap& f, int k) override;

  ConeResult cone(const FrobMap& f) override;
  CoconeResult cocone(const FrobMap& f) override;
  ExactCompletion complete_to_exact(const FrobMap& f) override;
  StableIso stably_isomorphic(ObjId X, ObjId Y, Rng& rng) override;

 private:
  AlgPtr A_;
  std::vector<FDModule> objects_;
  std::vector<ObjId> tilting_;
  std::map<std::pair<ObjId, int>, ObjId> suspend_cache_;
  std::map<std::pair<ObjId, ObjId>, std::shared_ptr<StableHom>> hom_cache_;

  StableHom& stable(ObjId X, ObjId Y);
  // strip projective summands, with stable iso maps both ways
  struct Stripped {
    ObjId obj;
    Matrix to_stripped;    // original -> stripped
    Matrix from_stripped;  // stripped -> original
  };
  Stripped strip(ObjId X);
};

// Matrix-factorization backend for a fixed factor list. Objects are either
// formal sums of rank-1 factorizations or block factorizations produced by
// cones; stable Hom is computed by the colon formula on rank-1 pairs and by
// syzygy/quotient computations when the target is a block.
class MFBackend : public FrobBackend {
 public:
  explicit MFBackend(MFRingPtr R);

  const Fp& field() const override { return R_->field(); }
  std::string name() const override { return "plane-curve-mf"; }
  int n_tilting() const override { return static_cast<int>(tilting_.size()); }
  ObjId tilting_summand(int i) const override { return tilting_[i]; }
  const MFRingPtr& ring() const { return R_; }

  ObjId store_rank1_sum(std::vector<MF1> parts);
  bool is_stably_zero(ObjId X) override;
  int obj_size(ObjId X) const override;
  std::string obj_label(ObjId X) const override;
  ObjId zero_object() override;
  ObjId sum(const std::vector<ObjId>& parts) override;
  ObjId suspend(ObjId X, int k) override;

  int stable_dim(ObjId X, ObjId Y) override;
  FrobMap stable_basis_map(ObjId X, ObjId Y, int t) override;
  std::vector<uint32_t> stable_coords(const FrobMap& f) override;

  FrobMap identity(ObjId X) override;
  FrobMap zero_map(ObjId X, ObjId Y) override;
  FrobMap add_maps(const FrobMap& f, const FrobMap& g) override;
  FrobMap scale_map(const FrobMap& f, uint32_t c) override;
  FrobMap compose(const FrobMap& f, const FrobMap& g) override;
  FrobMap suspend_map(const FrobMap& f, int k) override;

  ConeResult cone(const FrobMap& f) override;
  CoconeResult cocone(const FrobMap& f) override;
  ExactCompletion complete_to_exact(const FrobMap& f) override;
  StableIso stably_isomorphic(ObjId X, ObjId Y, Rng& rng) override;

 private:
  struct MFObj {
    PolyMat phi, psi;                     // phi*psi = psi*phi = f*I
    std::optional<std::vector<MF1>> rk1;  // set when the object is a sum of rank-1s
    int rank() const { return static_cast<int>(phi.size()); }
  };
  // stable-Hom space from one rank-1 source into a block object
  struct BlockHom {
    std::shared_ptr<FiniteModQuotient> quot;
    int rank;  // of the target
  };

  MFRingPtr R_;
  std::vector<MFObj> objects_;
  std::vector<ObjId> tilting_;
  std::map<std::pair<ObjId, int>, ObjId> suspend_cache_;
  std::map<std::pair<ObjId, ObjId>, std::shared_ptr<StableMF1Hom>> rk1_hom_cache_;
  std::map<std::pair<ObjId, ObjId>, BlockHom> block_hom_cache_;

  ObjId store(MFObj obj);
  void verify_mf(const MFObj& o) const;
  // per-summand layout of a rank-1 sum
  const std::vector<MF1>& rk1_of(ObjId X) const;
  bool is_rk1_sum(ObjId X) const { return objects_[X].rk1.has_value(); }
  std::shared_ptr<StableMF1Hom> rk1_hom(ObjId X, ObjId Y, int i, int j);
  BlockHom& block_hom(ObjId T_summand, ObjId W);
};

PolyMat pm_mul(const PolyMat& A, const PolyMat& B, const Fp& F);
PolyMat pm_add(const PolyMat& A, const PolyMat& B);
PolyMat pm_scale(const PolyMat& A, uint32_t c);
PolyMat pm_identity(const Fp& F, int n);
PolyMat pm_zero(const Fp& F, int r, int c);
bool pm_equal(const PolyMat& A, const PolyMat& B);

}  // namespace stendo
