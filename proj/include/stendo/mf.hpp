#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "stendo/groebner.hpp"

namespace stendo {

// Rank-1 matrix factorization of f = f_1...f_n, stored as the subset of
// factor indices making up g (the complement gives g'). The swap syzygy
// exchanges the subset with its complement.
struct MF1 {
  std::vector<int> subset;  // sorted ascending
  bool operator==(const MF1& o) const { return subset == o.subset; }
};

// Context for a fixed factor list: pairwise non-associate irreducible
// factors supplied by the caller (irreducibility asserted, not verified).
class MFRing {
 public:
  MFRing(Fp F, std::vector<Poly2> factors, bool nonstandard_acknowledged = false);

  const Fp& field() const { return F_; }
  int nfactors() const { return static_cast<int>(factors_.size()); }
  const std::vector<Poly2>& factors() const { return factors_; }
  const Poly2& f() const { return f_; }

  Poly2 product_of(const std::vector<int>& subset) const;
  Poly2 g_of(const MF1& m) const { return product_of(m.subset); }
  Poly2 gprime_of(const MF1& m) const { return product_of(complement(m.subset)); }
  std::vector<int> complement(const std::vector<int>& subset) const;

  MF1 object(std::vector<int> subset) const;
  MF1 swap(const MF1& m) const { return object(complement(m.subset)); }
  // Stably zero objects: the free module (full subset) and the zero module
  // (empty subset).
  bool is_stably_zero(const MF1& m) const {
    return m.subset.empty() || static_cast<int>(m.subset.size()) == nfactors();
  }

 private:
  Fp F_;
  std::vector<Poly2> factors_;
  Poly2 f_;
};

using MFRingPtr = std::shared_ptr<const MFRing>;

// The objects S/(f_1...f_i) for i = 1..n; the last one is free.
std::vector<MF1> bikr_tilting(const MFRingPtr& R);

// Stable Hom(M, N) of rank-1 factorizations: maps are multiplications by
// alpha in (h : g) = (c), null-homotopic ones by alpha in (h, g'_src), so the
// quotient is S/((h, g'_src) : c) with alpha = a*c. Finite because f is
// squarefree (checked by the basis computation).
class StableMF1Hom {
 public:
  StableMF1Hom(const MFRingPtr& R, const MF1& src, const MF1& dst);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Mono>& basis_monomials() const { return basis_; }
  const Poly2& c() const { return c_; }
  // multiplier representing basis element t
  Poly2 rep(int t) const;
  // coordinates of the class of the chain map "multiply by alpha"
  // (requires c | alpha, which holds for every chain map)
  std::vector<uint32_t> coords_of_multiplier(const Poly2& alpha) const;

 private:
  MFRingPtr R_;
  Poly2 c_;
  GroebnerBasis ideal_;  // ((h, g'_src) : c)
  std::vector<Mono> basis_;
};

// Degree-bounded chain-maps-mod-homotopies dimension: an independent oracle
// for StableMF1Hom. The stabilized version doubles D until two consecutive
// answers agree (cap 64), per the calling convention.
int brute_hom_bounded(const MFRingPtr& R, const MF1& src, const MF1& dst, int D);
std::optional<int> brute_hom_stabilized(const MFRingPtr& R, const MF1& src, const MF1& dst);

// True iff (fi, fj) is the maximal ideal (x, y): both factors must lie in
// m \ m^2 and the criterion is independence of the linear parts.
bool pair_generates_max_ideal(const Poly2& fi, const Poly2& fj);

}  // namespace stendo
