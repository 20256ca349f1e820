#pragma once

#include <optional>
#include <vector>

#include "stendo/poly2.hpp"

namespace stendo {

// Element of the free module S^n over S = F_p[x,y].
struct PolyVec {
  std::vector<Poly2> c;

  static PolyVec zero(Fp F, int n) { return PolyVec{std::vector<Poly2>(n, Poly2(F))}; }
  int ncomp() const { return static_cast<int>(c.size()); }
  bool is_zero() const {
    for (const auto& p : c)
      if (!p.is_zero()) return false;
    return true;
  }
};

PolyVec pv_add(const PolyVec& a, const PolyVec& b);
PolyVec pv_sub(const PolyVec& a, const PolyVec& b);
PolyVec pv_scale(const PolyVec& a, uint32_t s, const Fp& F);
PolyVec pv_times_mono(const PolyVec& a, Mono m, uint32_t s, const Fp& F);
PolyVec pv_times_poly(const PolyVec& a, const Poly2& p);

// Module term (component, monomial). Order: grlex on the monomial first,
// then lower component index wins (term-over-position).
struct ModTerm {
  int comp;
  Mono m;
  uint32_t coeff;
};
std::optional<ModTerm> pv_leading(const PolyVec& v);

// Result of dividing f by the list G: f = sum_i q[i] G[i] + r with no term of
// r divisible by the leading term of any G[i] in the same component.
struct PvDivision {
  std::vector<Poly2> q;
  PolyVec r;
};
PvDivision pv_divmod(const PolyVec& f, const std::vector<PolyVec>& G, const Fp& F);

// Buchberger for submodules of S^n. Returns an inter-reduced, monic basis.
std::vector<PolyVec> module_groebner(std::vector<PolyVec> gens, const Fp& F);

// Generators of the syzygy module {v in S^s : sum v_j gens_j = 0}.
// Computed via a tracked basis and pair reductions; every returned vector is
// verified against the input before being returned.
std::vector<PolyVec> syzygies(const std::vector<PolyVec>& gens, const Fp& F);

// Kernel of the S-linear map S^n -> S^m given by an m x n matrix
// (entry (i,j) = M[i][j]); generators of {v : M v = 0}.
std::vector<PolyVec> poly_matrix_kernel(const std::vector<std::vector<Poly2>>& M, const Fp& F,
                                        int ncols);

// The k-space (span_S(K) + H)/H inside S^n/H, assuming it is finite
// dimensional. Basis vectors are normal forms, so they are honest
// representatives of their classes.
class FiniteModQuotient {
 public:
  FiniteModQuotient(Fp F, int ncomp, const std::vector<PolyVec>& H_gens,
                    const std::vector<PolyVec>& K_gens, int dim_budget = 4096);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<PolyVec>& basis() const { return basis_; }
  PolyVec normal_form(const PolyVec& v) const;
  // Coordinates of the class of v in the computed basis; nullopt if the class
  // is outside the span (callers treat that as an internal error).
  std::optional<std::vector<uint32_t>> coords(const PolyVec& v) const;

 private:
  struct Key {  // total order on (comp, mono)
    int comp;
    Mono m;
    bool operator<(const Key& o) const {
      if (!(m == o.m)) return mono_less(m, o.m);
      return comp > o.comp;  // lower component = larger term
    }
    bool operator==(const Key& o) const { return comp == o.comp && m == o.m; }
  };
  struct Reduced {
    std::vector<std::pair<Key, uint32_t>> sparse;  // sorted descending
    PolyVec rep;
  };

  Fp F_;
  int n_;
  std::vector<PolyVec> HG_;
  std::vector<PolyVec> basis_;
  std::vector<Reduced> echelon_;

  std::vector<std::pair<Key, uint32_t>> to_sparse(const PolyVec& v) const;
  PolyVec from_sparse(const std::vector<std::pair<Key, uint32_t>>& sp) const;
  // Reduces sparse vector against echelon_, returns coords used.
  bool reduce_sparse(std::vector<std::pair<Key, uint32_t>>& v, std::vector<uint32_t>* used) const;
};

}  // namespace stendo
