#include <algorithm>
#include <map>

#include "stendo/fdalgebra.hpp"

namespace stendo {

namespace {

// ---- small univariate helpers over F_p (dense coefficient vectors) ----

using UPoly = std::vector<uint32_t>;  // c[0] + c[1] t + ...

void utrim(UPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly umul(const Fp& F, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
  utrim(c);
  return c;
}

// division with remainder; b monic-normalized internally
std::pair<UPoly, UPoly> udivmod(const Fp& F, UPoly a, UPoly b) {
  utrim(a);
  utrim(b);
  STENDO_ASSERT(!b.empty(), "univariate division by zero");
  uint32_t lead = b.back();
  UPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    uint32_t c = F.div(a.back(), lead);
    size_t shift = a.size() - b.size();
    q[shift] = F.add(q[shift], c);
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
    utrim(a);
  }
  utrim(q);
  return {q, a};
}

uint32_t ueval(const Fp& F, const UPoly& f, uint32_t x) {
  uint32_t acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
  return acc;
}

// ---- elements-of-subalgebra utilities ----

// Minimal polynomial of element a inside the unital span of its powers.
UPoly minimal_polynomial(const FDAlgebra& A, const std::vector<uint32_t>& a,
                         const std::vector<uint32_t>& unit) {
  const Fp& F = A.field();
  int n = A.dim();
  RowSpace pow_span(F, n);
  std::vector<std::vector<uint32_t>> powers;
  std::vector<uint32_t> cur = unit;
  while (true) {
    powers.push_back(cur);
    if (!pow_span.add(cur)) break;
    cur = A.mul(cur, a);
  }
  // last power is dependent: solve for its coordinates over previous powers
  int d = static_cast<int>(powers.size()) - 1;
  Matrix M(F, d, n);
  for (int i = 0; i < d; ++i) M.set_row(i, powers[i]);
  auto coef = solve_left(M, powers[d]);
  STENDO_ASSERT(coef.has_value(), "minimal polynomial solve failed");
  UPoly f(d + 1, 0);
  f[d] = 1;
  for (int i = 0; i < d; ++i) f[i] = F.neg((*coef)[i]);
  return f;
}

// Evaluate polynomial at an algebra element (with the ambient unit).
std::vector<uint32_t> poly_at_element(const FDAlgebra& A, const UPoly& f,
                                      const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& unit) {
  const Fp& F = A.field();
  std::vector<uint32_t> acc(A.dim(), 0);
  for (size_t i = f.size(); i-- > 0;) {
    acc = A.mul(acc, a);
    if (f[i]) {
      for (int k = 0; k < A.dim(); ++k) acc[k] = F.add(acc[k], F.mul(f[i], unit[k]));
    }
  }
  return acc;
}

// ---- radical via the characteristic-p trace conditions ----

// Integer matrices modulo p^(i+1) for the lifted regular representation.
struct IntMat {
  int n;
  std::vector<uint64_t> a;
  uint64_t mod;
  uint64_t& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  uint64_t at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

IntMat imat_mul(const IntMat& A, const IntMat& B) {
  IntMat C{A.n, std::vector<uint64_t>(static_cast<size_t>(A.n) * A.n, 0), A.mod};
  for (int i = 0; i < A.n; ++i)
    for (int k = 0; k < A.n; ++k) {
      uint64_t v = A.at(i, k);
      if (!v) continue;
      for (int j = 0; j < A.n; ++j) C.at(i, j) = (C.at(i, j) + v * B.at(k, j)) % A.mod;
    }
  return C;
}

IntMat imat_pow(IntMat M, uint64_t e) {
  IntMat R{M.n, std::vector<uint64_t>(static_cast<size_t>(M.n) * M.n, 0), M.mod};
  for (int i = 0; i < M.n; ++i) R.at(i, i) = 1 % M.mod;
  while (e) {
    if (e & 1) R = imat_mul(R, M);
    M = imat_mul(M, M);
    e >>= 1;
  }
  return R;
}

uint64_t imat_trace(const IntMat& M) {
  uint64_t t = 0;
  for (int i = 0; i < M.n; ++i) t = (t + M.at(i, i)) % M.mod;
  return t;
}

}  // namespace

std::vector<std::vector<uint32_t>> radical_basis(const FDAlgebra& A) {
  const Fp& F = A.field();
  const uint32_t p = F.p();
  const int n = A.dim();
  if (n == 0) return {};

  // integer lift of left-multiplication matrices of the basis
  auto lift_leftmul = [&](const std::vector<uint32_t>& v, uint64_t mod) {
    Matrix L = A.left_mul(v);
    IntMat M{n, std::vector<uint64_t>(static_cast<size_t>(n) * n, 0), mod};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M.at(i, j) = L.at(i, j) % mod;
    return M;
  };

  int l = 0;
  {
    uint64_t q = 1;
    while (q < static_cast<uint64_t>(n)) {
      q *= p;
      ++l;
    }
  }

  // current subspace, initially everything
  std::vector<std::vector<uint32_t>> V;
  for (int i = 0; i < n; ++i) {
    std::vector<uint32_t> e(n, 0);
    e[i] = 1;
    V.push_back(std::move(e));
  }

  for (int lev = 0; lev <= l && !V.empty(); ++lev) {
    uint64_t pi = 1;
    for (int t = 0; t < lev; ++t) pi *= p;     // p^lev
    uint64_t mod = pi * p;                     // p^(lev+1)
    std::vector<IntMat> LV;
    for (const auto& v : V) LV.push_back(lift_leftmul(v, mod));

    // constraint rows: for each y in V, the map x -> Tr((L_x L_y)^{p^lev})/p^lev
    // is F_p-linear on the current subspace
    std::vector<std::vector<uint32_t>> rows;
    for (size_t yi = 0; yi < V.size(); ++yi) {
      std::vector<uint32_t> row(V.size(), 0);
      bool nonzero = false;
      for (size_t xi = 0; xi < V.size(); ++xi) {
        IntMat prod = imat_mul(LV[xi], LV[yi]);
        uint64_t tr = imat_trace(imat_pow(prod, pi));
        STENDO_ASSERT(tr % pi == 0, "trace divisibility fails in radical computation");
        row[xi] = static_cast<uint32_t>((tr / pi) % p);
        if (row[xi]) nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
    if (rows.empty()) continue;
    Matrix C = rows_to_matrix(F, rows, static_cast<int>(V.size()));
    auto ker = right_kernel(C);
    std::vector<std::vector<uint32_t>> newV;
    for (const auto& k : ker) {
      std::vector<uint32_t> w(n, 0);
      for (size_t t = 0; t < V.size(); ++t) {
        if (!k[t]) continue;
        for (int j = 0; j < n; ++j) w[j] = F.add(w[j], F.mul(k[t], V[t][j]));
      }
      newV.push_back(std::move(w));
    }
    V = std::move(newV);
  }

  // canonicalize
  RowSpace rs(F, n);
  for (const auto& v : V) rs.add(v);
  Matrix B = rs.basis_matrix();
  std::vector<std::vector<uint32_t>> J;
  for (int i = 0; i < B.rows(); ++i) J.push_back(B.row(i));

  // verification: J is a two-sided ideal and nilpotent
  {
    RowSpace span(F, n);
    for (const auto& v : J) span.add(v);
    for (const auto& v : J)
      for (int i = 0; i < n; ++i) {
        std::vector<uint32_t> ei(n, 0);
        ei[i] = 1;
        STENDO_ASSERT(span.contains(A.mul(ei, v)), "radical candidate is not a left ideal");
        STENDO_ASSERT(span.contains(A.mul(v, ei)), "radical candidate is not a right ideal");
      }
    // nilpotency by repeated products J^(2^k)
    std::vector<std::vector<uint32_t>> cur = J;
    int steps = 0;
    while (!cur.empty()) {
      STENDO_ASSERT(++steps <= 16, "radical candidate not nilpotent");
      RowSpace next(F, n);
      for (const auto& a : cur)
        for (const auto& b : cur) next.add(A.mul(a, b));
      Matrix NB = next.basis_matrix();
      cur.clear();
      for (int i = 0; i < NB.rows(); ++i) cur.push_back(NB.row(i));
      if (static_cast<int>(cur.size()) >= n) STENDO_ASSERT(false, "radical power grew");
    }
  }
  return J;
}

namespace {

// Quotient algebra A/J with projection and a section (coordinates on the
// standard positions complementary to the pivots of J).
struct QuotientAlg {
  FDAlgebra S;
  RowSpace Jspace;
  std::vector<int> comp_pos;  // positions of complement coordinates

  std::vector<uint32_t> project(const FDAlgebra& A, const std::vector<uint32_t>& v) const {
    auto r = Jspace.reduce(v);
    std::vector<uint32_t> out(comp_pos.size(), 0);
    for (size_t i = 0; i < comp_pos.size(); ++i) out[i] = r[comp_pos[i]];
    (void)A;
    return out;
  }
  std::vector<uint32_t> lift(const FDAlgebra& A, const std::vector<uint32_t>& s) const {
    std::vector<uint32_t> v(A.dim(), 0);
    for (size_t i = 0; i < comp_pos.size(); ++i) v[comp_pos[i]] = s[i];
    return v;
  }
};

QuotientAlg make_quotient(const FDAlgebra& A, const std::vector<std::vector<uint32_t>>& J) {
  const Fp& F = A.field();
  int n = A.dim();
  QuotientAlg q{FDAlgebra(), RowSpace(F, n), {}};
  for (const auto& v : J) q.Jspace.add(v);
  std::vector<bool> is_piv(n, false);
  Matrix JB = q.Jspace.basis_matrix();
  for (int i = 0; i < JB.rows(); ++i) {
    for (int j = 0; j < n; ++j)
      if (JB.at(i, j)) {
        is_piv[j] = true;
        break;
      }
  }
  for (int j = 0; j < n; ++j)
    if (!is_piv[j]) q.comp_pos.push_back(j);
  int m = static_cast<int>(q.comp_pos.size());
  std::vector<std::vector<std::vector<uint32_t>>> table(m,
                                                        std::vector<std::vector<uint32_t>>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<uint32_t> a(n, 0), b(n, 0);
      a[q.comp_pos[i]] = 1;
      b[q.comp_pos[j]] = 1;
      auto prod = A.mul(a, b);
      auto r = q.Jspace.reduce(prod);
      std::vector<uint32_t> row(m, 0);
      for (int k = 0; k < m; ++k) row[k] = r[q.comp_pos[k]];
      table[i][j] = std::move(row);
    }
  auto unit_r = q.Jspace.reduce(A.unit());
  std::vector<uint32_t> unit(m, 0);
  for (int k = 0; k < m; ++k) unit[k] = unit_r[q.comp_pos[k]];
  q.S = FDAlgebra(F, std::move(table), std::move(unit));
  return q;
}

// Corner algebra e*A*e for an idempotent e, with basis tracking.
struct Corner {
  FDAlgebra B;
  std::vector<std::vector<uint32_t>> basis;  // elements of A spanning eAe
};

Corner make_corner(const FDAlgebra& A, const std::vector<uint32_t>& e) {
  const Fp& F = A.field();
  int n = A.dim();
  RowSpace rs(F, n);
  std::vector<std::vector<uint32_t>> basis;
  for (int i = 0; i < n; ++i) {
    std::vector<uint32_t> ei(n, 0);
    ei[i] = 1;
    auto v = A.mul(A.mul(e, ei), e);
    if (rs.add(v)) basis.push_back(rs.basis_matrix().row(rs.dim() - 1));
  }
  // recompute basis cleanly from the row space (sorted echelon rows)
  basis.clear();
  Matrix B = rs.basis_matrix();
  for (int i = 0; i < B.rows(); ++i) basis.push_back(B.row(i));
  int m = static_cast<int>(basis.size());
  Matrix BM = rs.basis_matrix();
  std::vector<std::vector<std::vector<uint32_t>>> table(m,
                                                        std::vector<std::vector<uint32_t>>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto prod = A.mul(basis[i], basis[j]);
      auto c = rs.coords(prod);
      STENDO_ASSERT(c.has_value(), "corner not closed under multiplication");
      table[i][j] = *c;
    }
  auto eu = rs.coords(e);
  STENDO_ASSERT(eu.has_value(), "corner unit missing");
  Corner out;
  out.B = FDAlgebra(F, std::move(table), *eu);
  out.basis = basis;
  return out;
}

std::vector<uint32_t> corner_to_ambient(const Corner& c, const Fp& F,
                                        const std::vector<uint32_t>& v, int ambient_dim) {
  std::vector<uint32_t> out(ambient_dim, 0);
  for (size_t i = 0; i < c.basis.size(); ++i) {
    if (!v[i]) continue;
    for (int j = 0; j < ambient_dim; ++j) out[j] = F.add(out[j], F.mul(v[i], c.basis[i][j]));
  }
  return out;
}

bool is_commutative(const FDAlgebra& B) {
  for (int i = 0; i < B.dim(); ++i)
    for (int j = i + 1; j < B.dim(); ++j)
      if (B.basis_product(i, j) != B.basis_product(j, i)) return false;
  return true;
}

// Spectral idempotents of element w inside the semisimple algebra B:
// one idempotent per root of the minimal polynomial (with multiplicity
// grouped), plus the remainder piece for the rootless factor if any.
// Returns an empty list when no decomposition arises (0 or 1 pieces).
std::vector<std::vector<uint32_t>> spectral_split(const FDAlgebra& B,
                                                  const std::vector<uint32_t>& w) {
  const Fp& F = B.field();
  UPoly f = minimal_polynomial(B, w, B.unit());
  // collect roots with multiplicities
  std::vector<std::pair<uint32_t, int>> roots;
  UPoly rest = f;
  for (uint32_t r = 0; r < F.p(); ++r) {
    int m = 0;
    while (!rest.empty() && ueval(F, rest, r) == 0) {
      UPoly lin = {F.neg(r), 1};
      auto [q, rem] = udivmod(F, rest, lin);
      STENDO_ASSERT(rem.empty(), "root division");
      rest = q;
      ++m;
    }
    if (m) roots.push_back({r, m});
  }
  utrim(rest);
  int pieces = static_cast<int>(roots.size()) + (rest.size() > 1 ? 1 : 0);
  if (pieces < 2) return {};
  std::vector<std::vector<uint32_t>> idems;
  std::vector<uint32_t> total(B.dim(), 0);
  for (const auto& [r, m] : roots) {
    // g = f / (t-r)^m ; h = g * (g^{-1} mod (t-r)^m); h(w) is the projector
    UPoly g = f;
    UPoly lin = {F.neg(r), 1};
    for (int t = 0; t < m; ++t) {
      auto [q, rem] = udivmod(F, g, lin);
      STENDO_ASSERT(rem.empty(), "primary factor division");
      g = q;
    }
    // invert g modulo (t-r)^m by Newton-like iteration via extended Euclid:
    // here simply find u with u*g = 1 mod (t-r)^m by solving coefficients.
    // (t-r)^m
    UPoly mod_poly = {1};
    for (int t = 0; t < m; ++t) mod_poly = umul(F, mod_poly, lin);
    // brute linear solve for u of degree < m
    int deg = m;
    Matrix M(F, deg, deg);
    // columns: coefficients of (t^k * g mod mod_poly), k = 0..m-1
    for (int k = 0; k < deg; ++k) {
      UPoly tk(k + 1, 0);
      tk[k] = 1;
      auto prod = umul(F, tk, g);
      auto [q2, rem2] = udivmod(F, prod, mod_poly);
      (void)q2;
      rem2.resize(deg, 0);
      for (int i = 0; i < deg; ++i) M.at(i, k) = rem2[i];
    }
    std::vector<uint32_t> one(deg, 0);
    one[0] = 1;
    auto sol = solve_and_kernel(M, one);
    STENDO_ASSERT(sol.particular.has_value(), "coprime factor inversion failed");
    UPoly u = *sol.particular;
    utrim(u);
    UPoly h = umul(F, u, g);
    auto [q3, hred] = udivmod(F, h, f);
    (void)q3;
    auto idem = poly_at_element(B, hred, w, B.unit());
    for (int k = 0; k < B.dim(); ++k) total[k] = F.add(total[k], idem[k]);
    idems.push_back(std::move(idem));
  }
  if (rest.size() > 1) {
    std::vector<uint32_t> last(B.dim(), 0);
    for (int k = 0; k < B.dim(); ++k) last[k] = F.sub(B.unit()[k], total[k]);
    idems.push_back(std::move(last));
  }
  // the pieces must be orthogonal idempotents summing to the unit
  for (size_t i = 0; i < idems.size(); ++i) {
    STENDO_ASSERT(B.mul(idems[i], idems[i]) == idems[i], "spectral piece not idempotent");
    for (size_t j = 0; j < idems.size(); ++j)
      if (i != j)
        STENDO_ASSERT(B.mul(idems[i], idems[j]) == B.zero(), "spectral pieces not orthogonal");
  }
  return idems;
}

// Splits the unit of the semisimple algebra S into primitive orthogonal
// idempotents. Throws InputError when S does not split over F_p.
std::vector<std::vector<uint32_t>> primitive_idempotents_semisimple(const FDAlgebra& S) {
  const Fp& F = S.field();
  std::vector<std::vector<uint32_t>> done;
  std::vector<std::vector<uint32_t>> work = {S.unit()};
  Rng rng(0x5eed);
  int guard = 0;
  while (!work.empty()) {
    STENDO_ASSERT(++guard < 4096, "idempotent splitting did not terminate");
    auto e = work.back();
    work.pop_back();
    Corner c = make_corner(S, e);
    int m = c.B.dim();
    if (m == 1) {
      done.push_back(e);
      continue;
    }
    bool commutative = is_commutative(c.B);
    std::vector<std::vector<uint32_t>> pieces;
    bool saw_nonsplit_witness = false;
    auto try_elem = [&](const std::vector<uint32_t>& w) {
      if (!pieces.empty()) return;
      // skip scalar multiples of the unit
      UPoly f = minimal_polynomial(c.B, w, c.B.unit());
      if (f.size() <= 2) return;  // degree <= 1: scalar
      auto sp = spectral_split(c.B, w);
      if (!sp.empty())
        pieces = sp;
      else if (commutative)
        saw_nonsplit_witness = true;  // irreducible minpoly of degree >= 2
    };
    for (int i = 0; i < m && pieces.empty(); ++i) {
      std::vector<uint32_t> ei(m, 0);
      ei[i] = 1;
      try_elem(ei);
    }
    for (int i = 0; i < m && pieces.empty(); ++i)
      for (int j = i + 1; j < m && pieces.empty(); ++j) {
        std::vector<uint32_t> v(m, 0);
        v[i] = 1;
        v[j] = 1;
        try_elem(v);
        if (pieces.empty()) try_elem(c.B.basis_product(i, j));
      }
    for (int t = 0; t < 1000 && pieces.empty(); ++t) {
      std::vector<uint32_t> v(m);
      for (auto& x : v) x = rng.field_elt(F);
      try_elem(v);
    }
    if (pieces.empty()) {
      if (commutative || saw_nonsplit_witness)
        throw InputError("non-split algebra, extend scalars");
      throw Inconclusive("primitive idempotent search exhausted");
    }
    for (const auto& pc : pieces)
      work.push_back(corner_to_ambient(c, F, pc, S.dim()));
  }
  return done;
}

std::vector<uint32_t> newton_idempotent(const FDAlgebra& A, std::vector<uint32_t> e) {
  const Fp& F = A.field();
  for (int iter = 0; iter < 64; ++iter) {
    auto e2 = A.mul(e, e);
    if (e2 == e) return e;
    auto e3 = A.mul(e2, e);
    // e <- 3e^2 - 2e^3
    std::vector<uint32_t> next(A.dim());
    uint32_t three = F.from_int(3), mtwo = F.from_int(-2);
    for (int k = 0; k < A.dim(); ++k)
      next[k] = F.add(F.mul(three, e2[k]), F.mul(mtwo, e3[k]));
    e = std::move(next);
  }
  STENDO_ASSERT(false, "idempotent lifting did not converge");
  return e;
}

}  // namespace

FDAlgebra::Structure radical_and_idempotents(const FDAlgebra& A) {
  const Fp& F = A.field();
  int n = A.dim();
  FDAlgebra::Structure st;
  if (n == 0) return st;
  st.radical_basis = radical_basis(A);
  QuotientAlg q = make_quotient(A, st.radical_basis);

  // the semisimple quotient must have zero radical (independent re-check)
  {
    auto j2 = radical_basis(q.S);
    STENDO_ASSERT(j2.empty(), "semisimple quotient still has radical");
  }

  auto prim = primitive_idempotents_semisimple(q.S);

  // block partition of primitive idempotents: t ~ u iff e_t S e_u != 0
  int m = static_cast<int>(prim.size());
  std::vector<int> block(m, -1);
  int nblocks = 0;
  auto linked = [&](int t, int u) {
    // dim e_t S e_u > 0 ?
    RowSpace rs(F, q.S.dim());
    for (int i = 0; i < q.S.dim(); ++i) {
      std::vector<uint32_t> ei(q.S.dim(), 0);
      ei[i] = 1;
      auto v = q.S.mul(q.S.mul(prim[t], ei), prim[u]);
      rs.add(v);
    }
    return rs.dim() > 0;
  };
  for (int t = 0; t < m; ++t) {
    if (block[t] >= 0) continue;
    block[t] = nblocks;
    for (int u = 0; u < m; ++u)
      if (block[u] < 0 && (linked(t, u) || linked(u, t))) block[u] = nblocks;
    ++nblocks;
  }

  // Wedderburn verification: each block is a full matrix algebra over F_p.
  // Certified by matrix units: pick connecting elements and check both
  // composites are nonzero scalars; then block dimension must be size^2.
  {
    for (int b = 0; b < nblocks; ++b) {
      std::vector<int> members;
      for (int t = 0; t < m; ++t)
        if (block[t] == b) members.push_back(t);
      int nb = static_cast<int>(members.size());
      // dim of the block subalgebra
      RowSpace rs(F, q.S.dim());
      std::vector<uint32_t> eb(q.S.dim(), 0);
      for (int t : members)
        for (int k = 0; k < q.S.dim(); ++k) eb[k] = F.add(eb[k], prim[t][k]);
      for (int i = 0; i < q.S.dim(); ++i) {
        std::vector<uint32_t> ei(q.S.dim(), 0);
        ei[i] = 1;
        rs.add(q.S.mul(q.S.mul(eb, ei), eb));
      }
      if (rs.dim() != nb * nb) throw InputError("non-split algebra, extend scalars");
      // corner of each primitive idempotent must be one-dimensional
      for (int t : members) {
        Corner ct = make_corner(q.S, prim[t]);
        if (ct.B.dim() != 1) throw InputError("non-split algebra, extend scalars");
      }
    }
  }

  // lift idempotents through the radical, keeping orthogonality by working
  // in shrinking corners
  std::vector<std::vector<uint32_t>> lifted;
  std::vector<uint32_t> f = A.unit();
  for (int t = 0; t < m; ++t) {
    std::vector<uint32_t> rep = q.lift(A, prim[t]);
    std::vector<uint32_t> seed = A.mul(A.mul(f, rep), f);
    auto e = newton_idempotent(A, seed);
    STENDO_ASSERT(q.project(A, e) == prim[t], "lifted idempotent has wrong image");
    lifted.push_back(e);
    for (int k = 0; k < n; ++k) f[k] = F.sub(f[k], e[k]);
  }
  // verification: orthogonal, idempotent, sum to 1
  {
    std::vector<uint32_t> sum(n, 0);
    for (const auto& e : lifted) {
      STENDO_ASSERT(A.mul(e, e) == e, "lifted element not idempotent");
      for (int k = 0; k < n; ++k) sum[k] = F.add(sum[k], e[k]);
    }
    STENDO_ASSERT(sum == A.unit(), "idempotents do not sum to 1");
    for (size_t i = 0; i < lifted.size(); ++i)
      for (size_t j = 0; j < lifted.size(); ++j)
        if (i != j)
          STENDO_ASSERT(A.mul(lifted[i], lifted[j]) == A.zero(), "idempotents not orthogonal");
  }

  st.idempotents = std::move(lifted);
  st.idempotent_block = std::move(block);
  st.num_blocks = nblocks;
  return st;
}

}  // namespace stendo
