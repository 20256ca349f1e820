#include "stendo/algebra_ops.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <numeric>

namespace stendo {

namespace {

std::vector<uint32_t> unit_vec(int n, int i) {
  std::vector<uint32_t> v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

AlgPtr enveloping(const AlgPtr& A) {
  const Fp& F = A->field();
  int n = A->dim();
  int N = n * n;
  auto id = [&](int i, int j) { return i * n + j; };
  std::vector<std::vector<std::vector<uint32_t>>> table(N, std::vector<std::vector<uint32_t>>(N));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          // (e_i ox e_j)(e_k ox e_l) = (e_k e_i) ox (e_j e_l)
          auto first = A->basis_product(k, i);
          auto second = A->basis_product(j, l);
          std::vector<uint32_t> out(N, 0);
          for (int s = 0; s < n; ++s) {
            if (!first[s]) continue;
            for (int t = 0; t < n; ++t)
              if (second[t]) out[id(s, t)] = F.add(out[id(s, t)], F.mul(first[s], second[t]));
          }
          table[id(i, j)][id(k, l)] = std::move(out);
        }
  std::vector<uint32_t> unit(N, 0);
  for (int s = 0; s < n; ++s) {
    if (!A->unit()[s]) continue;
    for (int t = 0; t < n; ++t)
      if (A->unit()[t]) unit[id(s, t)] = F.add(unit[id(s, t)], F.mul(A->unit()[s], A->unit()[t]));
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) labels.push_back(A->labels()[i] + "(x)" + A->labels()[j]);
  auto Ae = std::make_shared<FDAlgebra>(F, std::move(table), std::move(unit), std::move(labels));

  // structure: rad(A^e) = J ox A + A ox J, idempotents e_a ox e_b
  const auto& st = A->structure();
  FDAlgebra::Structure est;
  {
    RowSpace rad(F, N);
    for (const auto& r : st.radical_basis)
      for (int t = 0; t < n; ++t) {
        std::vector<uint32_t> v1(N, 0), v2(N, 0);
        for (int s = 0; s < n; ++s) {
          if (r[s]) {
            v1[id(s, t)] = r[s];
            v2[id(t, s)] = r[s];
          }
        }
        rad.add(v1);
        rad.add(v2);
      }
    Matrix B = rad.basis_matrix();
    for (int i = 0; i < B.rows(); ++i) est.radical_basis.push_back(B.row(i));
    int s_dim = n - static_cast<int>(st.radical_basis.size());
    STENDO_ASSERT(B.rows() == N - s_dim * s_dim, "enveloping radical dimension");
  }
  int nblocks = st.num_blocks;
  for (size_t a = 0; a < st.idempotents.size(); ++a)
    for (size_t b = 0; b < st.idempotents.size(); ++b) {
      std::vector<uint32_t> e(N, 0);
      const auto& ea = st.idempotents[a];
      const auto& eb = st.idempotents[b];
      for (int s = 0; s < n; ++s) {
        if (!ea[s]) continue;
        for (int t = 0; t < n; ++t)
          if (eb[t]) e[id(s, t)] = F.add(e[id(s, t)], F.mul(ea[s], eb[t]));
      }
      est.idempotents.push_back(std::move(e));
      est.idempotent_block.push_back(st.idempotent_block[a] * nblocks + st.idempotent_block[b]);
    }
  est.num_blocks = nblocks * nblocks;
  // verify the claimed structure cheaply: idempotents + nilpotent ideal
  {
    std::vector<uint32_t> sum(N, 0);
    for (const auto& e : est.idempotents) {
      STENDO_ASSERT(Ae->mul(e, e) == e, "enveloping idempotent fails");
      for (int k = 0; k < N; ++k) sum[k] = F.add(sum[k], e[k]);
    }
    STENDO_ASSERT(sum == Ae->unit(), "enveloping idempotents do not sum to 1");
    RowSpace span(F, N);
    for (const auto& r : est.radical_basis) span.add(r);
    std::vector<std::vector<uint32_t>> cur = est.radical_basis;
    int guard = 0;
    while (!cur.empty()) {
      STENDO_ASSERT(++guard <= 16, "enveloping radical not nilpotent");
      RowSpace next(F, N);
      for (const auto& x : cur)
        for (const auto& y : est.radical_basis) next.add(Ae->mul(x, y));
      Matrix B = next.basis_matrix();
      cur.clear();
      for (int i = 0; i < B.rows(); ++i) cur.push_back(B.row(i));
    }
  }
  Ae->set_structure(std::move(est));
  // generators: g ox 1 and 1 ox g for generators g of A
  {
    std::vector<std::vector<uint32_t>> gens;
    for (const auto& g : A->generators()) {
      std::vector<uint32_t> g1(N, 0), g2(N, 0);
      for (int s = 0; s < n; ++s) {
        if (!g[s]) continue;
        for (int t = 0; t < n; ++t) {
          if (A->unit()[t]) {
            g1[id(s, t)] = F.add(g1[id(s, t)], F.mul(g[s], A->unit()[t]));
            g2[id(t, s)] = F.add(g2[id(t, s)], F.mul(g[s], A->unit()[t]));
          }
        }
      }
      gens.push_back(std::move(g1));
      gens.push_back(std::move(g2));
    }
    Ae->set_generators(std::move(gens));
    Ae->generators();  // runs the span verification
  }
  return Ae;
}

namespace {

FDModule bimodule_from_action(const AlgPtr& A, const AlgPtr& Ae,
                              const std::function<std::vector<uint32_t>(int, int, int)>& act_row) {
  // act_row(i, j, k): image of basis_k of the underlying space under
  // the action of e_i ox e_j
  const Fp& F = A->field();
  int n = A->dim();
  std::vector<Matrix> act;
  act.reserve(Ae->dim());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix M(F, n, n);
      for (int k = 0; k < n; ++k) M.set_row(k, act_row(i, j, k));
      act.push_back(std::move(M));
    }
  return FDModule(Ae, n, std::move(act));
}

}  // namespace

FDModule regular_bimodule(const AlgPtr& A, const AlgPtr& Ae) {
  int n = A->dim();
  return bimodule_from_action(A, Ae, [&](int i, int j, int k) {
    return A->mul(A->mul(unit_vec(n, i), unit_vec(n, k)), unit_vec(n, j));
  });
}

FDModule dual_bimodule(const AlgPtr& A, const AlgPtr& Ae) {
  // (phi * (a ox b))(x) = phi(b * x * a); with phi in dual coordinates the
  // action matrix is the transpose of x -> b*x*a.
  const Fp& F = A->field();
  int n = A->dim();
  std::vector<Matrix> act;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix W(F, n, n);
      for (int m = 0; m < n; ++m)
        W.set_row(m, A->mul(A->mul(unit_vec(n, j), unit_vec(n, m)), unit_vec(n, i)));
      act.push_back(W.transpose());
    }
  return FDModule(Ae, n, std::move(act));
}

FDModule twisted_bimodule(const AlgPtr& A, const AlgPtr& Ae, const AlgebraAuto& sigma) {
  const Fp& F = A->field();
  int n = A->dim();
  return bimodule_from_action(A, Ae, [&](int i, int j, int k) {
    auto si = sigma.apply(F, unit_vec(n, i));
    return A->mul(A->mul(si, unit_vec(n, k)), unit_vec(n, j));
  });
}

namespace {

// corner subalgebra spanned by e*basis*e with coordinate tracking
struct CornerData {
  FDAlgebra B;
  std::vector<std::vector<uint32_t>> basis;
};

CornerData corner_algebra(const FDAlgebra& A, const std::vector<uint32_t>& e) {
  const Fp& F = A.field();
  int n = A.dim();
  RowSpace rs(F, n);
  for (int i = 0; i < n; ++i) rs.add(A.mul(A.mul(e, unit_vec(n, i)), e));
  Matrix B = rs.basis_matrix();
  std::vector<std::vector<uint32_t>> basis;
  for (int i = 0; i < B.rows(); ++i) basis.push_back(B.row(i));
  int m = static_cast<int>(basis.size());
  std::vector<std::vector<std::vector<uint32_t>>> table(m, std::vector<std::vector<uint32_t>>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      auto c = rs.coords(A.mul(basis[i], basis[j]));
      STENDO_ASSERT(c.has_value(), "corner closure");
      table[i][j] = *c;
    }
  auto u = rs.coords(e);
  STENDO_ASSERT(u.has_value(), "corner unit");
  return {FDAlgebra(F, std::move(table), *u), std::move(basis)};
}

}  // namespace

FDAlgebra central_corner(const FDAlgebra& A, const std::vector<uint32_t>& e) {
  return corner_algebra(A, e).B;
}

SemisimpleSplit semisimple_split(const FDAlgebra& A) {
  const Fp& F = A.field();
  int n = A.dim();
  const auto& st = A.structure();
  int m = static_cast<int>(st.idempotents.size());
  // link idempotents when either corner e_a A e_b or e_b A e_a is nonzero
  std::vector<int> comp(m, -1);
  auto corner_dim = [&](int a, int b) {
    RowSpace rs(F, n);
    for (int i = 0; i < n; ++i)
      rs.add(A.mul(A.mul(st.idempotents[a], unit_vec(n, i)), st.idempotents[b]));
    return rs.dim();
  };
  int ncomp = 0;
  for (int a = 0; a < m; ++a) {
    if (comp[a] >= 0) continue;
    // BFS
    std::vector<int> stack = {a};
    comp[a] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int b = 0; b < m; ++b) {
        if (comp[b] >= 0) continue;
        if (corner_dim(x, b) > 0 || corner_dim(b, x) > 0) {
          comp[b] = ncomp;
          stack.push_back(b);
        }
      }
    }
    ++ncomp;
  }
  // block central idempotents, and whether the block meets the radical
  std::vector<std::vector<uint32_t>> block_idem(ncomp, std::vector<uint32_t>(n, 0));
  for (int a = 0; a < m; ++a)
    for (int k = 0; k < n; ++k)
      block_idem[comp[a]][k] = F.add(block_idem[comp[a]][k], st.idempotents[a][k]);
  std::vector<bool> block_semisimple(ncomp, true);
  for (int b = 0; b < ncomp; ++b) {
    for (const auto& r : st.radical_basis) {
      auto crc = A.mul(A.mul(block_idem[b], r), block_idem[b]);
      bool nz = false;
      for (uint32_t x : crc)
        if (x) nz = true;
      if (nz) {
        block_semisimple[b] = false;
        break;
      }
    }
    // verify centrality of the block idempotent
    auto& c = block_idem[b];
    STENDO_ASSERT(A.left_mul(c) == A.right_mul(c), "block idempotent not central");
  }
  SemisimpleSplit out;
  out.num_blocks = ncomp;
  std::vector<uint32_t> c0(n, 0), cs(n, 0);
  for (int b = 0; b < ncomp; ++b) {
    auto& dst = block_semisimple[b] ? cs : c0;
    for (int k = 0; k < n; ++k) dst[k] = F.add(dst[k], block_idem[b][k]);
    if (block_semisimple[b]) ++out.num_semisimple_blocks;
  }
  out.central_idempotent_non_semisimple = c0;
  bool has0 = false, hass = false;
  for (uint32_t x : c0)
    if (x) has0 = true;
  for (uint32_t x : cs)
    if (x) hass = true;
  if (has0) out.non_semisimple = central_corner(A, c0);
  if (hass) out.semisimple = central_corner(A, cs);
  return out;
}

std::optional<std::vector<int>> idempotent_class_permutation(const FDAlgebra& A,
                                                             const AlgebraAuto& sigma) {
  const Fp& F = A.field();
  int n = A.dim();
  const auto& st = A.structure();
  int m = static_cast<int>(st.idempotents.size());
  // class(g) = the Wedderburn block b such that top(gA) is the simple of b:
  // detect via dim(gAe) > dim(gJe) for class representatives e.
  std::map<int, int> rep_of_block;
  for (int t = 0; t < m; ++t)
    if (!rep_of_block.count(st.idempotent_block[t])) rep_of_block[st.idempotent_block[t]] = t;
  auto class_of = [&](const std::vector<uint32_t>& g) -> std::optional<int> {
    std::optional<int> cls;
    for (const auto& [blk, t] : rep_of_block) {
      const auto& e = st.idempotents[t];
      RowSpace gAe(F, n), gJe(F, n);
      for (int i = 0; i < n; ++i) gAe.add(A.mul(A.mul(g, unit_vec(n, i)), e));
      for (const auto& r : st.radical_basis) gJe.add(A.mul(A.mul(g, r), e));
      if (gAe.dim() > gJe.dim()) {
        if (cls) return std::nullopt;  // not primitive-like
        cls = blk;
      }
    }
    return cls;
  };
  std::vector<int> perm(m, -1);
  for (int t = 0; t < m; ++t) {
    auto img = sigma.apply(F, st.idempotents[t]);
    if (A.mul(img, img) != img) return std::nullopt;
    auto cls = class_of(img);
    if (!cls) return std::nullopt;
    perm[t] = *cls;
  }
  return perm;
}

InnerResult auto_is_inner(const FDAlgebra& A, const AlgebraAuto& sigma, Rng& rng, int trials) {
  const Fp& F = A.field();
  int n = A.dim();
  verify_automorphism(A, sigma);
  // exact obstruction: sigma must fix each projective class
  const auto& st = A.structure();
  auto perm = idempotent_class_permutation(A, sigma);
  if (perm) {
    for (size_t t = 0; t < perm->size(); ++t)
      if ((*perm)[t] != st.idempotent_block[t])
        return {InnerResult::Verdict::NotInner, std::nullopt,
                "sigma permutes idempotent classes nontrivially"};
  }
  // twisted centralizer: u with sigma(g)*u = u*g for all generators g
  Matrix stacked(F, n, 0);
  for (const auto& g : A.generators()) {
    Matrix C = A.left_mul(sigma.apply(F, g)) - A.right_mul(g);
    stacked = stacked.hstack(C);
  }
  auto W = left_kernel(stacked);
  if (W.empty())
    return {InnerResult::Verdict::NotInner, std::nullopt, "twisted centralizer is zero"};
  auto try_u = [&](const std::vector<uint32_t>& u) -> bool {
    auto inv = A.inverse_element(u);
    if (!inv) return false;
    // verify sigma(x) = u x u^{-1} on the basis
    for (int i = 0; i < n; ++i) {
      auto lhs = sigma.apply(F, unit_vec(n, i));
      auto rhs = A.mul(A.mul(u, unit_vec(n, i)), *inv);
      if (lhs != rhs) return false;
    }
    return true;
  };
  for (const auto& w : W)
    if (try_u(w)) return {InnerResult::Verdict::Inner, w, "basis witness"};
  int D = static_cast<int>(W.size());
  double total = 1;
  bool small = true;
  for (int t = 0; t < D; ++t) {
    total *= F.p();
    if (total > 2e5) {
      small = false;
      break;
    }
  }
  if (small) {
    std::vector<uint32_t> c(D, 0);
    while (true) {
      int pos = 0;
      while (pos < D && c[pos] + 1 == F.p()) c[pos++] = 0;
      if (pos == D) break;
      ++c[pos];
      std::vector<uint32_t> u(n, 0);
      for (int t = 0; t < D; ++t)
        if (c[t])
          for (int k = 0; k < n; ++k) u[k] = F.add(u[k], F.mul(c[t], W[t][k]));
      if (try_u(u)) return {InnerResult::Verdict::Inner, u, "exhaustive witness"};
    }
    return {InnerResult::Verdict::NotInner, std::nullopt, "exhausted twisted centralizer"};
  }
  for (int t = 0; t < trials; ++t) {
    std::vector<uint32_t> u(n, 0);
    for (const auto& w : W) {
      uint32_t c = rng.field_elt(F);
      if (c)
        for (int k = 0; k < n; ++k) u[k] = F.add(u[k], F.mul(c, w[k]));
    }
    if (try_u(u)) return {InnerResult::Verdict::Inner, u, "randomized witness"};
  }
  return {InnerResult::Verdict::Inconclusive, std::nullopt, "randomized search exhausted"};
}

namespace {

bool verify_algebra_map(const FDAlgebra& A, const FDAlgebra& B, const Matrix& phi) {
  const Fp& F = A.field();
  int n = A.dim();
  if (!phi.invertible()) return false;
  auto apply = [&](const std::vector<uint32_t>& x) {
    std::vector<uint32_t> out(n, 0);
    for (int i = 0; i < n; ++i) {
      if (!x[i]) continue;
      for (int j = 0; j < n; ++j) out[j] = F.add(out[j], F.mul(x[i], phi.at(i, j)));
    }
    return out;
  };
  if (apply(A.unit()) != B.unit()) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto lhs = apply(A.basis_product(i, j));
      auto rhs = B.mul(apply(unit_vec(n, i)), apply(unit_vec(n, j)));
      if (lhs != rhs) return false;
    }
  return true;
}

std::vector<int> radical_power_dims(const FDAlgebra& A) {
  const Fp& F = A.field();
  int n = A.dim();
  std::vector<int> dims;
  std::vector<std::vector<uint32_t>> cur = A.structure().radical_basis;
  while (!cur.empty() && dims.size() < 16) {
    dims.push_back(static_cast<int>(cur.size()));
    RowSpace next(F, n);
    for (const auto& x : cur)
      for (const auto& r : A.structure().radical_basis) next.add(A.mul(x, r));
    Matrix B = next.basis_matrix();
    cur.clear();
    for (int i = 0; i < B.rows(); ++i) cur.push_back(B.row(i));
  }
  return dims;
}

}  // namespace

AlgebraIsoResult algebras_isomorphic(const FDAlgebra& A, const FDAlgebra& B, Rng& rng,
                                     int trials) {
  const Fp& F = A.field();
  if (A.field() != B.field())
    return {AlgebraIsoResult::Verdict::No, std::nullopt, "different fields"};
  if (A.dim() != B.dim()) return {AlgebraIsoResult::Verdict::No, std::nullopt, "dimension"};
  const auto& stA = A.structure();
  const auto& stB = B.structure();
  if (stA.idempotents.size() != stB.idempotents.size())
    return {AlgebraIsoResult::Verdict::No, std::nullopt, "number of idempotents"};
  if (radical_power_dims(A) != radical_power_dims(B))
    return {AlgebraIsoResult::Verdict::No, std::nullopt, "radical filtration"};
  int n = A.dim();
  int m = static_cast<int>(stA.idempotents.size());
  // Cartan-style invariant per vertex pair
  auto corner_dims = [&](const FDAlgebra& X, const FDAlgebra::Structure& st) {
    std::vector<std::vector<int>> d(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        RowSpace rs(F, n);
        for (int i = 0; i < n; ++i)
          rs.add(X.mul(X.mul(st.idempotents[a], unit_vec(n, i)), st.idempotents[b]));
        d[a][b] = rs.dim();
      }
    return d;
  };
  auto dA = corner_dims(A, stA), dB = corner_dims(B, stB);

  // radical corner bases of B for sampling images
  auto radical_corner = [&](const FDAlgebra& X, const FDAlgebra::Structure& st, int a, int b) {
    RowSpace rs(F, n);
    for (const auto& r : st.radical_basis)
      rs.add(X.mul(X.mul(st.idempotents[a], r), st.idempotents[b]));
    std::vector<std::vector<uint32_t>> out;
    Matrix Bm = rs.basis_matrix();
    for (int i = 0; i < Bm.rows(); ++i) out.push_back(Bm.row(i));
    return out;
  };
  // radical generators of A with vertex data: basis of e_a J e_b mod J^2
  struct ArrowGen {
    int a, b;
    std::vector<uint32_t> elt;
  };
  std::vector<ArrowGen> arrowsA;
  {
    // J^2 span
    RowSpace J2(F, n);
    for (const auto& x : stA.radical_basis)
      for (const auto& y : stA.radical_basis) J2.add(A.mul(x, y));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        RowSpace seen = J2;
        for (const auto& r : stA.radical_basis) {
          auto v = A.mul(A.mul(stA.idempotents[a], r), stA.idempotents[b]);
          if (seen.add(v)) arrowsA.push_back({a, b, v});
        }
      }
  }

  // candidate vertex bijections compatible with corner dimensions
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> good_perms;
  do {
    bool ok = true;
    for (int a = 0; a < m && ok; ++a)
      for (int b = 0; b < m && ok; ++b)
        if (dA[a][b] != dB[perm[a]][perm[b]]) ok = false;
    if (ok) good_perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (good_perms.empty())
    return {AlgebraIsoResult::Verdict::No, std::nullopt, "corner dimension profile"};

  for (int trial = 0; trial < trials; ++trial) {
    const auto& pm = good_perms[trial % good_perms.size()];
    // assign images: idempotents by the bijection, arrows randomly in the
    // matching radical corner
    std::vector<std::pair<std::vector<uint32_t>, std::vector<uint32_t>>> assign;
    assign.push_back({A.unit(), B.unit()});
    for (int a = 0; a < m; ++a) assign.push_back({stA.idempotents[a], stB.idempotents[pm[a]]});
    bool feasible = true;
    for (const auto& ar : arrowsA) {
      auto corner = radical_corner(B, stB, pm[ar.a], pm[ar.b]);
      if (corner.empty()) {
        feasible = false;
        break;
      }
      std::vector<uint32_t> img(n, 0);
      bool nz = false;
      for (const auto& c : corner) {
        uint32_t co = rng.field_elt(F);
        if (co) nz = true;
        for (int k = 0; k < n; ++k) img[k] = F.add(img[k], F.mul(co, c[k]));
      }
      if (!nz) {
        feasible = false;
        break;
      }
      assign.push_back({ar.elt, img});
    }
    if (!feasible) continue;
    // close under products, checking linear consistency
    RowSpace dom(F, n);
    std::vector<std::vector<uint32_t>> dom_elts, img_elts;
    bool bad = false;
    auto img_of = [&](const std::vector<uint32_t>& x) -> std::optional<std::vector<uint32_t>> {
      if (dom_elts.empty()) return std::nullopt;
      Matrix D(F, static_cast<int>(dom_elts.size()), n);
      for (size_t i = 0; i < dom_elts.size(); ++i) D.set_row(static_cast<int>(i), dom_elts[i]);
      auto sol = solve_left(D, x);
      if (!sol) return std::nullopt;
      std::vector<uint32_t> out(n, 0);
      for (size_t t = 0; t < sol->size(); ++t) {
        if (!(*sol)[t]) continue;
        for (int k = 0; k < n; ++k) out[k] = F.add(out[k], F.mul((*sol)[t], img_elts[t][k]));
      }
      return out;
    };
    auto push = [&](const std::vector<uint32_t>& x, const std::vector<uint32_t>& fx) {
      if (bad) return;
      if (dom.contains(x)) {
        auto expect = img_of(x);
        if (!expect || *expect != fx) bad = true;
        return;
      }
      dom.add(x);
      dom_elts.push_back(x);
      img_elts.push_back(fx);
    };
    for (const auto& [x, fx] : assign) push(x, fx);
    size_t cursor = 0;
    while (!bad && cursor < dom_elts.size()) {
      auto x = dom_elts[cursor];
      auto fx = img_elts[cursor];
      ++cursor;
      size_t count = dom_elts.size();
      for (size_t j = 0; j < count && !bad; ++j) {
        push(A.mul(x, dom_elts[j]), B.mul(fx, img_elts[j]));
        push(A.mul(dom_elts[j], x), B.mul(img_elts[j], fx));
      }
    }
    if (bad || dom.dim() != n) continue;
    // linear map determined; build matrix and verify fully
    Matrix phi(F, n, n);
    bool solved = true;
    for (int i = 0; i < n; ++i) {
      auto img = img_of(unit_vec(n, i));
      if (!img) {
        solved = false;
        break;
      }
      phi.set_row(i, *img);
    }
    if (!solved) continue;
    if (verify_algebra_map(A, B, phi))
      return {AlgebraIsoResult::Verdict::Yes, phi, "randomized witness"};
  }
  return {AlgebraIsoResult::Verdict::Inconclusive, std::nullopt,
          "randomized search exhausted"};
}

}  // namespace stendo
