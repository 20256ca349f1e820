#include "stendo/cluster.hpp"

#include <algorithm>
#include <map>

namespace stendo {

namespace {

std::vector<int> nonzero_summands(CTConfig& cfg) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(cfg.summands.size()); ++i)
    if (!cfg.backend->is_stably_zero(cfg.summands[i])) out.push_back(i);
  return out;
}

}  // namespace

void validate_config(CTConfig& cfg, Rng& rng) {
  if (cfg.d < 1) throw InputError("orthogonality degree d must be >= 1");
  if (cfg.summands.empty()) throw InputError("tilting object needs at least one summand");
  auto nz = nonzero_summands(cfg);
  for (size_t a = 0; a < nz.size(); ++a)
    for (size_t b = a + 1; b < nz.size(); ++b) {
      auto iso = cfg.backend->stably_isomorphic(cfg.summands[nz[a]], cfg.summands[nz[b]], rng);
      if (iso.yes)
        throw InputError("tilting summands " + std::to_string(nz[a]) + " and " +
                         std::to_string(nz[b]) + " are isomorphic; use a basic summand list");
    }
}

RigidityReport check_rigid(CTConfig& cfg) {
  RigidityReport rep;
  for (int i = 1; i <= cfg.d - 1; ++i) {
    for (size_t s = 0; s < cfg.summands.size(); ++s) {
      for (size_t t = 0; t < cfg.summands.size(); ++t) {
        ObjId shifted = cfg.backend->suspend(cfg.summands[t], i);
        int dim = cfg.backend->stable_dim(cfg.summands[s], shifted);
        if (dim > 0) {
          rep.rigid = false;
          rep.violations.push_back({static_cast<int>(s), static_cast<int>(t), i, dim});
        }
      }
    }
  }
  return rep;
}

MaximalityReport check_maximal(CTConfig& cfg, const std::vector<ObjId>& candidates, Rng& rng) {
  MaximalityReport rep;
  for (size_t c = 0; c < candidates.size(); ++c) {
    ObjId X = candidates[c];
    bool orthogonal = true;
    for (int i = 1; i <= cfg.d - 1 && orthogonal; ++i) {
      ObjId Xi = cfg.backend->suspend(X, i);
      for (size_t s = 0; s < cfg.summands.size() && orthogonal; ++s) {
        if (cfg.backend->stable_dim(cfg.summands[s], Xi) > 0) orthogonal = false;
        ObjId Ti = cfg.backend->suspend(cfg.summands[s], i);
        if (cfg.backend->stable_dim(X, Ti) > 0) orthogonal = false;
      }
    }
    if (!orthogonal) continue;  // candidate is allowed to be outside add(T)
    // orthogonal candidate must lie in add(T)
    if (cfg.backend->is_stably_zero(X)) continue;
    bool found = false;
    for (size_t s = 0; s < cfg.summands.size() && !found; ++s) {
      auto iso = cfg.backend->stably_isomorphic(X, cfg.summands[s], rng);
      if (iso.yes) found = true;
    }
    if (!found) {
      rep.maximal = false;
      rep.failures.push_back(static_cast<int>(c));
    }
  }
  return rep;
}

SyzygyClosureReport syzygy_closure_check(CTConfig& cfg, Rng& rng) {
  SyzygyClosureReport rep;
  rep.cond_negative_vanishing = true;
  for (int i = -(cfg.d - 1); i <= -1; ++i) {
    for (size_t s = 0; s < cfg.summands.size(); ++s)
      for (size_t t = 0; t < cfg.summands.size(); ++t) {
        ObjId shifted = cfg.backend->suspend(cfg.summands[t], i);
        if (cfg.backend->stable_dim(cfg.summands[s], shifted) > 0)
          rep.cond_negative_vanishing = false;
      }
  }
  rep.cond_syzygy_closure = true;
  rep.syzygy_permutation.assign(cfg.summands.size(), -1);
  for (size_t s = 0; s < cfg.summands.size(); ++s) {
    ObjId Od = cfg.backend->suspend(cfg.summands[s], -cfg.d);
    if (cfg.backend->is_stably_zero(cfg.summands[s])) {
      rep.syzygy_permutation[s] = static_cast<int>(s);  // stays in add(T) trivially
      continue;
    }
    bool found = false;
    for (size_t t = 0; t < cfg.summands.size() && !found; ++t) {
      auto iso = cfg.backend->stably_isomorphic(Od, cfg.summands[t], rng);
      if (iso.yes) {
        rep.syzygy_permutation[s] = static_cast<int>(t);
        found = true;
      }
    }
    if (!found) rep.cond_syzygy_closure = false;
  }
  if (rep.cond_negative_vanishing != rep.cond_syzygy_closure)
    throw CheckFailure("negative-shift vanishing and syzygy closure disagree");
  return rep;
}

bool ej_membership(CTConfig& cfg, ObjId X, int j) {
  if (j < 1 || j > cfg.d) throw InputError("membership index must satisfy 1 <= j <= d");
  for (int i = 1; i <= cfg.d - 1; ++i) {
    if (i == j) continue;
    ObjId Xi = cfg.backend->suspend(X, i);
    for (size_t s = 0; s < cfg.summands.size(); ++s)
      if (cfg.backend->stable_dim(cfg.summands[s], Xi) > 0) return false;
  }
  return true;
}

int GammaData::vertex_of_summand(int summand) const {
  for (size_t v = 0; v < vertex_summand.size(); ++v)
    if (vertex_summand[v] == summand) return static_cast<int>(v);
  return -1;
}

StableEndResult stable_end_algebra(CTConfig& cfg) {
  StableEndResult out;
  auto& B = *cfg.backend;
  const Fp& F = B.field();
  auto nz = nonzero_summands(cfg);
  GammaData gd;
  gd.vertex_summand = nz;
  if (!nz.empty()) {
    // enumerate basis: for (from_vertex a, to_vertex b): stable Hom(T_a, T_b)
    std::vector<std::vector<std::vector<int>>> index(
        nz.size(), std::vector<std::vector<int>>(nz.size()));
    for (size_t a = 0; a < nz.size(); ++a)
      for (size_t b = 0; b < nz.size(); ++b) {
        int d = B.stable_dim(cfg.summands[nz[a]], cfg.summands[nz[b]]);
        for (int t = 0; t < d; ++t) {
          index[a][b].push_back(static_cast<int>(gd.basis_entries.size()));
          gd.basis_entries.push_back({static_cast<int>(a), static_cast<int>(b), t});
        }
      }
    int n = static_cast<int>(gd.basis_entries.size());
    auto global_coords = [&](int a, int b, const std::vector<uint32_t>& local) {
      std::vector<uint32_t> v(n, 0);
      for (size_t t = 0; t < local.size(); ++t) v[index[a][b][t]] = local[t];
      return v;
    };
    std::vector<std::vector<std::vector<uint32_t>>> table(n,
                                                          std::vector<std::vector<uint32_t>>(n));
    for (int i = 0; i < n; ++i) {
      const auto& x = gd.basis_entries[i];
      FrobMap xmap =
          B.stable_basis_map(cfg.summands[nz[x.from_vertex]], cfg.summands[nz[x.to_vertex]],
                             x.local_index);
      for (int j = 0; j < n; ++j) {
        const auto& y = gd.basis_entries[j];
        // product x*y applies y first; defined when y lands at x's source
        if (y.to_vertex != x.from_vertex) {
          table[i][j] = std::vector<uint32_t>(n, 0);
          continue;
        }
        FrobMap ymap =
            B.stable_basis_map(cfg.summands[nz[y.from_vertex]], cfg.summands[nz[y.to_vertex]],
                               y.local_index);
        FrobMap prod = B.compose(ymap, xmap);
        table[i][j] = global_coords(y.from_vertex, x.to_vertex, B.stable_coords(prod));
      }
    }
    std::vector<uint32_t> unit(n, 0);
    std::vector<std::vector<uint32_t>> idems;
    for (size_t v = 0; v < nz.size(); ++v) {
      FrobMap idm = B.identity(cfg.summands[nz[v]]);
      auto c = global_coords(static_cast<int>(v), static_cast<int>(v), B.stable_coords(idm));
      for (int k = 0; k < n; ++k) unit[k] = F.add(unit[k], c[k]);
      idems.push_back(std::move(c));
    }
    std::vector<std::string> labels;
    for (const auto& e : gd.basis_entries)
      labels.push_back("h[" + std::to_string(e.from_vertex) + "->" +
                       std::to_string(e.to_vertex) + ":" + std::to_string(e.local_index) + "]");
    auto gamma = std::make_shared<FDAlgebra>(F, std::move(table), std::move(unit),
                                             std::move(labels));
    FDAlgebra::Structure st;
    st.radical_basis = radical_basis(*gamma);
    st.idempotents = idems;
    for (size_t v = 0; v < nz.size(); ++v) st.idempotent_block.push_back(static_cast<int>(v));
    st.num_blocks = static_cast<int>(nz.size());
    // split basic check: e(A/J)e must be one-dimensional per vertex
    {
      RowSpace J(F, gamma->dim());
      for (const auto& r : st.radical_basis) J.add(r);
      for (size_t v = 0; v < nz.size(); ++v) {
        RowSpace eAe(F, gamma->dim()), eJe(F, gamma->dim());
        for (int k = 0; k < gamma->dim(); ++k) {
          std::vector<uint32_t> ek(gamma->dim(), 0);
          ek[k] = 1;
          eAe.add(gamma->mul(gamma->mul(idems[v], ek), idems[v]));
        }
        for (const auto& r : st.radical_basis)
          eJe.add(gamma->mul(gamma->mul(idems[v], r), idems[v]));
        if (eAe.dim() - eJe.dim() != 1)
          throw InputError("stable endomorphism algebra is not split basic over F_p");
      }
    }
    gamma->set_structure(std::move(st));
    gamma->generators();
    gd.gamma = gamma;
  }
  out.gamma = gd;

  // ordinary endomorphism algebra (module backend only)
  if (auto* mb = dynamic_cast<ModBackend*>(cfg.backend.get())) {
    int m = static_cast<int>(cfg.summands.size());
    std::vector<std::vector<std::vector<Matrix>>> homs(m, std::vector<std::vector<Matrix>>(m));
    std::vector<std::vector<std::vector<int>>> index(m, std::vector<std::vector<int>>(m));
    int n = 0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        homs[a][b] = hom_basis(mb->module_of(cfg.summands[a]), mb->module_of(cfg.summands[b]));
        for (size_t t = 0; t < homs[a][b].size(); ++t) index[a][b].push_back(n++);
      }
    // coordinates of a map in the hom(a, b) basis (solved, not echelonized)
    auto coords_in = [&](int a, int b, const Matrix& f) {
      int rows = mb->module_of(cfg.summands[a]).dim();
      int cols = mb->module_of(cfg.summands[b]).dim();
      int nb = static_cast<int>(homs[a][b].size());
      Matrix C(F, rows * cols, nb);
      for (int t = 0; t < nb; ++t) {
        int r = 0;
        for (int i = 0; i < rows; ++i)
          for (int j = 0; j < cols; ++j) C.at(r++, t) = homs[a][b][t].at(i, j);
      }
      std::vector<uint32_t> fv;
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) fv.push_back(f.at(i, j));
      auto sol = solve_and_kernel(C, fv);
      STENDO_ASSERT(sol.particular.has_value(), "hom coordinates failed");
      return *sol.particular;
    };
    std::vector<std::vector<std::vector<uint32_t>>> table(n,
                                                          std::vector<std::vector<uint32_t>>(n));
    std::vector<std::tuple<int, int, int>> entries;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (size_t t = 0; t < homs[a][b].size(); ++t) entries.push_back({a, b, static_cast<int>(t)});
    for (int i = 0; i < n; ++i) {
      auto [xa, xb, xt] = entries[i];
      for (int j = 0; j < n; ++j) {
        auto [ya, yb, yt] = entries[j];
        std::vector<uint32_t> row(n, 0);
        if (yb == xa) {
          Matrix prod = homs[ya][yb][yt] * homs[xa][xb][xt];  // y then x
          auto c = coords_in(ya, xb, prod);
          for (size_t t = 0; t < c.size(); ++t) row[index[ya][xb][t]] = c[t];
        }
        table[i][j] = std::move(row);
      }
    }
    std::vector<uint32_t> unit(n, 0);
    std::vector<std::vector<uint32_t>> idems;
    for (int a = 0; a < m; ++a) {
      Matrix id = Matrix::identity(F, mb->module_of(cfg.summands[a]).dim());
      auto c = coords_in(a, a, id);
      std::vector<uint32_t> e(n, 0);
      for (size_t t = 0; t < c.size(); ++t) e[index[a][a][t]] = c[t];
      for (int k = 0; k < n; ++k) unit[k] = F.add(unit[k], e[k]);
      idems.push_back(std::move(e));
    }
    FDAlgebra lam(F, std::move(table), std::move(unit));
    FDAlgebra::Structure st;
    st.radical_basis = radical_basis(lam);
    st.idempotents = idems;
    for (int a = 0; a < m; ++a) st.idempotent_block.push_back(a);
    st.num_blocks = m;
    lam.set_structure(std::move(st));

    // projection End(T) -> stable End(T): each hom class maps to its stable
    // class (zero when either endpoint is stably zero)
    if (!gd.trivial()) {
      Matrix proj(F, n, gd.gamma->dim());
      for (int i = 0; i < n; ++i) {
        auto [a, b, t] = entries[i];
        int va = gd.vertex_of_summand(a);
        int vb = gd.vertex_of_summand(b);
        if (va < 0 || vb < 0) continue;
        FrobMap fm;
        fm.src = cfg.summands[a];
        fm.dst = cfg.summands[b];
        fm.mod = homs[a][b][t];
        proj.set_row(i, gamma_coords_of_map(cfg, gd, fm));
      }
      // the projection must be an algebra map
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          std::vector<uint32_t> ei(n, 0), ej(n, 0);
          ei[i] = 1;
          ej[j] = 1;
          auto prod = lam.mul(ei, ej);
          std::vector<uint32_t> lhs(gd.gamma->dim(), 0);
          for (int k = 0; k < n; ++k) {
            if (!prod[k]) continue;
            for (int c = 0; c < gd.gamma->dim(); ++c)
              lhs[c] = F.add(lhs[c], F.mul(prod[k], proj.at(k, c)));
          }
          auto rhs = gd.gamma->mul(proj.row(i), proj.row(j));
          STENDO_ASSERT(lhs == rhs, "stable projection is not an algebra map");
        }
      out.lambda_to_gamma = std::move(proj);
    }
    out.lambda = std::move(lam);
  } else {
    out.lambda_infinite = true;
  }
  return out;
}

std::vector<uint32_t> gamma_coords_of_map(CTConfig& cfg, const GammaData& gd, const FrobMap& f) {
  auto& B = *cfg.backend;
  int n = gd.gamma->dim();
  std::vector<uint32_t> out(n, 0);
  // locate the vertex pair by matching source/target objects
  int a = -1, b = -1;
  for (size_t v = 0; v < gd.vertex_summand.size(); ++v) {
    if (cfg.summands[gd.vertex_summand[v]] == f.src) a = static_cast<int>(v);
    if (cfg.summands[gd.vertex_summand[v]] == f.dst) b = static_cast<int>(v);
  }
  STENDO_ASSERT(a >= 0 && b >= 0, "map endpoints are not tilting summands");
  auto local = B.stable_coords(f);
  int t = 0;
  for (size_t k = 0; k < gd.basis_entries.size(); ++k) {
    const auto& e = gd.basis_entries[k];
    if (e.from_vertex == a && e.to_vertex == b) out[k] = local[t++];
  }
  STENDO_ASSERT(t == static_cast<int>(local.size()), "coordinate count mismatch");
  return out;
}

FrobMap map_of_gamma_element(CTConfig& cfg, const GammaData& gd,
                             const std::vector<uint32_t>& elt, int from_vertex, int to_vertex) {
  auto& B = *cfg.backend;
  ObjId src = cfg.summands[gd.vertex_summand[from_vertex]];
  ObjId dst = cfg.summands[gd.vertex_summand[to_vertex]];
  FrobMap acc = B.zero_map(src, dst);
  for (size_t k = 0; k < gd.basis_entries.size(); ++k) {
    if (!elt[k]) continue;
    const auto& e = gd.basis_entries[k];
    if (e.from_vertex != from_vertex || e.to_vertex != to_vertex) continue;
    FrobMap bm = B.stable_basis_map(src, dst, e.local_index);
    acc = B.add_maps(acc, B.scale_map(bm, elt[k]));
  }
  return acc;
}

FDModule functor_module(CTConfig& cfg, const GammaData& gd, ObjId X) {
  auto& B = *cfg.backend;
  const Fp& F = B.field();
  STENDO_ASSERT(!gd.trivial(), "functor over the zero algebra");
  int nv = static_cast<int>(gd.vertex_summand.size());
  std::vector<int> dims(nv), offset(nv, 0);
  int total = 0;
  for (int v = 0; v < nv; ++v) {
    dims[v] = B.stable_dim(cfg.summands[gd.vertex_summand[v]], X);
    offset[v] = total;
    total += dims[v];
  }
  std::vector<Matrix> act;
  for (size_t k = 0; k < gd.basis_entries.size(); ++k) {
    const auto& e = gd.basis_entries[k];
    Matrix Mk(F, total, total);
    // gamma basis element g : T_{from} -> T_{to}; action m |-> m after g,
    // defined on component "to", landing in component "from"
    FrobMap gmap = B.stable_basis_map(cfg.summands[gd.vertex_summand[e.from_vertex]],
                                      cfg.summands[gd.vertex_summand[e.to_vertex]],
                                      e.local_index);
    for (int t = 0; t < dims[e.to_vertex]; ++t) {
      FrobMap m = B.stable_basis_map(cfg.summands[gd.vertex_summand[e.to_vertex]], X, t);
      FrobMap composed = B.compose(gmap, m);
      auto c = B.stable_coords(composed);
      for (size_t u = 0; u < c.size(); ++u)
        Mk.at(offset[e.to_vertex] + t, offset[e.from_vertex] + static_cast<int>(u)) = c[u];
    }
    act.push_back(std::move(Mk));
  }
  return FDModule(gd.gamma, total, std::move(act));
}

Matrix functor_map(CTConfig& cfg, const GammaData& gd, const FrobMap& f) {
  auto& B = *cfg.backend;
  const Fp& F = B.field();
  int nv = static_cast<int>(gd.vertex_summand.size());
  std::vector<int> dimsX(nv), dimsY(nv);
  int totalX = 0, totalY = 0;
  for (int v = 0; v < nv; ++v) {
    dimsX[v] = B.stable_dim(cfg.summands[gd.vertex_summand[v]], f.src);
    dimsY[v] = B.stable_dim(cfg.summands[gd.vertex_summand[v]], f.dst);
    totalX += dimsX[v];
    totalY += dimsY[v];
  }
  Matrix out(F, totalX, totalY);
  int roff = 0;
  for (int v = 0; v < nv; ++v) {
    int coff = 0;
    for (int w = 0; w < v; ++w) coff += dimsY[w];
    for (int t = 0; t < dimsX[v]; ++t) {
      FrobMap m = B.stable_basis_map(cfg.summands[gd.vertex_summand[v]], f.src, t);
      FrobMap composed = B.compose(m, f);
      auto c = B.stable_coords(composed);
      for (size_t u = 0; u < c.size(); ++u) out.at(roff + t, coff + static_cast<int>(u)) = c[u];
    }
    roff += dimsX[v];
  }
  return out;
}

namespace {

// stable inverse of an isomorphism f : U -> V
FrobMap invert_stable_iso(CTConfig& cfg, const FrobMap& f) {
  auto& B = *cfg.backend;
  const Fp& F = B.field();
  int dU = B.stable_dim(f.src, f.src);
  int dVU = B.stable_dim(f.dst, f.src);
  STENDO_ASSERT(dVU > 0 || dU == 0, "no candidate inverses");
  // find h : V -> U with (f then h) = id_U, then confirm (h then f) = id_V
  auto idU = B.stable_coords(B.identity(f.src));
  Matrix C(F, dU, dVU);
  for (int t = 0; t < dVU; ++t) {
    FrobMap h = B.stable_basis_map(f.dst, f.src, t);
    auto c = B.stable_coords(B.compose(f, h));
    for (int i = 0; i < dU; ++i) C.at(i, t) = c[i];
  }
  auto sol = solve_and_kernel(C, idU);
  STENDO_ASSERT(sol.particular.has_value(), "stable iso has no left inverse");
  FrobMap h = B.zero_map(f.dst, f.src);
  for (int t = 0; t < dVU; ++t)
    if ((*sol.particular)[t])
      h = B.add_maps(h, B.scale_map(B.stable_basis_map(f.dst, f.src, t), (*sol.particular)[t]));
  // verify the other composite
  auto idV = B.stable_coords(B.identity(f.dst));
  auto check = B.stable_coords(B.compose(h, f));
  STENDO_ASSERT(check == idV, "stable inverse fails on the other side");
  return h;
}

}  // namespace

TwistData periodic_object_check(CTConfig& cfg, const GammaData& gd, Rng& rng, int r_bound) {
  auto& B = *cfg.backend;
  TwistData out;
  out.r_bound = r_bound;
  if (gd.trivial()) {
    out.r = 1;
    out.r_status = "certified";
    return out;
  }
  int nv = static_cast<int>(gd.vertex_summand.size());
  out.permutation.assign(nv, -1);
  out.eta.resize(nv);
  for (int v = 0; v < nv; ++v) {
    ObjId Od = B.suspend(cfg.summands[gd.vertex_summand[v]], -cfg.d);
    bool found = false;
    for (int w = 0; w < nv && !found; ++w) {
      auto iso = B.stably_isomorphic(Od, cfg.summands[gd.vertex_summand[w]], rng);
      if (iso.yes) {
        out.permutation[v] = w;
        out.eta[v] = *iso.witness;
        found = true;
      }
    }
    if (!found)
      throw CheckFailure("hypothesis fails: Omega^d of summand " + std::to_string(v) +
                         " is not isomorphic to a summand");
  }
  // sigma(x) = eta_to o Omega^d(x) o eta_from^{-1}
  const Fp& F = B.field();
  int n = gd.gamma->dim();
  Matrix S(F, n, n);
  for (int k = 0; k < n; ++k) {
    const auto& e = gd.basis_entries[k];
    FrobMap x = B.stable_basis_map(cfg.summands[gd.vertex_summand[e.from_vertex]],
                                   cfg.summands[gd.vertex_summand[e.to_vertex]], e.local_index);
    FrobMap Odx = B.suspend_map(x, -cfg.d);
    FrobMap inv_from = invert_stable_iso(cfg, out.eta[e.from_vertex]);
    FrobMap comp = B.compose(B.compose(inv_from, Odx), out.eta[e.to_vertex]);
    S.set_row(k, gamma_coords_of_map(cfg, gd, comp));
  }
  AlgebraAuto sigma{S};
  verify_automorphism(*gd.gamma, sigma);
  out.sigma = sigma;
  AlgebraAuto power = sigma;
  for (int r = 1; r <= r_bound; ++r) {
    auto res = auto_is_inner(*gd.gamma, power, rng);
    if (res.inner()) {
      out.r = r;
      out.r_status = "certified";
      return out;
    }
    if (res.verdict == InnerResult::Verdict::Inconclusive) {
      out.r_status = "unknown <= " + std::to_string(r_bound) + " (inner test inconclusive)";
      return out;
    }
    power = power.compose(sigma);
  }
  out.r_status = "unknown <= " + std::to_string(r_bound);
  return out;
}

QuiverOfAlgebra quiver_of_gamma(const FDAlgebra& gamma) {
  const Fp& F = gamma.field();
  const auto& st = gamma.structure();
  int m = static_cast<int>(st.idempotents.size());
  QuiverOfAlgebra q;
  q.vertices = m;
  q.arrow_counts.assign(m, std::vector<int>(m, 0));
  int n = gamma.dim();
  // J^2 spans
  std::vector<std::vector<uint32_t>> J2;
  {
    RowSpace sp(F, n);
    for (const auto& a : st.radical_basis)
      for (const auto& b : st.radical_basis) sp.add(gamma.mul(a, b));
    Matrix B = sp.basis_matrix();
    for (int i = 0; i < B.rows(); ++i) J2.push_back(B.row(i));
  }
  for (int to = 0; to < m; ++to)
    for (int from = 0; from < m; ++from) {
      RowSpace eJe(F, n), eJ2e(F, n);
      for (const auto& r : st.radical_basis)
        eJe.add(gamma.mul(gamma.mul(st.idempotents[to], r), st.idempotents[from]));
      for (const auto& r : J2)
        eJ2e.add(gamma.mul(gamma.mul(st.idempotents[to], r), st.idempotents[from]));
      q.arrow_counts[to][from] = eJe.dim() - eJ2e.dim();
    }
  return q;
}

ExactCompletion complete_to_exact(CTConfig& cfg, const FrobMap& f) {
  return cfg.backend->complete_to_exact(f);
}

namespace {

struct Presentation {
  std::vector<int> copies1, copies0;  // vertex index per copy
  ObjId C1 = -1, C0 = -1;
  FrobMap f;
};

// minimal projective presentation of a Gamma-module, lifted to add(T)
Presentation lift_presentation(CTConfig& cfg, const GammaData& gd, const FDModule& M) {
  auto& B = *cfg.backend;
  const Fp& F = B.field();
  Presentation pres;
  auto cov0 = projective_cover(M);
  auto ker = submodule(cov0.P, left_kernel(cov0.epi));
  auto cov1 = projective_cover(ker.module);
  Matrix Theta = cov1.epi * ker.embed;  // P1 -> P0

  // copy layout of a cover: summand order follows the cover construction
  auto layout = [&](const CoverResult& cov) {
    std::vector<int> copies;
    for (const auto& [vtx, mult] : cov.summands)
      for (int t = 0; t < mult; ++t) copies.push_back(vtx);
    return copies;
  };
  pres.copies0 = layout(cov0);
  pres.copies1 = layout(cov1);

  std::vector<ObjId> parts0, parts1;
  for (int v : pres.copies0) parts0.push_back(cfg.summands[gd.vertex_summand[v]]);
  for (int v : pres.copies1) parts1.push_back(cfg.summands[gd.vertex_summand[v]]);
  pres.C0 = parts0.empty() ? B.zero_object() : B.sum(parts0);
  pres.C1 = parts1.empty() ? B.zero_object() : B.sum(parts1);

  // per-copy basis rows of e_v Gamma inside Gamma
  auto proj_of = [&](int v) { return idempotent_projective(gd.gamma, gd.gamma->structure().idempotents[v]); };
  std::vector<ProjectiveSummand> eproj0, eproj1;
  std::vector<int> off0, off1;
  {
    int acc = 0;
    for (int v : pres.copies0) {
      eproj0.push_back(proj_of(v));
      off0.push_back(acc);
      acc += eproj0.back().module.dim();
    }
    acc = 0;
    for (int v : pres.copies1) {
      eproj1.push_back(proj_of(v));
      off1.push_back(acc);
      acc += eproj1.back().module.dim();
    }
  }
  if (pres.copies1.empty() || pres.copies0.empty()) {
    pres.f = B.zero_map(pres.C1, pres.C0);
    return pres;
  }
  // block maps: generator of copy s is the element e_{a} of e_a Gamma
  std::vector<std::vector<FrobMap>> blocks(pres.copies0.size(),
                                           std::vector<FrobMap>(pres.copies1.size()));
  for (size_t s = 0; s < pres.copies1.size(); ++s) {
    int a = pres.copies1[s];
    // coordinates of e_a inside its projective's basis
    RowSpace rs(F, gd.gamma->dim());
    for (int i = 0; i < eproj1[s].basis_in_A.rows(); ++i) rs.add(eproj1[s].basis_in_A.row(i));
    auto local = rs.coords(gd.gamma->structure().idempotents[a]);
    STENDO_ASSERT(local.has_value(), "idempotent not inside its projective");
    std::vector<uint32_t> row(cov1.P.dim(), 0);
    for (size_t t = 0; t < local->size(); ++t) row[off1[s] + t] = (*local)[t];
    // image in P0 coordinates
    std::vector<uint32_t> img(cov0.P.dim(), 0);
    for (size_t t = 0; t < row.size(); ++t) {
      if (!row[t]) continue;
      for (int j = 0; j < cov0.P.dim(); ++j)
        img[j] = F.add(img[j], F.mul(row[t], Theta.at(static_cast<int>(t), j)));
    }
    for (size_t u = 0; u < pres.copies0.size(); ++u) {
      int b = pres.copies0[u];
      // slice copy u, convert to a Gamma element
      std::vector<uint32_t> w(gd.gamma->dim(), 0);
      for (int i = 0; i < eproj0[u].module.dim(); ++i) {
        uint32_t c = img[off0[u] + i];
        if (!c) continue;
        auto grow = eproj0[u].basis_in_A.row(i);
        for (int k = 0; k < gd.gamma->dim(); ++k) w[k] = F.add(w[k], F.mul(c, grow[k]));
      }
      // w must lie in e_b Gamma e_a
      auto we = gd.gamma->mul(w, gd.gamma->structure().idempotents[a]);
      STENDO_ASSERT(we == w, "presentation block escapes the expected corner");
      blocks[u][s] = map_of_gamma_element(cfg, gd, w, a, b);
    }
  }
  pres.f = B.assemble_block(pres.C1, pres.C0, blocks);
  return pres;
}

}  // namespace

RealizeResult realize_module(CTConfig& cfg, const GammaData& gd, const FDModule& M, Rng& rng) {
  if (cfg.d < 2)
    throw InputError("realization needs d >= 2 (for d = 1 every module is projective here)");
  if (gd.trivial()) throw InputError("realization over the zero algebra");
  auto& B = *cfg.backend;
  RealizeResult out;
  if (M.dim() == 0) {
    out.X = B.zero_object();
    out.presentation_map = B.zero_map(out.X, out.X);
    out.cover_map = B.zero_map(out.X, out.X);
    out.connecting = B.zero_map(out.X, out.X);
    out.functor_isomorphic = true;
    out.in_e_dminus1 = true;
    return out;
  }
  auto pres = lift_presentation(cfg, gd, M);
  auto cone = B.cone(pres.f);
  out.X = cone.obj;
  out.presentation_map = pres.f;
  out.cover_map = cone.q;
  out.connecting = cone.connecting;
  FDModule FX = functor_module(cfg, gd, out.X);
  auto iso = is_isomorphic(FX, M, rng);
  out.functor_isomorphic = iso.yes();
  if (!out.functor_isomorphic)
    throw CheckFailure("realized object does not represent the module (" + iso.reason + ")");
  out.in_e_dminus1 = ej_membership(cfg, out.X, cfg.d - 1);
  if (!out.in_e_dminus1) throw CheckFailure("realized object fails E_{d-1} membership");
  return out;
}

CertifiedResolution certified_resolution(CTConfig& cfg, const GammaData& gd, ObjId X, Rng& rng) {
  if (cfg.d < 2) throw InputError("the resolution construction needs d >= 2");
  if (gd.trivial()) throw InputError("resolution over the zero algebra");
  auto& B = *cfg.backend;
  CertifiedResolution tr;
  const int d = cfg.d;
  FDModule M = functor_module(cfg, gd, X);
  if (M.dim() == 0) {
    tr.cert_L_in_E = tr.cert_Cd1_in_addT = tr.cert_exactness = tr.cert_tor_vanishing =
        tr.cert_end_kernel = true;
    tr.log.push_back("zero functor: zero resolution");
    return tr;
  }
  if (!ej_membership(cfg, X, d - 1))
    throw InputError("input object is not in E_{d-1}");

  auto pres = lift_presentation(cfg, gd, M);
  auto cone = B.cone(pres.f);
  ObjId W = cone.obj;
  {
    FDModule FW = functor_module(cfg, gd, W);
    auto iso = is_isomorphic(FW, M, rng);
    if (!iso.yes())
      throw CheckFailure("presentation cone does not represent the functor");
  }
  tr.C.push_back(pres.C0);
  tr.C.push_back(pres.C1);

  std::vector<ObjId> L(d + 1, -1);
  std::vector<FrobMap> g(d + 1);          // g_j : L_j -> C_j
  L[1] = B.suspend(W, -1);
  g[1] = B.suspend_map(cone.connecting, -1);
  tr.L.push_back(L[1]);
  std::vector<FrobMap> fj(d + 1);
  for (int j = 2; j <= d; ++j) {
    // canonical approximation C_j = sum T_v^{dim stable(T_v, L_{j-1})}
    std::vector<ObjId> parts;
    std::vector<FrobMap> cols;
    for (size_t v = 0; v < gd.vertex_summand.size(); ++v) {
      ObjId Tv = cfg.summands[gd.vertex_summand[v]];
      int dim = B.stable_dim(Tv, L[j - 1]);
      for (int t = 0; t < dim; ++t) {
        parts.push_back(Tv);
        cols.push_back(B.stable_basis_map(Tv, L[j - 1], t));
      }
    }
    ObjId Cj = parts.empty() ? B.zero_object() : B.sum(parts);
    fj[j] = B.assemble_columns(Cj, L[j - 1], cols);
    auto cc = B.cocone(fj[j]);
    L[j] = cc.obj;
    g[j] = cc.g;
    tr.C.push_back(Cj);
    tr.L.push_back(L[j]);
  }
  // C_{d+1} := L_d
  tr.C.push_back(L[d]);

  // functor complex D_{d+1} -> ... -> D_0 -> M' -> 0
  std::vector<FDModule> D;
  for (int j = 0; j <= d; ++j) D.push_back(functor_module(cfg, gd, tr.C[j]));
  FDModule Dd1 = functor_module(cfg, gd, L[d]);
  FDModule Mp = functor_module(cfg, gd, W);
  for (const auto& Dj : D) tr.functor_dims.push_back(Dj.dim());
  tr.functor_dims.push_back(Dd1.dim());

  std::vector<Matrix> delta(d + 2);  // delta[j] : D_j -> D_{j-1} for j = 1..d+1
  delta[1] = functor_map(cfg, gd, pres.f);
  for (int j = 2; j <= d; ++j) delta[j] = functor_map(cfg, gd, B.compose(fj[j], g[j - 1]));
  delta[d + 1] = functor_map(cfg, gd, g[d]);
  Matrix eps = functor_map(cfg, gd, cone.q);  // D_0 -> M'

  // (i) L_j in E_j
  tr.cert_L_in_E = true;
  for (int j = 1; j <= d; ++j) {
    if (!ej_membership(cfg, L[j], j)) {
      tr.cert_L_in_E = false;
      tr.log.push_back("L_" + std::to_string(j) + " fails E_" + std::to_string(j));
    }
  }

  // (ii) C_{d+1} = L_d lies in add(T)
  {
    bool in_Ed = true;
    for (int i = 1; i <= d - 1; ++i) {
      ObjId Li = B.suspend(L[d], i);
      for (size_t v = 0; v < gd.vertex_summand.size(); ++v)
        if (B.stable_dim(cfg.summands[gd.vertex_summand[v]], Li) > 0) in_Ed = false;
    }
    auto cov = projective_cover(Dd1);
    bool functor_projective = cov.P.dim() == Dd1.dim();
    bool object_level = false;
    std::string method = "functor-level (projective functor + E_d membership)";
    try {
      std::vector<ObjId> parts;
      for (const auto& [vtx, mult] : cov.summands)
        for (int t = 0; t < mult; ++t) parts.push_back(cfg.summands[gd.vertex_summand[vtx]]);
      ObjId target = parts.empty() ? B.zero_object() : B.sum(parts);
      auto iso = B.stably_isomorphic(L[d], target, rng);
      object_level = iso.yes;
      if (object_level) method = "object-level witness";
    } catch (const Inconclusive&) {
      object_level = functor_projective;  // fall back to the functor-level certificate
    }
    tr.cert_Cd1_in_addT = in_Ed && functor_projective && object_level;
    tr.log.push_back("add(T) membership via " + method);
  }

  // (iii) exactness of 0 -> Tor_{d+1} -> D_{d+1} -> ... -> D_0 -> M -> 0
  {
    bool ok = true;
    for (int j = 2; j <= d + 1; ++j) {
      const Matrix& dj = delta[j];
      const Matrix& djm1 = delta[j - 1];
      if (!(dj * djm1).is_zero()) {
        ok = false;
        tr.log.push_back("d o d != 0 at " + std::to_string(j));
      }
    }
    if (!(delta[1] * eps).is_zero()) {
      ok = false;
      tr.log.push_back("augmentation does not kill the presentation");
    }
    if (eps.rank() != Mp.dim()) {
      ok = false;
      tr.log.push_back("augmentation not surjective");
    }
    if (D[0].dim() - eps.rank() != delta[1].rank()) {
      ok = false;
      tr.log.push_back("not exact at D_0");
    }
    for (int j = 1; j <= d; ++j) {
      int incoming = delta[j + 1].rank();
      int outgoing = delta[j].rank();
      if (D[j].dim() - outgoing != incoming) {
        ok = false;
        tr.log.push_back("not exact at D_" + std::to_string(j));
      }
    }
    tr.cert_exactness = ok;
  }

  // (iv) Tor vanishing for 0 < i <= d
  {
    tr.tor_dims.assign(d + 2, 0);
    tr.tor_dims[0] = Mp.dim();
    bool ok = true;
    for (int i = 1; i <= d; ++i) {
      int h = D[i].dim() - delta[i].rank() - delta[i + 1].rank();
      tr.tor_dims[i] = h;
      if (h != 0) ok = false;
    }
    tr.tor_dims[d + 1] = Dd1.dim() - delta[d + 1].rank();
    tr.cert_tor_vanishing = ok;
  }

  for (int j = 1; j <= d + 1; ++j) tr.deltas.push_back(delta[j]);
  tr.eps = eps;

  // (v) end kernel = stable Hom(T, Omega^d X)
  {
    auto ker = submodule(Dd1, left_kernel(delta[d + 1]));
    FDModule FOdX = functor_module(cfg, gd, B.suspend(X, -d));
    auto iso = is_isomorphic(ker.module, FOdX, rng);
    tr.cert_end_kernel = iso.yes();
    if (!iso.yes()) tr.log.push_back("end kernel mismatch: " + iso.reason);
  }

  if (!tr.all()) throw CheckFailure("resolution certificate failed; see trace log");
  return tr;
}

CoverResolution cover_resolution(CTConfig& cfg, const GammaData& gd, int summand, Rng& rng) {
  auto& B = *cfg.backend;
  const Fp& F = B.field();
  CoverResolution tr;
  ObjId C = cfg.summands[summand];
  if (B.is_stably_zero(C)) throw InputError("summand is projective; nothing to resolve");
  const int d = cfg.d;

  // left end: Omega^d C must land on a summand
  ObjId OdC = B.suspend(C, -d);
  for (size_t t = 0; t < cfg.summands.size(); ++t) {
    auto iso = B.stably_isomorphic(OdC, cfg.summands[t], rng);
    if (iso.yes) {
      tr.left_end_summand = static_cast<int>(t);
      break;
    }
  }
  tr.left_end_in_addT = tr.left_end_summand >= 0;

  // middle terms: projective covers of Omega^k C, stably zero
  if (auto* mb = dynamic_cast<ModBackend*>(cfg.backend.get())) {
    // module-level complex, evaluated by Hom(T_total, -)
    std::vector<FDModule> T_all;
    for (ObjId t : cfg.summands) T_all.push_back(mb->module_of(t));
    FDModule T_total = direct_sum(mb->algebra(), T_all).module;
    std::vector<FDModule> omega;  // Omega^k C as modules
    omega.push_back(mb->module_of(C));
    std::vector<FDModule> covers;
    std::vector<Matrix> epis, embeds;
    for (int k = 0; k < d; ++k) {
      auto cov = projective_cover(omega.back());
      auto sub = submodule(cov.P, left_kernel(cov.epi));
      covers.push_back(cov.P);
      epis.push_back(cov.epi);
      embeds.push_back(sub.embed);
      omega.push_back(sub.module);
      tr.middle_sizes.push_back(cov.P.dim());
      // stable vanishing of the middle terms
      int sdim = 0;
      StableHom sh(T_total, cov.P);
      sdim = sh.dim();
      tr.middle_stable_dims.push_back(sdim);
    }
    // complex: 0 -> Omega^d C -> P_{d-1} -> ... -> P_0 -> C with maps
    // embed then epi; evaluate Hom(T_total, -) and check rank exactness
    std::vector<Matrix> maps;  // B-level maps between consecutive terms
    // term list: [Omega^d C, P_{d-1}, ..., P_0, C]
    std::vector<FDModule> terms;
    terms.push_back(omega[d]);
    for (int k = d - 1; k >= 0; --k) terms.push_back(covers[k]);
    terms.push_back(omega[0]);
    maps.push_back(embeds[d - 1]);  // Omega^d C -> P_{d-1}
    for (int k = d - 1; k >= 1; --k) maps.push_back(epis[k] * embeds[k - 1]);
    maps.push_back(epis[0]);  // P_0 -> C
    // evaluated complex
    auto ev_dim = [&](const FDModule& U) { return hom_dim(T_total, U); };
    auto ev_map_rank = [&](const FDModule& U, const FDModule& V, const Matrix& m) {
      auto hu = hom_basis(T_total, U);
      if (hu.empty()) return 0;
      RowSpace image(F, T_total.dim() * V.dim());
      for (const auto& H : hu) {
        Matrix img = H * m;
        std::vector<uint32_t> v;
        for (int i = 0; i < img.rows(); ++i)
          for (int j = 0; j < img.cols(); ++j) v.push_back(img.at(i, j));
        image.add(v);
      }
      return image.dim();
    };
    bool ok = true;
    std::vector<int> dims, ranks;
    for (const auto& t : terms) dims.push_back(ev_dim(t));
    for (size_t k = 0; k < maps.size(); ++k)
      ranks.push_back(ev_map_rank(terms[k], terms[k + 1], maps[k]));
    // left exactness: (T, Omega^d C) injects
    if (ranks[0] != dims[0]) ok = false;
    for (size_t k = 1; k < maps.size(); ++k)
      if (dims[k] - ranks[k] != ranks[k - 1]) ok = false;
    // tail: image of (T,P_0) -> (T,C) is the factoring subspace
    StableHom tail(T_total, mb->module_of(C));
    if (dims.back() - ranks.back() != tail.dim()) ok = false;
    tr.exactness = ok;
    tr.log.push_back("evaluated complex dims/ranks checked over End(T)");
  } else {
    // plane-curve backend: middle terms are free of rank 1 at each step, and
    // exactness is certified by ideal identities
    auto* fb = dynamic_cast<MFBackend*>(cfg.backend.get());
    STENDO_ASSERT(fb != nullptr, "unknown backend");
    const MFRingPtr& R = fb->ring();
    // Omega^k C subsets alternate between the subset and its complement
    std::vector<int> base;  // subset of C
    {
      // recover the subset from the tilting list
      // the backend stores rank-1 sums; reuse the stable-iso classification
      // by reading the stored object label is fragile, so recompute:
      // summand i of the standard construction is the prefix subset
      base.clear();
      for (int i = 0; i <= summand; ++i) base.push_back(i);
    }
    MF1 cur{base};
    bool ok = true;
    for (int k = 0; k < d; ++k) {
      Poly2 g = R->g_of(cur);
      Poly2 gp = R->gprime_of(cur);
      // SES 0 -> M(complement) -> R -> M(cur) -> 0 with kernel (g)/(f):
      // certificates: (f : g) = (g') and g*g' = f
      auto I = buchberger(R->field(), {R->f()});
      auto Q = colon_by_element(I, g);
      auto Gp = buchberger(R->field(), {gp});
      bool same = Q.gens.size() == Gp.gens.size();
      if (same)
        for (size_t t = 0; t < Q.gens.size(); ++t)
          if (!(Q.gens[t] == Gp.gens[t])) same = false;
      if (!same) ok = false;
      if (!(g * gp == R->f())) ok = false;
      tr.middle_sizes.push_back(1);
      tr.middle_stable_dims.push_back(0);  // free modules vanish stably
      cur = R->swap(cur);
    }
    tr.exactness = ok;
    tr.log.push_back("cover sequences certified by colon identities (f : g) = (g')");
  }

  // end identification: stable Hom(T, Omega^d C) is the projective at the
  // matched vertex
  {
    FDModule FOd = functor_module(cfg, gd, OdC);
    int v = gd.vertex_of_summand(tr.left_end_summand);
    STENDO_ASSERT(v >= 0, "left end is not a stably nonzero summand");
    auto eproj = idempotent_projective(gd.gamma, gd.gamma->structure().idempotents[v]);
    auto iso = is_isomorphic(FOd, eproj.module, rng);
    tr.end_identification = iso.yes();
  }
  return tr;
}

}  // namespace stendo
