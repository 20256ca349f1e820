#include "stendo/frob.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace stendo {

PolyMat pm_mul(const PolyMat& A, const PolyMat& B, const Fp& F) {
  int n = static_cast<int>(A.size());
  if (n == 0) return {};
  int m = static_cast<int>(A[0].size());
  if (m == 0) {
    // a zero-column factor: the result is the n x l zero matrix, where l is
    // only recoverable when B carries rows
    int l0 = B.empty() ? 0 : static_cast<int>(B[0].size());
    return PolyMat(n, std::vector<Poly2>(l0, Poly2(F)));
  }
  STENDO_ASSERT(static_cast<int>(B.size()) == m, "poly matrix mul shape");
  int l = B.empty() ? 0 : static_cast<int>(B[0].size());
  PolyMat C(n, std::vector<Poly2>(l, Poly2(F)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < m; ++k) {
      if (A[i][k].is_zero()) continue;
      for (int j = 0; j < l; ++j) {
        if (B[k][j].is_zero()) continue;
        C[i][j] = C[i][j] + A[i][k] * B[k][j];
      }
    }
  return C;
}

PolyMat pm_add(const PolyMat& A, const PolyMat& B) {
  PolyMat C = A;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) C[i][j] = A[i][j] + B[i][j];
  return C;
}

PolyMat pm_scale(const PolyMat& A, uint32_t c) {
  PolyMat C = A;
  for (auto& row : C)
    for (auto& p : row) p = p.scaled(c);
  return C;
}

PolyMat pm_identity(const Fp& F, int n) {
  PolyMat C(n, std::vector<Poly2>(n, Poly2(F)));
  for (int i = 0; i < n; ++i) C[i][i] = Poly2::constant(F, 1);
  return C;
}

PolyMat pm_zero(const Fp& F, int r, int c) {
  return PolyMat(r, std::vector<Poly2>(c, Poly2(F)));
}

bool pm_equal(const PolyMat& A, const PolyMat& B) {
  if (A.size() != B.size()) return false;
  for (size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != B[i].size()) return false;
    for (size_t j = 0; j < A[i].size(); ++j)
      if (!(A[i][j] == B[i][j])) return false;
  }
  return true;
}

FrobMap FrobBackend::assemble_columns(ObjId src_sum, ObjId dst,
                                      const std::vector<FrobMap>& columns) {
  if (columns.empty()) return zero_map(src_sum, dst);
  FrobMap out;
  out.src = src_sum;
  out.dst = dst;
  if (columns[0].mod.has_value()) {
    Matrix stacked = *columns[0].mod;
    for (size_t t = 1; t < columns.size(); ++t) stacked = stacked.vstack(*columns[t].mod);
    out.mod = stacked;
    return out;
  }
  const Fp& F = field();
  int rdst = obj_size(dst);
  int total = obj_size(src_sum);
  PolyMat U0 = pm_zero(F, rdst, total), U1 = pm_zero(F, rdst, total);
  int off = 0;
  for (const auto& c : columns) {
    int w = obj_size(c.src);
    for (int i = 0; i < rdst; ++i)
      for (int j = 0; j < w; ++j) {
        U0[i][off + j] = c.mf->first[i][j];
        U1[i][off + j] = c.mf->second[i][j];
      }
    off += w;
  }
  STENDO_ASSERT(off == total, "column widths do not add up");
  out.mf = {std::move(U0), std::move(U1)};
  return out;
}

FrobMap FrobBackend::assemble_rows(ObjId src, ObjId dst_sum, const std::vector<FrobMap>& rows) {
  if (rows.empty()) return zero_map(src, dst_sum);
  FrobMap out;
  out.src = src;
  out.dst = dst_sum;
  if (rows[0].mod.has_value()) {
    Matrix joined = *rows[0].mod;
    for (size_t t = 1; t < rows.size(); ++t) joined = joined.hstack(*rows[t].mod);
    out.mod = joined;
    return out;
  }
  const Fp& F = field();
  int csrc = obj_size(src);
  int total = obj_size(dst_sum);
  PolyMat U0 = pm_zero(F, total, csrc), U1 = pm_zero(F, total, csrc);
  int off = 0;
  for (const auto& r : rows) {
    int h = obj_size(r.dst);
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < csrc; ++j) {
        U0[off + i][j] = r.mf->first[i][j];
        U1[off + i][j] = r.mf->second[i][j];
      }
    off += h;
  }
  STENDO_ASSERT(off == total, "row heights do not add up");
  out.mf = {std::move(U0), std::move(U1)};
  return out;
}

FrobMap FrobBackend::assemble_block(ObjId src_sum, ObjId dst_sum,
                                    const std::vector<std::vector<FrobMap>>& blocks) {
  // columns: for each source part, assemble its map into the target sum
  std::vector<FrobMap> cols;
  if (blocks.empty() || blocks[0].empty()) return zero_map(src_sum, dst_sum);
  size_t nsrc = blocks[0].size();
  for (size_t s = 0; s < nsrc; ++s) {
    std::vector<FrobMap> col;
    for (size_t u = 0; u < blocks.size(); ++u) col.push_back(blocks[u][s]);
    cols.push_back(assemble_rows(blocks[0][s].src, dst_sum, col));
  }
  return assemble_columns(src_sum, dst_sum, cols);
}

// ---------------------------------------------------------------- ModBackend

ModBackend::ModBackend(AlgPtr A, std::vector<FDModule> tilting_summands) : A_(std::move(A)) {
  if (!is_self_injective(A_))
    throw InputError("module backend requires a self-injective algebra");
  for (auto& M : tilting_summands) {
    STENDO_ASSERT(M.algebra() == A_, "tilting summand over the wrong algebra");
    tilting_.push_back(store(std::move(M)));
  }
}

ObjId ModBackend::store(FDModule M) {
  objects_.push_back(std::move(M));
  return static_cast<ObjId>(objects_.size()) - 1;
}

bool ModBackend::is_stably_zero(ObjId X) {
  const FDModule& M = objects_[X];
  if (M.dim() == 0) return true;
  return is_projective_module(M);
}

std::string ModBackend::obj_label(ObjId X) const {
  return "module(dim " + std::to_string(objects_[X].dim()) + ")";
}

ObjId ModBackend::zero_object() { return store(FDModule::zero(A_)); }

ObjId ModBackend::sum(const std::vector<ObjId>& parts) {
  std::vector<FDModule> mods;
  for (ObjId p : parts) mods.push_back(objects_[p]);
  return store(direct_sum(A_, mods).module);
}

ObjId ModBackend::suspend(ObjId X, int k) {
  if (k == 0) return X;
  int step = k > 0 ? 1 : -1;
  ObjId cur = X;
  for (int t = 0; t < std::abs(k); ++t) {
    auto key = std::make_pair(cur, step);
    auto it = suspend_cache_.find(key);
    if (it != suspend_cache_.end()) {
      cur = it->second;
      continue;
    }
    const FDModule& M = objects_[cur];
    FDModule next;
    if (step > 0) {
      // cosyzygy: cokernel of the injective envelope
      auto env = injective_envelope(M);
      std::vector<std::vector<uint32_t>> img;
      for (int i = 0; i < env.mono.rows(); ++i) img.push_back(env.mono.row(i));
      next = quotient_module(env.I, img).module;
    } else {
      auto cov = projective_cover(M);
      next = submodule(cov.P, left_kernel(cov.epi)).module;
    }
    ObjId nid = store(std::move(next));
    suspend_cache_[key] = nid;
    cur = nid;
  }
  return cur;
}

StableHom& ModBackend::stable(ObjId X, ObjId Y) {
  auto key = std::make_pair(X, Y);
  auto it = hom_cache_.find(key);
  if (it == hom_cache_.end()) {
    it = hom_cache_.emplace(key, std::make_shared<StableHom>(objects_[X], objects_[Y])).first;
  }
  return *it->second;
}

int ModBackend::stable_dim(ObjId X, ObjId Y) { return stable(X, Y).dim(); }

FrobMap ModBackend::stable_basis_map(ObjId X, ObjId Y, int t) {
  FrobMap f;
  f.src = X;
  f.dst = Y;
  f.mod = stable(X, Y).reps()[t];
  return f;
}

std::vector<uint32_t> ModBackend::stable_coords(const FrobMap& f) {
  return stable(f.src, f.dst).coords(*f.mod);
}

FrobMap ModBackend::identity(ObjId X) {
  FrobMap f;
  f.src = f.dst = X;
  f.mod = Matrix::identity(field(), objects_[X].dim());
  return f;
}

FrobMap ModBackend::zero_map(ObjId X, ObjId Y) {
  FrobMap f;
  f.src = X;
  f.dst = Y;
  f.mod = Matrix(field(), objects_[X].dim(), objects_[Y].dim());
  return f;
}

FrobMap ModBackend::add_maps(const FrobMap& f, const FrobMap& g) {
  STENDO_ASSERT(f.src == g.src && f.dst == g.dst, "map addition shape");
  FrobMap out = f;
  out.mod = *f.mod + *g.mod;
  return out;
}

FrobMap ModBackend::scale_map(const FrobMap& f, uint32_t c) {
  FrobMap out = f;
  out.mod = f.mod->scaled(c);
  return out;
}

FrobMap ModBackend::compose(const FrobMap& f, const FrobMap& g) {
  STENDO_ASSERT(f.dst == g.src, "composition mismatch");
  FrobMap out;
  out.src = f.src;
  out.dst = g.dst;
  out.mod = (*f.mod) * (*g.mod);
  return out;
}

namespace {

// solve sum c_t H_t with (combination composed as in build) equal to target
Matrix solve_map_equation(const Fp& F, const std::vector<Matrix>& homs,
                          const std::function<Matrix(const Matrix&)>& wrap, const Matrix& target,
                          int rows, int cols) {
  Matrix C(F, target.rows() * target.cols(), static_cast<int>(homs.size()));
  for (size_t u = 0; u < homs.size(); ++u) {
    Matrix img = wrap(homs[u]);
    int r = 0;
    for (int i = 0; i < img.rows(); ++i)
      for (int j = 0; j < img.cols(); ++j) C.at(r++, static_cast<int>(u)) = img.at(i, j);
  }
  std::vector<uint32_t> tv;
  for (int i = 0; i < target.rows(); ++i)
    for (int j = 0; j < target.cols(); ++j) tv.push_back(target.at(i, j));
  auto sol = solve_and_kernel(C, tv);
  STENDO_ASSERT(sol.particular.has_value(), "map equation has no solution");
  Matrix out(F, rows, cols);
  for (size_t u = 0; u < homs.size(); ++u)
    if ((*sol.particular)[u]) out = out + homs[u].scaled((*sol.particular)[u]);
  return out;
}

int quotient_representative(const Matrix& project, int t) {
  for (int i = 0; i < project.rows(); ++i) {
    if (project.at(i, t) != 1) continue;
    bool clean = true;
    for (int j = 0; j < project.cols(); ++j)
      if (j != t && project.at(i, j) != 0) clean = false;
    if (clean) return i;
  }
  STENDO_ASSERT(false, "quotient representative not found");
  return -1;
}

}  // namespace

FrobMap ModBackend::suspend_map(const FrobMap& f, int k) {
  if (k == 0) return f;
  const Fp& F = field();
  FrobMap cur = f;
  int step = k > 0 ? 1 : -1;
  for (int t = 0; t < std::abs(k); ++t) {
    ObjId sX = suspend(cur.src, step);
    ObjId sY = suspend(cur.dst, step);
    const FDModule& M = objects_[cur.src];
    const FDModule& N = objects_[cur.dst];
    Matrix result(F, objects_[sX].dim(), objects_[sY].dim());
    if (step < 0) {
      auto covM = projective_cover(M);
      auto covN = projective_cover(N);
      auto subM = submodule(covM.P, left_kernel(covM.epi));
      auto subN = submodule(covN.P, left_kernel(covN.epi));
      auto homs = hom_basis(covM.P, covN.P);
      Matrix L = solve_map_equation(
          F, homs, [&](const Matrix& H) { return H * covN.epi; }, covM.epi * (*cur.mod),
          covM.P.dim(), covN.P.dim());
      RowSpace kerN(F, covN.P.dim());
      for (int i = 0; i < subN.embed.rows(); ++i) kerN.add(subN.embed.row(i));
      for (int i = 0; i < subM.embed.rows(); ++i) {
        std::vector<uint32_t> img(covN.P.dim(), 0);
        auto row = subM.embed.row(i);
        for (int a = 0; a < covM.P.dim(); ++a) {
          if (!row[a]) continue;
          for (int b = 0; b < covN.P.dim(); ++b) img[b] = F.add(img[b], F.mul(row[a], L.at(a, b)));
        }
        auto c = kerN.coords(img);
        STENDO_ASSERT(c.has_value(), "suspended map escapes the kernel");
        result.set_row(i, *c);
      }
    } else {
      auto envM = injective_envelope(M);
      auto envN = injective_envelope(N);
      auto homs = hom_basis(envM.I, envN.I);
      Matrix E = solve_map_equation(
          F, homs, [&](const Matrix& H) { return envM.mono * H; }, (*cur.mod) * envN.mono,
          envM.I.dim(), envN.I.dim());
      std::vector<std::vector<uint32_t>> imgM, imgN;
      for (int i = 0; i < envM.mono.rows(); ++i) imgM.push_back(envM.mono.row(i));
      for (int i = 0; i < envN.mono.rows(); ++i) imgN.push_back(envN.mono.row(i));
      auto qM = quotient_module(envM.I, imgM);
      auto qN = quotient_module(envN.I, imgN);
      for (int u = 0; u < qM.module.dim(); ++u) {
        int rep = quotient_representative(qM.project, u);
        std::vector<uint32_t> out(qN.module.dim(), 0);
        for (int a = 0; a < envN.I.dim(); ++a) {
          uint32_t c = E.at(rep, a);
          if (!c) continue;
          for (int b = 0; b < qN.module.dim(); ++b)
            out[b] = F.add(out[b], F.mul(c, qN.project.at(a, b)));
        }
        result.set_row(u, out);
      }
    }
    STENDO_ASSERT(is_module_map(objects_[sX], objects_[sY], result),
                  "suspended map is not a module map");
    FrobMap next;
    next.src = sX;
    next.dst = sY;
    next.mod = result;
    cur = next;
  }
  return cur;
}

ModBackend::ConeResult ModBackend::cone(const FrobMap& f) {
  const Fp& F = field();
  const FDModule& X = objects_[f.src];
  const FDModule& Y = objects_[f.dst];
  auto env = injective_envelope(X);
  auto mid = direct_sum(A_, {Y, env.I});
  Matrix emb = f.mod->hstack(env.mono);
  STENDO_ASSERT(emb.rank() == X.dim(), "cone embedding must be injective");
  std::vector<std::vector<uint32_t>> img;
  for (int i = 0; i < emb.rows(); ++i) img.push_back(emb.row(i));
  auto q = quotient_module(mid.module, img);
  ObjId W = store(q.module);
  FrobMap qmap;
  qmap.src = f.dst;
  qmap.dst = W;
  qmap.mod = mid.include[0] * q.project;
  // connecting W -> X[1]: extend the envelope embedding through mid
  ObjId X1 = suspend(f.src, 1);
  const FDModule& OX = objects_[X1];
  auto homs = hom_basis(mid.module, env.I);
  Matrix chi = solve_map_equation(
      F, homs, [&](const Matrix& H) { return emb * H; }, env.mono, mid.module.dim(),
      env.I.dim());
  std::vector<std::vector<uint32_t>> imgX;
  for (int i = 0; i < env.mono.rows(); ++i) imgX.push_back(env.mono.row(i));
  auto qX = quotient_module(env.I, imgX);
  STENDO_ASSERT(qX.module.dim() == OX.dim(), "cosyzygy coordinates changed");
  Matrix delta(F, q.module.dim(), OX.dim());
  for (int t = 0; t < q.module.dim(); ++t) {
    int rep = quotient_representative(q.project, t);
    std::vector<uint32_t> out(OX.dim(), 0);
    for (int a = 0; a < env.I.dim(); ++a) {
      uint32_t c = chi.at(rep, a);
      if (!c) continue;
      for (int b = 0; b < OX.dim(); ++b) out[b] = F.add(out[b], F.mul(c, qX.project.at(a, b)));
    }
    delta.set_row(t, out);
  }
  STENDO_ASSERT(is_module_map(q.module, OX, delta), "cone connecting map not a module map");
  FrobMap conn;
  conn.src = W;
  conn.dst = X1;
  conn.mod = delta;
  return {W, qmap, conn};
}

ModBackend::Stripped ModBackend::strip(ObjId X) {
  const Fp& F = field();
  const FDModule& M = objects_[X];
  if (M.dim() == 0) return {X, Matrix(F, 0, 0), Matrix(F, 0, 0)};
  auto end = end_algebra(M);
  auto st = radical_and_idempotents(end.algebra);
  std::vector<FDModule> kept;
  std::vector<Matrix> incs, prjs;
  for (const auto& e : st.idempotents) {
    Matrix em(F, M.dim(), M.dim());
    for (size_t t = 0; t < end.basis.size(); ++t)
      if (e[t]) em = em + end.basis[t].scaled(e[t]);
    std::vector<std::vector<uint32_t>> rows;
    for (int i = 0; i < em.rows(); ++i) rows.push_back(em.row(i));
    auto sub = submodule(M, rows);
    if (sub.module.dim() == 0) continue;
    if (is_projective_module(sub.module)) continue;
    RowSpace rs(F, M.dim());
    for (int i = 0; i < sub.embed.rows(); ++i) rs.add(sub.embed.row(i));
    Matrix pr(F, M.dim(), sub.module.dim());
    for (int i = 0; i < M.dim(); ++i) {
      auto c = rs.coords(em.row(i));
      STENDO_ASSERT(c.has_value(), "projection outside the summand");
      pr.set_row(i, *c);
    }
    kept.push_back(sub.module);
    incs.push_back(sub.embed);
    prjs.push_back(pr);
  }
  auto sum = direct_sum(A_, kept);
  ObjId S = store(sum.module);
  Matrix to(F, M.dim(), sum.module.dim());
  Matrix from(F, sum.module.dim(), M.dim());
  for (size_t t = 0; t < kept.size(); ++t) {
    to = to + prjs[t] * sum.include[t];
    from = from + sum.project[t] * incs[t];
  }
  return {S, to, from};
}

ModBackend::CoconeResult ModBackend::cocone(const FrobMap& f) {
  const FDModule& Y = objects_[f.dst];
  auto cov = projective_cover(Y);
  auto mid = direct_sum(A_, {objects_[f.src], cov.P});
  Matrix onto = f.mod->vstack(cov.epi);
  STENDO_ASSERT(onto.rank() == Y.dim(), "cocone map must be surjective");
  auto sub = submodule(mid.module, left_kernel(onto));
  ObjId Zraw = store(sub.module);
  Matrix g_raw = sub.embed * mid.project[0];
  auto stripped = strip(Zraw);
  FrobMap g;
  g.src = stripped.obj;
  g.dst = f.src;
  g.mod = stripped.from_stripped * g_raw;
  return {stripped.obj, g};
}

ExactCompletion ModBackend::complete_to_exact(const FrobMap& f) {
  const FDModule& X = objects_[f.src];
  const FDModule& Y = objects_[f.dst];
  auto cov = projective_cover(Y);
  auto mid = direct_sum(A_, {X, cov.P});
  Matrix onto = f.mod->vstack(cov.epi);
  STENDO_ASSERT(onto.rank() == Y.dim(), "completion epi must be surjective");
  auto sub = submodule(mid.module, left_kernel(onto));
  ExactCompletion out;
  out.Z = store(sub.module);
  out.P = store(cov.P);
  out.mid_size = mid.module.dim();
  FrobMap g;
  g.src = out.Z;
  g.dst = f.src;
  g.mod = sub.embed * mid.project[0];
  out.z_to_x = g;
  STENDO_ASSERT(sub.module.dim() == X.dim() + cov.P.dim() - Y.dim(), "completion rank identity");
  STENDO_ASSERT((sub.embed * onto).is_zero(), "kernel composes to zero");
  out.certificates.push_back("dim Z = dim X + dim P - dim Y = " +
                             std::to_string(sub.module.dim()));
  out.certificates.push_back("kernel composes to zero; (f, p) surjective by rank");
  return out;
}

StableIso ModBackend::stably_isomorphic(ObjId X, ObjId Y, Rng& rng) {
  bool zx = is_stably_zero(X), zy = is_stably_zero(Y);
  if (zx || zy) {
    if (zx && zy) return {true, true, zero_map(X, Y), "both stably zero"};
    return {false, true, std::nullopt, "exactly one side stably zero"};
  }
  auto sx = strip(X), sy = strip(Y);
  auto iso = is_isomorphic(objects_[sx.obj], objects_[sy.obj], rng);
  if (iso.verdict == IsoResult::Verdict::Yes) {
    FrobMap w;
    w.src = X;
    w.dst = Y;
    w.mod = sx.to_stripped * (*iso.witness) * sy.from_stripped;
    return {true, true, w, iso.reason};
  }
  if (iso.verdict == IsoResult::Verdict::No) return {false, true, std::nullopt, iso.reason};
  return {false, false, std::nullopt, iso.reason};
}

// ----------------------------------------------------------------- MFBackend

MFBackend::MFBackend(MFRingPtr R) : R_(std::move(R)) {
  for (const auto& m : bikr_tilting(R_)) tilting_.push_back(store_rank1_sum({m}));
}

void MFBackend::verify_mf(const MFObj& o) const {
  const Fp& F = R_->field();
  int r = o.rank();
  PolyMat fI = pm_zero(F, r, r);
  for (int i = 0; i < r; ++i) fI[i][i] = R_->f();
  STENDO_ASSERT(pm_equal(pm_mul(o.phi, o.psi, F), fI), "phi*psi must be f*I");
  STENDO_ASSERT(pm_equal(pm_mul(o.psi, o.phi, F), fI), "psi*phi must be f*I");
}

ObjId MFBackend::store(MFObj obj) {
  verify_mf(obj);
  for (size_t i = 0; i < objects_.size(); ++i) {
    if (objects_[i].rk1.has_value() && obj.rk1.has_value() && *objects_[i].rk1 == *obj.rk1)
      return static_cast<ObjId>(i);
    if (!objects_[i].rk1.has_value() && !obj.rk1.has_value() &&
        pm_equal(objects_[i].phi, obj.phi) && pm_equal(objects_[i].psi, obj.psi))
      return static_cast<ObjId>(i);
  }
  objects_.push_back(std::move(obj));
  return static_cast<ObjId>(objects_.size()) - 1;
}

ObjId MFBackend::store_rank1_sum(std::vector<MF1> parts) {
  const Fp& F = R_->field();
  int r = static_cast<int>(parts.size());
  MFObj o;
  o.phi = pm_zero(F, r, r);
  o.psi = pm_zero(F, r, r);
  for (int i = 0; i < r; ++i) {
    o.phi[i][i] = R_->g_of(parts[i]);
    o.psi[i][i] = R_->gprime_of(parts[i]);
  }
  o.rk1 = std::move(parts);
  return store(std::move(o));
}

const std::vector<MF1>& MFBackend::rk1_of(ObjId X) const {
  STENDO_ASSERT(objects_[X].rk1.has_value(), "object is not a sum of rank-1 factorizations");
  return *objects_[X].rk1;
}

bool MFBackend::is_stably_zero(ObjId X) {
  if (is_rk1_sum(X)) {
    for (const auto& m : rk1_of(X))
      if (!R_->is_stably_zero(m)) return false;
    return true;
  }
  return false;  // blocks are assessed through functor-level certificates
}

int MFBackend::obj_size(ObjId X) const { return objects_[X].rank(); }

std::string MFBackend::obj_label(ObjId X) const {
  if (objects_[X].rk1.has_value()) {
    std::string s = "sum(";
    for (size_t i = 0; i < objects_[X].rk1->size(); ++i) {
      if (i) s += ", ";
      s += "{";
      for (size_t j = 0; j < (*objects_[X].rk1)[i].subset.size(); ++j) {
        if (j) s += ",";
        s += std::to_string((*objects_[X].rk1)[i].subset[j]);
      }
      s += "}";
    }
    return s + ")";
  }
  return "mf(rank " + std::to_string(objects_[X].rank()) + ")";
}

ObjId MFBackend::zero_object() { return store_rank1_sum({}); }

ObjId MFBackend::sum(const std::vector<ObjId>& parts) {
  bool all_rk1 = true;
  for (ObjId p : parts)
    if (!is_rk1_sum(p)) all_rk1 = false;
  const Fp& F = R_->field();
  if (all_rk1) {
    std::vector<MF1> joined;
    for (ObjId p : parts)
      for (const auto& m : rk1_of(p)) joined.push_back(m);
    return store_rank1_sum(std::move(joined));
  }
  MFObj o;
  int total = 0;
  for (ObjId p : parts) total += objects_[p].rank();
  o.phi = pm_zero(F, total, total);
  o.psi = pm_zero(F, total, total);
  int off = 0;
  for (ObjId p : parts) {
    int r = objects_[p].rank();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        o.phi[off + i][off + j] = objects_[p].phi[i][j];
        o.psi[off + i][off + j] = objects_[p].psi[i][j];
      }
    off += r;
  }
  return store(std::move(o));
}

ObjId MFBackend::suspend(ObjId X, int k) {
  if (k % 2 == 0) return X;  // the swap is an involution on the nose
  auto key = std::make_pair(X, 1);
  auto it = suspend_cache_.find(key);
  if (it != suspend_cache_.end()) return it->second;
  const MFObj o = objects_[X];
  MFObj s;
  s.phi = o.psi;
  s.psi = o.phi;
  if (o.rk1.has_value()) {
    std::vector<MF1> sw;
    for (const auto& m : *o.rk1) sw.push_back(R_->swap(m));
    s.rk1 = std::move(sw);
  }
  ObjId sid = store(std::move(s));
  suspend_cache_[key] = sid;
  suspend_cache_[{sid, 1}] = X;
  return sid;
}

std::shared_ptr<StableMF1Hom> MFBackend::rk1_hom(ObjId X, ObjId Y, int i, int j) {
  ObjId xs = store_rank1_sum({rk1_of(X)[i]});
  ObjId ys = store_rank1_sum({rk1_of(Y)[j]});
  auto key = std::make_pair(xs, ys);
  auto it = rk1_hom_cache_.find(key);
  if (it == rk1_hom_cache_.end())
    it = rk1_hom_cache_
             .emplace(key, std::make_shared<StableMF1Hom>(R_, rk1_of(X)[i], rk1_of(Y)[j]))
             .first;
  return it->second;
}

MFBackend::BlockHom& MFBackend::block_hom(ObjId Tsum, ObjId W) {
  auto key = std::make_pair(Tsum, W);
  auto it = block_hom_cache_.find(key);
  if (it != block_hom_cache_.end()) return it->second;
  const Fp& F = R_->field();
  const MF1& src = rk1_of(Tsum)[0];
  Poly2 g = R_->g_of(src), gp = R_->gprime_of(src);
  const MFObj& o = objects_[W];
  int r = o.rank();
  // chain maps: pairs (U0, U1) stacked in S^{2r} with U0*g = phi*U1
  std::vector<std::vector<Poly2>> M(r, std::vector<Poly2>(2 * r, Poly2(F)));
  for (int i = 0; i < r; ++i) {
    M[i][i] = g;
    for (int j = 0; j < r; ++j) M[i][r + j] = o.phi[i][j].negated();
  }
  auto K = poly_matrix_kernel(M, F, 2 * r);
  // homotopies: (phi s, s g) and (gp t, psi t), s = t = basis vectors
  std::vector<PolyVec> H;
  for (int i = 0; i < r; ++i) {
    PolyVec h1 = PolyVec::zero(F, 2 * r);
    for (int a = 0; a < r; ++a) h1.c[a] = o.phi[a][i];
    h1.c[r + i] = g;
    H.push_back(h1);
    PolyVec h2 = PolyVec::zero(F, 2 * r);
    h2.c[i] = gp;
    for (int a = 0; a < r; ++a) h2.c[r + a] = o.psi[a][i];
    H.push_back(h2);
  }
  BlockHom bh;
  bh.rank = r;
  bh.quot = std::make_shared<FiniteModQuotient>(F, 2 * r, H, K);
  return block_hom_cache_.emplace(key, std::move(bh)).first->second;
}

int MFBackend::stable_dim(ObjId X, ObjId Y) {
  int total = 0;
  const auto& srcs = rk1_of(X);
  for (size_t s = 0; s < srcs.size(); ++s) {
    if (is_rk1_sum(Y)) {
      for (size_t t = 0; t < rk1_of(Y).size(); ++t)
        total += rk1_hom(X, Y, static_cast<int>(s), static_cast<int>(t))->dim();
    } else {
      ObjId xs = store_rank1_sum({srcs[s]});
      total += block_hom(xs, Y).quot->dim();
    }
  }
  return total;
}

FrobMap MFBackend::stable_basis_map(ObjId X, ObjId Y, int t) {
  const Fp& F = R_->field();
  const auto& srcs = rk1_of(X);
  int rY = objects_[Y].rank();
  int rX = objects_[X].rank();
  FrobMap out;
  out.src = X;
  out.dst = Y;
  PolyMat U0 = pm_zero(F, rY, rX), U1 = pm_zero(F, rY, rX);
  int seen = 0;
  for (size_t s = 0; s < srcs.size(); ++s) {
    if (is_rk1_sum(Y)) {
      for (size_t u = 0; u < rk1_of(Y).size(); ++u) {
        auto hom = rk1_hom(X, Y, static_cast<int>(s), static_cast<int>(u));
        if (t < seen + hom->dim()) {
          Poly2 alpha = hom->rep(t - seen);
          Poly2 g = R_->g_of(srcs[s]);
          Poly2 h = R_->g_of(rk1_of(Y)[u]);
          auto beta = (alpha * g).divided_by(h);
          STENDO_ASSERT(beta.has_value(), "chain complement division failed");
          U0[u][s] = alpha;
          U1[u][s] = *beta;
          out.mf = {std::move(U0), std::move(U1)};
          return out;
        }
        seen += hom->dim();
      }
    } else {
      ObjId xs = store_rank1_sum({srcs[s]});
      auto& bh = block_hom(xs, Y);
      if (t < seen + bh.quot->dim()) {
        const PolyVec& v = bh.quot->basis()[t - seen];
        for (int a = 0; a < rY; ++a) {
          U0[a][s] = v.c[a];
          U1[a][s] = v.c[rY + a];
        }
        out.mf = {std::move(U0), std::move(U1)};
        return out;
      }
      seen += bh.quot->dim();
    }
  }
  STENDO_ASSERT(false, "stable basis index out of range");
  return out;
}

std::vector<uint32_t> MFBackend::stable_coords(const FrobMap& f) {
  const Fp& F = R_->field();
  ObjId X = f.src, Y = f.dst;
  const auto& srcs = rk1_of(X);
  const auto& U0 = f.mf->first;
  const auto& U1 = f.mf->second;
  std::vector<uint32_t> out;
  for (size_t s = 0; s < srcs.size(); ++s) {
    if (is_rk1_sum(Y)) {
      for (size_t u = 0; u < rk1_of(Y).size(); ++u) {
        auto hom = rk1_hom(X, Y, static_cast<int>(s), static_cast<int>(u));
        auto c = hom->coords_of_multiplier(U0[u][s]);
        out.insert(out.end(), c.begin(), c.end());
      }
    } else {
      ObjId xs = store_rank1_sum({srcs[s]});
      auto& bh = block_hom(xs, Y);
      PolyVec v = PolyVec::zero(F, 2 * bh.rank);
      for (int a = 0; a < bh.rank; ++a) {
        v.c[a] = U0[a][s];
        v.c[bh.rank + a] = U1[a][s];
      }
      auto c = bh.quot->coords(v);
      STENDO_ASSERT(c.has_value(), "stable coordinates outside the computed span");
      out.insert(out.end(), c->begin(), c->end());
    }
  }
  return out;
}

FrobMap MFBackend::identity(ObjId X) {
  const Fp& F = R_->field();
  FrobMap f;
  f.src = f.dst = X;
  f.mf = {pm_identity(F, objects_[X].rank()), pm_identity(F, objects_[X].rank())};
  return f;
}

FrobMap MFBackend::zero_map(ObjId X, ObjId Y) {
  const Fp& F = R_->field();
  FrobMap f;
  f.src = X;
  f.dst = Y;
  f.mf = {pm_zero(F, objects_[Y].rank(), objects_[X].rank()),
          pm_zero(F, objects_[Y].rank(), objects_[X].rank())};
  return f;
}

FrobMap MFBackend::add_maps(const FrobMap& f, const FrobMap& g) {
  STENDO_ASSERT(f.src == g.src && f.dst == g.dst, "map addition shape");
  FrobMap out = f;
  out.mf = {pm_add(f.mf->first, g.mf->first), pm_add(f.mf->second, g.mf->second)};
  return out;
}

FrobMap MFBackend::scale_map(const FrobMap& f, uint32_t c) {
  FrobMap out = f;
  out.mf = {pm_scale(f.mf->first, c), pm_scale(f.mf->second, c)};
  return out;
}

FrobMap MFBackend::compose(const FrobMap& f, const FrobMap& g) {
  STENDO_ASSERT(f.dst == g.src, "composition mismatch");
  const Fp& F = R_->field();
  FrobMap out;
  out.src = f.src;
  out.dst = g.dst;
  // rank-0 objects lose shape information inside empty matrices, so take
  // dimensions from the objects, not from the payloads
  int rout = objects_[g.dst].rank();
  int cout = objects_[f.src].rank();
  int inner = objects_[f.dst].rank();
  if (rout == 0 || cout == 0 || inner == 0) {
    out.mf = {pm_zero(F, rout, cout), pm_zero(F, rout, cout)};
    return out;
  }
  out.mf = {pm_mul(g.mf->first, f.mf->first, F), pm_mul(g.mf->second, f.mf->second, F)};
  return out;
}

FrobMap MFBackend::suspend_map(const FrobMap& f, int k) {
  if (k % 2 == 0) return f;
  FrobMap out;
  out.src = suspend(f.src, 1);
  out.dst = suspend(f.dst, 1);
  out.mf = {f.mf->second, f.mf->first};
  return out;
}

MFBackend::ConeResult MFBackend::cone(const FrobMap& f) {
  const Fp& F = R_->field();
  const MFObj X = objects_[f.src];
  const MFObj Y = objects_[f.dst];
  const PolyMat U0 = f.mf->first;
  const PolyMat U1 = f.mf->second;
  int rX = X.rank(), rY = Y.rank();
  STENDO_ASSERT(pm_equal(pm_mul(U0, X.phi, F), pm_mul(Y.phi, U1, F)), "cone input chain map (0)");
  STENDO_ASSERT(pm_equal(pm_mul(U1, X.psi, F), pm_mul(Y.psi, U0, F)), "cone input chain map (1)");
  MFObj C;
  C.phi = pm_zero(F, rY + rX, rY + rX);
  C.psi = pm_zero(F, rY + rX, rY + rX);
  for (int i = 0; i < rY; ++i)
    for (int j = 0; j < rY; ++j) {
      C.phi[i][j] = Y.phi[i][j];
      C.psi[i][j] = Y.psi[i][j];
    }
  for (int i = 0; i < rY; ++i)
    for (int j = 0; j < rX; ++j) {
      C.phi[i][rY + j] = U0[i][j];
      C.psi[i][rY + j] = U1[i][j].negated();
    }
  for (int i = 0; i < rX; ++i)
    for (int j = 0; j < rX; ++j) {
      C.phi[rY + i][rY + j] = X.psi[i][j];
      C.psi[rY + i][rY + j] = X.phi[i][j];
    }
  ObjId W = store(std::move(C));
  FrobMap q;
  q.src = f.dst;
  q.dst = W;
  {
    PolyMat Q0 = pm_zero(F, rY + rX, rY), Q1 = pm_zero(F, rY + rX, rY);
    for (int i = 0; i < rY; ++i) {
      Q0[i][i] = Poly2::constant(F, 1);
      Q1[i][i] = Poly2::constant(F, 1);
    }
    q.mf = {std::move(Q0), std::move(Q1)};
  }
  FrobMap conn;
  conn.src = W;
  conn.dst = suspend(f.src, 1);
  {
    PolyMat P0 = pm_zero(F, rX, rY + rX), P1 = pm_zero(F, rX, rY + rX);
    for (int i = 0; i < rX; ++i) {
      P0[i][rY + i] = Poly2::constant(F, 1);
      P1[i][rY + i] = Poly2::constant(F, 1);
    }
    conn.mf = {std::move(P0), std::move(P1)};
  }
  const MFObj& Wo = objects_[W];
  STENDO_ASSERT(pm_equal(pm_mul(q.mf->first, Y.phi, F), pm_mul(Wo.phi, q.mf->second, F)),
                "cone inclusion chain map");
  const MFObj& SX = objects_[conn.dst];
  STENDO_ASSERT(pm_equal(pm_mul(conn.mf->first, Wo.phi, F), pm_mul(SX.phi, conn.mf->second, F)),
                "cone projection chain map");
  return {W, q, conn};
}

MFBackend::CoconeResult MFBackend::cocone(const FrobMap& f) {
  auto c = cone(f);
  FrobMap g;
  g.src = suspend(c.obj, -1);
  g.dst = f.src;
  g.mf = {c.connecting.mf->second, c.connecting.mf->first};
  return {g.src, g};
}

ExactCompletion MFBackend::complete_to_exact(const FrobMap& f) {
  auto c = cocone(f);
  ExactCompletion out;
  out.Z = c.obj;
  std::vector<MF1> frees;
  std::vector<int> full;
  for (int i = 0; i < R_->nfactors(); ++i) full.push_back(i);
  for (int i = 0; i < objects_[f.dst].rank(); ++i) frees.push_back(R_->object(full));
  out.P = store_rank1_sum(frees);
  out.mid_size = objects_[f.src].rank() + objects_[f.dst].rank();
  out.z_to_x = c.g;
  out.certificates.push_back("mapping-cone identities verified: phi*psi = psi*phi = f*I");
  out.certificates.push_back("triangle maps are chain maps (checked symbolically)");
  return out;
}

StableIso MFBackend::stably_isomorphic(ObjId X, ObjId Y, Rng& rng) {
  (void)rng;
  if (is_rk1_sum(X) && is_rk1_sum(Y)) {
    bool zx = is_stably_zero(X), zy = is_stably_zero(Y);
    if (zx && zy) return {true, true, zero_map(X, Y), "both stably zero"};
    auto nontrivial = [&](ObjId O) {
      std::vector<std::vector<int>> out;
      for (const auto& m : rk1_of(O))
        if (!R_->is_stably_zero(m)) out.push_back(m.subset);
      std::sort(out.begin(), out.end());
      return out;
    };
    auto nx = nontrivial(X), ny = nontrivial(Y);
    if (nx != ny) return {false, true, std::nullopt, "distinct rank-1 factor subsets"};
    const Fp& F = R_->field();
    const auto& xs = rk1_of(X);
    const auto& ys = rk1_of(Y);
    PolyMat U0 = pm_zero(F, static_cast<int>(ys.size()), static_cast<int>(xs.size()));
    PolyMat U1 = U0;
    std::vector<bool> used(ys.size(), false);
    for (size_t s = 0; s < xs.size(); ++s) {
      if (R_->is_stably_zero(xs[s])) continue;
      for (size_t t = 0; t < ys.size(); ++t) {
        if (used[t] || !(ys[t] == xs[s])) continue;
        U0[t][s] = Poly2::constant(F, 1);
        U1[t][s] = Poly2::constant(F, 1);
        used[t] = true;
        break;
      }
    }
    FrobMap w;
    w.src = X;
    w.dst = Y;
    w.mf = {std::move(U0), std::move(U1)};
    return {true, true, w, "matching rank-1 subsets"};
  }
  throw Inconclusive(
      "object-level isomorphism testing for block factorizations is unsupported; "
      "functor-level certificates are used instead");
}

}  // namespace stendo
