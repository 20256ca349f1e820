#include "stendo/modpoly.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace stendo {

PolyVec pv_add(const PolyVec& a, const PolyVec& b) {
  STENDO_ASSERT(a.ncomp() == b.ncomp(), "pv_add ncomp");
  PolyVec r = a;
  for (int i = 0; i < a.ncomp(); ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

PolyVec pv_sub(const PolyVec& a, const PolyVec& b) {
  STENDO_ASSERT(a.ncomp() == b.ncomp(), "pv_sub ncomp");
  PolyVec r = a;
  for (int i = 0; i < a.ncomp(); ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

PolyVec pv_scale(const PolyVec& a, uint32_t s, const Fp& F) {
  (void)F;
  PolyVec r = a;
  for (auto& p : r.c) p = p.scaled(s);
  return r;
}

PolyVec pv_times_mono(const PolyVec& a, Mono m, uint32_t s, const Fp& F) {
  (void)F;
  PolyVec r = a;
  for (auto& p : r.c) p = p.times_mono(m, s);
  return r;
}

PolyVec pv_times_poly(const PolyVec& a, const Poly2& p) {
  PolyVec r = a;
  for (auto& q : r.c) q = q * p;
  return r;
}

std::optional<ModTerm> pv_leading(const PolyVec& v) {
  std::optional<ModTerm> best;
  for (int i = 0; i < v.ncomp(); ++i) {
    if (v.c[i].is_zero()) continue;
    Mono m = v.c[i].lm();
    if (!best || mono_less(best->m, m)) {
      best = ModTerm{i, m, v.c[i].lc()};
    }
    // same monomial: lower component wins, and components scan in order
  }
  return best;
}

PvDivision pv_divmod(const PolyVec& f, const std::vector<PolyVec>& G, const Fp& F) {
  PvDivision out;
  out.q.assign(G.size(), Poly2(F));
  out.r = PolyVec::zero(F, f.ncomp());
  PolyVec w = f;
  // leading terms of the divisors
  std::vector<std::optional<ModTerm>> lts(G.size());
  for (size_t k = 0; k < G.size(); ++k) lts[k] = pv_leading(G[k]);

  while (true) {
    auto lt = pv_leading(w);
    if (!lt) break;
    bool reduced = false;
    for (size_t k = 0; k < G.size(); ++k) {
      if (!lts[k]) continue;
      if (lts[k]->comp != lt->comp) continue;
      if (!lts[k]->m.divides(lt->m)) continue;
      Mono mm = lt->m / lts[k]->m;
      uint32_t cc = F.div(lt->coeff, lts[k]->coeff);
      out.q[k] = out.q[k] + Poly2::monomial(F, mm, cc);
      w = pv_sub(w, pv_times_mono(G[k], mm, cc, F));
      reduced = true;
      break;
    }
    if (!reduced) {
      // move the leading term into the remainder
      out.r.c[lt->comp] = out.r.c[lt->comp] + Poly2::monomial(F, lt->m, lt->coeff);
      Poly2 t = Poly2::monomial(F, lt->m, lt->coeff);
      w.c[lt->comp] = w.c[lt->comp] - t;
    }
  }
  return out;
}

namespace {

PolyVec unit_vec(Fp F, int n, int i) {
  PolyVec v = PolyVec::zero(F, n);
  v.c[i] = Poly2::constant(F, 1);
  return v;
}

struct TrackedGB {
  std::vector<PolyVec> H;
  std::vector<PolyVec> A;  // H[k] = sum_j A[k].c[j] * gens[j]
};

// Buchberger with expression tracking. No pair-skipping criteria: the same
// pair walk is reused for syzygy extraction, which needs every reduction.
TrackedGB tracked_buchberger(const std::vector<PolyVec>& gens, const Fp& F, bool track) {
  int s = static_cast<int>(gens.size());
  TrackedGB tg;
  for (int j = 0; j < s; ++j) {
    if (gens[j].is_zero()) continue;
    tg.H.push_back(gens[j]);
    if (track) {
      PolyVec e = PolyVec::zero(F, s);
      e.c[j] = Poly2::constant(F, 1);
      tg.A.push_back(e);
    }
  }
  std::deque<std::pair<int, int>> pairs;
  for (size_t i = 0; i < tg.H.size(); ++i)
    for (size_t j = i + 1; j < tg.H.size(); ++j) pairs.push_back({(int)i, (int)j});

  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    auto li = pv_leading(tg.H[i]);
    auto lj = pv_leading(tg.H[j]);
    if (!li || !lj || li->comp != lj->comp) continue;
    Mono L = mono_lcm(li->m, lj->m);
    Mono ui = L / li->m, uj = L / lj->m;
    PolyVec sp = pv_sub(pv_times_mono(tg.H[i], ui, F.inv(li->coeff), F),
                        pv_times_mono(tg.H[j], uj, F.inv(lj->coeff), F));
    auto dv = pv_divmod(sp, tg.H, F);
    if (dv.r.is_zero()) continue;
    if (track) {
      PolyVec expr = pv_sub(pv_times_mono(tg.A[i], ui, F.inv(li->coeff), F),
                            pv_times_mono(tg.A[j], uj, F.inv(lj->coeff), F));
      for (size_t k = 0; k < tg.H.size(); ++k)
        expr = pv_sub(expr, pv_times_poly(tg.A[k], dv.q[k]));
      tg.A.push_back(expr);
    }
    tg.H.push_back(dv.r);
    int newi = static_cast<int>(tg.H.size()) - 1;
    for (int k = 0; k < newi; ++k) pairs.push_back({k, newi});
  }
  return tg;
}

bool pv_term_order_less(const PolyVec& a, const PolyVec& b) {
  auto la = pv_leading(a), lb = pv_leading(b);
  if (!la) return true;
  if (!lb) return false;
  if (!(la->m == lb->m)) return mono_less(la->m, lb->m);
  return la->comp > lb->comp;
}

}  // namespace

std::vector<PolyVec> module_groebner(std::vector<PolyVec> gens, const Fp& F) {
  auto tg = tracked_buchberger(gens, F, false);
  // inter-reduce: drop elements whose leading term is divisible by another's,
  // then take tail normal forms and normalize to monic.
  std::vector<PolyVec> H = tg.H;
  std::sort(H.begin(), H.end(), pv_term_order_less);
  std::vector<PolyVec> minimal;
  for (size_t i = 0; i < H.size(); ++i) {
    auto li = pv_leading(H[i]);
    bool redundant = false;
    for (size_t j = 0; j < minimal.size(); ++j) {
      auto lj = pv_leading(minimal[j]);
      if (lj->comp == li->comp && lj->m.divides(li->m)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(H[i]);
  }
  std::vector<PolyVec> out;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<PolyVec> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    auto dv = pv_divmod(minimal[i], others, F);
    if (dv.r.is_zero()) continue;
    auto lt = pv_leading(dv.r);
    out.push_back(pv_scale(dv.r, F.inv(lt->coeff), F));
  }
  std::sort(out.begin(), out.end(), pv_term_order_less);
  return out;
}

std::vector<PolyVec> syzygies(const std::vector<PolyVec>& gens, const Fp& F) {
  int s = static_cast<int>(gens.size());
  if (s == 0) return {};
  int ncomp = gens[0].ncomp();
  auto tg = tracked_buchberger(gens, F, true);
  int t = static_cast<int>(tg.H.size());

  // Syzygies of H from all pair reductions over the completed basis.
  std::vector<PolyVec> syzH;
  for (int i = 0; i < t; ++i) {
    for (int j = i + 1; j < t; ++j) {
      auto li = pv_leading(tg.H[i]);
      auto lj = pv_leading(tg.H[j]);
      if (li->comp != lj->comp) continue;
      Mono L = mono_lcm(li->m, lj->m);
      Mono ui = L / li->m, uj = L / lj->m;
      PolyVec sp = pv_sub(pv_times_mono(tg.H[i], ui, F.inv(li->coeff), F),
                          pv_times_mono(tg.H[j], uj, F.inv(lj->coeff), F));
      auto dv = pv_divmod(sp, tg.H, F);
      STENDO_ASSERT(dv.r.is_zero(), "S-pair must reduce to zero over a completed basis");
      PolyVec sigma = PolyVec::zero(F, t);
      sigma.c[i] = Poly2::monomial(F, ui, F.inv(li->coeff));
      sigma.c[j] = sigma.c[j] - Poly2::monomial(F, uj, F.inv(lj->coeff));
      for (int k = 0; k < t; ++k) sigma.c[k] = sigma.c[k] - dv.q[k];
      syzH.push_back(sigma);
    }
  }

  // B: gens[j] = sum_k B[j][k] H[k]
  std::vector<std::vector<Poly2>> B(s);
  for (int j = 0; j < s; ++j) {
    auto dv = pv_divmod(gens[j], tg.H, F);
    STENDO_ASSERT(dv.r.is_zero(), "generator must reduce to zero over its own basis");
    B[j] = dv.q;
  }

  std::vector<PolyVec> out;
  auto push_checked = [&](PolyVec v) {
    if (v.is_zero()) return;
    // verify: sum v_j gens_j = 0
    PolyVec acc = PolyVec::zero(F, ncomp);
    for (int j = 0; j < s; ++j) acc = pv_add(acc, pv_times_poly(gens[j], v.c[j]));
    STENDO_ASSERT(acc.is_zero(), "syzygy verification failed");
    out.push_back(std::move(v));
  };

  // sigma * A for sigma in Syz(H)
  for (const auto& sigma : syzH) {
    PolyVec v = PolyVec::zero(F, s);
    for (int k = 0; k < t; ++k)
      if (!sigma.c[k].is_zero()) v = pv_add(v, pv_times_poly(tg.A[k], sigma.c[k]));
    push_checked(std::move(v));
  }
  // rows of I - B A
  for (int j = 0; j < s; ++j) {
    PolyVec v = unit_vec(F, s, j);
    for (int k = 0; k < t; ++k)
      if (!B[j][k].is_zero()) v = pv_sub(v, pv_times_poly(tg.A[k], B[j][k]));
    push_checked(std::move(v));
  }
  return out;
}

std::vector<PolyVec> poly_matrix_kernel(const std::vector<std::vector<Poly2>>& M, const Fp& F,
                                        int ncols) {
  int m = static_cast<int>(M.size());
  std::vector<PolyVec> cols;
  for (int j = 0; j < ncols; ++j) {
    PolyVec v = PolyVec::zero(F, m);
    for (int i = 0; i < m; ++i) v.c[i] = M[i][j];
    cols.push_back(std::move(v));
  }
  return syzygies(cols, F);
}

FiniteModQuotient::FiniteModQuotient(Fp F, int ncomp, const std::vector<PolyVec>& H_gens,
                                     const std::vector<PolyVec>& K_gens, int dim_budget)
    : F_(F), n_(ncomp) {
  HG_ = module_groebner(H_gens, F_);
  std::deque<PolyVec> work;
  for (const auto& k : K_gens) work.push_back(k);
  Poly2 X = Poly2::var_x(F_), Y = Poly2::var_y(F_);
  while (!work.empty()) {
    PolyVec v = normal_form(work.front());
    work.pop_front();
    auto sp = to_sparse(v);
    if (!reduce_sparse(sp, nullptr)) continue;  // dependent: nothing new
    // independent: normalize the reduced vector so its leading coefficient is 1
    uint32_t lead = sp.front().second;
    uint32_t inv = F_.inv(lead);
    for (auto& [key, c] : sp) c = F_.mul(c, inv);
    PolyVec rep = from_sparse(sp);
    basis_.push_back(rep);
    echelon_.push_back(Reduced{sp, rep});
    if (static_cast<int>(basis_.size()) > dim_budget)
      throw Inconclusive("module quotient did not stabilize within the dimension budget");
    work.push_back(pv_times_poly(rep, X));
    work.push_back(pv_times_poly(rep, Y));
  }
}

PolyVec FiniteModQuotient::normal_form(const PolyVec& v) const {
  return pv_divmod(v, HG_, F_).r;
}

std::vector<std::pair<FiniteModQuotient::Key, uint32_t>> FiniteModQuotient::to_sparse(
    const PolyVec& v) const {
  std::vector<std::pair<Key, uint32_t>> out;
  for (int i = 0; i < v.ncomp(); ++i)
    for (const auto& [m, c] : v.c[i].terms()) out.push_back({Key{i, m}, c});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return b.first < a.first; });
  return out;
}

PolyVec FiniteModQuotient::from_sparse(const std::vector<std::pair<Key, uint32_t>>& sp) const {
  PolyVec v = PolyVec::zero(F_, n_);
  for (const auto& [key, c] : sp) v.c[key.comp].add_term(key.m, c);
  for (auto& p : v.c) p.normalize();
  return v;
}

bool FiniteModQuotient::reduce_sparse(std::vector<std::pair<Key, uint32_t>>& v,
                                      std::vector<uint32_t>* used) const {
  if (used) used->assign(echelon_.size(), 0);
  while (!v.empty()) {
    const Key lead = v.front().first;
    int hit = -1;
    for (size_t k = 0; k < echelon_.size(); ++k)
      if (echelon_[k].sparse.front().first == lead) {
        hit = static_cast<int>(k);
        break;
      }
    if (hit < 0) return true;  // leading key matches no pivot: independent
    uint32_t f = v.front().second;  // pivot coefficients are 1
    if (used) (*used)[hit] = F_.add((*used)[hit], f);
    std::map<Key, uint32_t> acc;
    for (const auto& [key, c] : v) acc[key] = c;
    for (const auto& [key, c] : echelon_[hit].sparse) {
      uint32_t cur = acc.count(key) ? acc[key] : 0;
      acc[key] = F_.sub(cur, F_.mul(f, c));
    }
    v.clear();
    for (const auto& [key, c] : acc)
      if (c) v.push_back({key, c});
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return b.first < a.first; });
  }
  return false;
}

std::optional<std::vector<uint32_t>> FiniteModQuotient::coords(const PolyVec& v) const {
  PolyVec nf = normal_form(v);
  auto sp = to_sparse(nf);
  std::vector<uint32_t> used;
  bool leftover = reduce_sparse(sp, &used);
  if (leftover) return std::nullopt;
  return used;
}

}  // namespace stendo
