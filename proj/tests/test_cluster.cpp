#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stendo/cluster.hpp"

using namespace stendo;

namespace {

AlgPtr kx(Fp F, int n) {
  std::vector<std::vector<std::vector<uint32_t>>> table(
      n, std::vector<std::vector<uint32_t>>(n, std::vector<uint32_t>(n, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j < n) table[i][j][i + j] = 1;
  std::vector<uint32_t> unit(n, 0);
  unit[0] = 1;
  return std::make_shared<FDAlgebra>(F, table, unit);
}

FDModule cyclic_quotient(const AlgPtr& A, int m) {
  FDModule reg = regular_module(A);
  std::vector<std::vector<uint32_t>> rows;
  for (int i = m; i < A->dim(); ++i) {
    std::vector<uint32_t> v(A->dim(), 0);
    v[i] = 1;
    rows.push_back(v);
  }
  return quotient_module(reg, rows).module;
}

// the k[x]/(x^3) configuration: T = A + k[x]/(x^2) + k, d = 1
CTConfig nakayama_config(Fp F) {
  auto A = kx(F, 3);
  std::vector<FDModule> T = {regular_module(A), cyclic_quotient(A, 2), cyclic_quotient(A, 1)};
  CTConfig cfg;
  cfg.backend = std::make_shared<ModBackend>(A, T);
  cfg.summands = {0, 1, 2};
  cfg.d = 1;
  return cfg;
}

CTConfig bikr_config(Fp F, std::vector<const char*> polys, int d = 2) {
  std::vector<Poly2> fs;
  for (auto* s : polys) fs.push_back(Poly2::parse(F, s));
  auto R = std::make_shared<MFRing>(F, fs);
  auto be = std::make_shared<MFBackend>(R);
  CTConfig cfg;
  cfg.backend = be;
  for (int i = 0; i < be->n_tilting(); ++i) cfg.summands.push_back(be->tilting_summand(i));
  cfg.d = d;
  return cfg;
}

}  // namespace

TEST_CASE("mod backend: stable endomorphism algebra of the Nakayama configuration") {
  Fp F(5);
  Rng rng(11);
  auto cfg = nakayama_config(F);
  validate_config(cfg, rng);
  auto se = stable_end_algebra(cfg);
  REQUIRE(!se.gamma.trivial());
  // hand oracle: stable homs 1+1+1+1 between k[x]/(x^2) and k
  CHECK(se.gamma.gamma->dim() == 4);
  CHECK(se.gamma.vertex_summand.size() == 2);  // A is stably zero
  REQUIRE(se.lambda.has_value());
  CHECK(se.lambda->dim() == 14);  // the Auslander algebra
  // quiver: two vertices, arrows both ways, no loops
  auto q = quiver_of_gamma(*se.gamma.gamma);
  CHECK(q.vertices == 2);
  CHECK(q.arrow_counts[0][1] == 1);
  CHECK(q.arrow_counts[1][0] == 1);
  CHECK(q.loops_at(0) == 0);
  CHECK(q.loops_at(1) == 0);
}

TEST_CASE("mod backend: rigidity and lemma 2.1 for d = 1") {
  Fp F(5);
  Rng rng(12);
  auto cfg = nakayama_config(F);
  auto rig = check_rigid(cfg);
  CHECK(rig.rigid);  // vacuous for d = 1
  auto lem = syzygy_closure_check(cfg, rng);
  CHECK(lem.cond_negative_vanishing);
  CHECK(lem.cond_syzygy_closure);
  // Omega swaps k[x]/(x^2) and k: summands 1 <-> 2
  CHECK(lem.syzygy_permutation[1] == 2);
  CHECK(lem.syzygy_permutation[2] == 1);
}

TEST_CASE("mod backend: maximality with the Nakayama classification") {
  Fp F(5);
  Rng rng(13);
  auto cfg = nakayama_config(F);
  auto* mb = dynamic_cast<ModBackend*>(cfg.backend.get());
  std::vector<ObjId> candidates = {cfg.summands[0], cfg.summands[1], cfg.summands[2]};
  auto rep = check_maximal(cfg, candidates, rng);
  CHECK(rep.maximal);
  // dropping k from T with d = 1 fails maximality at the candidate k
  CTConfig cfg2;
  cfg2.backend = cfg.backend;
  cfg2.summands = {cfg.summands[0], cfg.summands[1]};
  cfg2.d = 1;
  auto rep2 = check_maximal(cfg2, candidates, rng);
  CHECK(!rep2.maximal);
  REQUIRE(rep2.failures.size() == 1);
  CHECK(rep2.failures[0] == 2);
  (void)mb;
}

TEST_CASE("mod backend: periodicity data, sigma permutes vertices, r = 2") {
  Fp F(5);
  Rng rng(14);
  auto cfg = nakayama_config(F);
  auto se = stable_end_algebra(cfg);
  auto tw = periodic_object_check(cfg, se.gamma, rng);
  REQUIRE(tw.sigma.has_value());
  REQUIRE(tw.r.has_value());
  CHECK(*tw.r == 2);
  CHECK(tw.r_status == "certified");
  // sigma swaps the two vertices
  auto perm = idempotent_class_permutation(*se.gamma.gamma, *tw.sigma);
  REQUIRE(perm.has_value());
  CHECK((*perm)[0] == 1);
  CHECK((*perm)[1] == 0);
}

TEST_CASE("mf backend: gamma of f = xy(x+y) is 6-dimensional with quiver 1<->2") {
  Fp F(5);
  Rng rng(15);
  auto cfg = bikr_config(F, {"x", "y", "x + y"});
  validate_config(cfg, rng);
  auto rig = check_rigid(cfg);
  CHECK(rig.rigid);
  auto lem = syzygy_closure_check(cfg, rng);
  CHECK(lem.cond_negative_vanishing);
  CHECK(lem.cond_syzygy_closure);
  auto se = stable_end_algebra(cfg);
  CHECK(se.lambda_infinite);
  REQUIRE(!se.gamma.trivial());
  CHECK(se.gamma.gamma->dim() == 6);  // colon-ideal oracle 2+2+1+1
  CHECK(se.gamma.vertex_summand.size() == 2);
  auto q = quiver_of_gamma(*se.gamma.gamma);
  CHECK(q.vertices == 2);
  CHECK(q.arrow_counts[0][1] == 1);
  CHECK(q.arrow_counts[1][0] == 1);
  CHECK(q.loops_at(0) == 0);
  CHECK(q.loops_at(1) == 0);
  CHECK(is_self_injective(se.gamma.gamma));
}

TEST_CASE("mf backend: swap gives r = 1 on the nose") {
  Fp F(5);
  Rng rng(16);
  auto cfg = bikr_config(F, {"x", "y", "x + y"});
  auto se = stable_end_algebra(cfg);
  auto tw = periodic_object_check(cfg, se.gamma, rng);
  REQUIRE(tw.r.has_value());
  CHECK(*tw.r == 1);
  // eta is the identity pairing (swap squared is the identity)
  CHECK(tw.permutation[0] == 0);
  CHECK(tw.permutation[1] == 1);
}

TEST_CASE("mf backend: gamma of f = xy is the field (semisimple)") {
  Fp F(5);
  Rng rng(17);
  auto cfg = bikr_config(F, {"x", "y"});
  auto se = stable_end_algebra(cfg);
  REQUIRE(!se.gamma.trivial());
  CHECK(se.gamma.gamma->dim() == 1);
  auto split = semisimple_split(*se.gamma.gamma);
  CHECK(!split.non_semisimple.has_value());
}

TEST_CASE("mf backend: gamma of f = x(x+y^2) has one vertex with a loop") {
  Fp F(5);
  Rng rng(18);
  auto cfg = bikr_config(F, {"x", "x + y^2"});
  auto se = stable_end_algebra(cfg);
  REQUIRE(!se.gamma.trivial());
  CHECK(se.gamma.gamma->dim() == 2);
  auto q = quiver_of_gamma(*se.gamma.gamma);
  CHECK(q.vertices == 1);
  CHECK(q.loops_at(0) == 1);
  CHECK(!pair_generates_max_ideal(Poly2::parse(F, "x"), Poly2::parse(F, "x + y^2")));
}

TEST_CASE("ej membership basics on the mf backend") {
  Fp F(5);
  auto cfg = bikr_config(F, {"x", "y", "x + y"});
  // d = 2: E_1 is everything
  CHECK(ej_membership(cfg, cfg.summands[0], 1));
  // E_d = add(T): summands belong
  CHECK(ej_membership(cfg, cfg.summands[0], 2));
  // T[1] belongs to E_{d-1}
  ObjId t1 = cfg.backend->suspend(cfg.summands[0], 1);
  CHECK(ej_membership(cfg, t1, 1));
}

TEST_CASE("realize simple modules over gamma for f = xy(x+y)") {
  Fp F(5);
  Rng rng(19);
  auto cfg = bikr_config(F, {"x", "y", "x + y"});
  auto se = stable_end_algebra(cfg);
  const auto& gd = se.gamma;
  // simple module at vertex v: one-dimensional, e_v acts as 1, radical acts 0
  for (int v = 0; v < 2; ++v) {
    std::vector<Matrix> act;
    for (int k = 0; k < gd.gamma->dim(); ++k) {
      Matrix m(F, 1, 1);
      // action = coefficient of e_v-part of the basis element on the vertex:
      // the simple at v is the quotient of e_v Gamma by its radical
      const auto& e = gd.basis_entries[k];
      if (e.from_vertex == v && e.to_vertex == v && e.local_index == 0) {
        // identity component acts as 1 (basis ordering puts the identity
        // first only by accident) -- instead compute through the idempotent
      }
      act.push_back(m);
    }
    // build the simple honestly: quotient of e_v Gamma by its radical subspace
    auto eproj = idempotent_projective(gd.gamma, gd.gamma->structure().idempotents[v]);
    const auto& st = gd.gamma->structure();
    std::vector<std::vector<uint32_t>> radrows;
    {
      RowSpace PJ(F, eproj.module.dim());
      for (const auto& r : st.radical_basis) {
        Matrix a = eproj.module.action(r);
        for (int i = 0; i < a.rows(); ++i) PJ.add(a.row(i));
      }
      Matrix B = PJ.basis_matrix();
      for (int i = 0; i < B.rows(); ++i) radrows.push_back(B.row(i));
    }
    FDModule simple = quotient_module(eproj.module, radrows).module;
    REQUIRE(simple.dim() == 1);
    auto res = realize_module(cfg, gd, simple, rng);
    CHECK(res.functor_isomorphic);
    CHECK(res.in_e_dminus1);
    // the realized object represents the simple: dims match
    auto FX = functor_module(cfg, gd, res.X);
    CHECK(FX.dim() == 1);
  }
}

TEST_CASE("realize a projective gamma-module returns the summand") {
  Fp F(5);
  Rng rng(20);
  auto cfg = bikr_config(F, {"x", "y", "x + y"});
  auto se = stable_end_algebra(cfg);
  const auto& gd = se.gamma;
  auto eproj = idempotent_projective(gd.gamma, gd.gamma->structure().idempotents[0]);
  auto res = realize_module(cfg, gd, eproj.module, rng);
  CHECK(res.functor_isomorphic);
  auto FX = functor_module(cfg, gd, res.X);
  CHECK(FX.dim() == eproj.module.dim());
}

TEST_CASE("theorem resolution certificates on the mf backend") {
  Fp F(5);
  Rng rng(21);
  auto cfg = bikr_config(F, {"x", "y", "x + y"});
  auto se = stable_end_algebra(cfg);
  const auto& gd = se.gamma;
  // X in add(T): degenerate shape
  auto tr0 = certified_resolution(cfg, gd, cfg.summands[0], rng);
  CHECK(tr0.all());
  // X = realization of each simple
  for (int v = 0; v < 2; ++v) {
    auto eproj = idempotent_projective(gd.gamma, gd.gamma->structure().idempotents[v]);
    const auto& st = gd.gamma->structure();
    std::vector<std::vector<uint32_t>> radrows;
    RowSpace PJ(F, eproj.module.dim());
    for (const auto& r : st.radical_basis) {
      Matrix a = eproj.module.action(r);
      for (int i = 0; i < a.rows(); ++i) PJ.add(a.row(i));
    }
    Matrix B = PJ.basis_matrix();
    for (int i = 0; i < B.rows(); ++i) radrows.push_back(B.row(i));
    FDModule simple = quotient_module(eproj.module, radrows).module;
    auto res = realize_module(cfg, gd, simple, rng);
    auto tr = certified_resolution(cfg, gd, res.X, rng);
    CHECK(tr.cert_L_in_E);
    CHECK(tr.cert_Cd1_in_addT);
    CHECK(tr.cert_exactness);
    CHECK(tr.cert_tor_vanishing);
    CHECK(tr.cert_end_kernel);
  }
}

TEST_CASE("resolution 2.10 on both backends") {
  Fp F(5);
  Rng rng(22);
  SUBCASE("mf backend, f = xy(x+y)") {
    auto cfg = bikr_config(F, {"x", "y", "x + y"});
    auto se = stable_end_algebra(cfg);
    for (int s = 0; s < 2; ++s) {
      auto tr = cover_resolution(cfg, se.gamma, s, rng);
      CHECK(tr.left_end_in_addT);
      CHECK(tr.left_end_summand == s);  // swap twice returns the summand
      CHECK(tr.exactness);
      CHECK(tr.end_identification);
      for (int d : tr.middle_stable_dims) CHECK(d == 0);
    }
    // the free summand is rejected
    CHECK_THROWS_AS(cover_resolution(cfg, se.gamma, 2, rng), InputError);
  }
  SUBCASE("mod backend, k[x]/(x^3) with d = 1") {
    auto cfg = nakayama_config(F);
    auto se = stable_end_algebra(cfg);
    // summand 2 is k: classical presentation 0 -> (-,Omega k) -> (-,P) -> (-,k)
    auto tr = cover_resolution(cfg, se.gamma, 2, rng);
    CHECK(tr.left_end_in_addT);
    CHECK(tr.left_end_summand == 1);  // Omega k = k[x]/(x^2)
    CHECK(tr.exactness);
    CHECK(tr.end_identification);
    REQUIRE(tr.middle_stable_dims.size() == 1);
    CHECK(tr.middle_stable_dims[0] == 0);
  }
}

TEST_CASE("complete_to_exact reports a certified sequence") {
  Fp F(5);
  Rng rng(23);
  auto cfg = nakayama_config(F);
  auto* mb = dynamic_cast<ModBackend*>(cfg.backend.get());
  // f : A -> k the cover: Z = rad A (dimension 2)
  FrobMap f;
  f.src = cfg.summands[0];
  f.dst = cfg.summands[2];
  Matrix m(F, 3, 1);
  m.at(0, 0) = 1;  // 1 -> 1, x -> 0, x^2 -> 0
  f.mod = m;
  auto res = complete_to_exact(cfg, f);
  // Z = rad A + nothing extra: P(k) = A would be added, but f is already epi
  // so dim Z = 3 + 3 - 1 = 5 with the chosen P = A
  CHECK(mb->obj_size(res.Z) == 5);
  CHECK(!res.certificates.empty());
}

TEST_CASE("functor modules match projectives on summands") {
  Fp F(5);
  Rng rng(24);
  auto cfg = bikr_config(F, {"x", "y", "x + y"});
  auto se = stable_end_algebra(cfg);
  const auto& gd = se.gamma;
  for (int v = 0; v < 2; ++v) {
    FDModule FX = functor_module(cfg, gd, cfg.summands[gd.vertex_summand[v]]);
    auto eproj = idempotent_projective(gd.gamma, gd.gamma->structure().idempotents[v]);
    auto iso = is_isomorphic(FX, eproj.module, rng);
    CHECK(iso.yes());
  }
}

TEST_CASE("sigma computed from different eta choices differs by an inner automorphism") {
  Fp F(5);
  Rng rng(25);
  auto cfg = nakayama_config(F);
  auto se = stable_end_algebra(cfg);
  auto tw = periodic_object_check(cfg, se.gamma, rng);
  REQUIRE(tw.sigma.has_value());
  // rescale each eta by a unit: the induced twist differs by conjugation
  CTConfig& c = cfg;
  const auto& gd = se.gamma;
  int nv = static_cast<int>(gd.vertex_summand.size());
  std::vector<FrobMap> eta2;
  for (int v = 0; v < nv; ++v) eta2.push_back(c.backend->scale_map(tw.eta[v], 2));
  // rebuild sigma with the scaled isomorphisms
  int n = gd.gamma->dim();
  Matrix S(F, n, n);
  for (int k = 0; k < n; ++k) {
    const auto& e = gd.basis_entries[k];
    FrobMap x = c.backend->stable_basis_map(c.summands[gd.vertex_summand[e.from_vertex]],
                                            c.summands[gd.vertex_summand[e.to_vertex]],
                                            e.local_index);
    FrobMap Odx = c.backend->suspend_map(x, -c.d);
    // inverse of the scaled iso is the inverse scaled by inverse(2)
    FrobMap inv_from = c.backend->scale_map(eta2[e.from_vertex], 0);  // placeholder shape
    // solve the inverse directly through the hom basis
    {
      ObjId src = eta2[e.from_vertex].src, dst = eta2[e.from_vertex].dst;
      int dU = c.backend->stable_dim(src, src);
      int dVU = c.backend->stable_dim(dst, src);
      Matrix C0(F, dU, dVU);
      auto idU = c.backend->stable_coords(c.backend->identity(src));
      for (int t = 0; t < dVU; ++t) {
        FrobMap h = c.backend->stable_basis_map(dst, src, t);
        auto cc = c.backend->stable_coords(c.backend->compose(eta2[e.from_vertex], h));
        for (int i = 0; i < dU; ++i) C0.at(i, t) = cc[i];
      }
      auto sol = solve_and_kernel(C0, idU);
      REQUIRE(sol.particular.has_value());
      FrobMap h = c.backend->zero_map(dst, src);
      for (int t = 0; t < dVU; ++t)
        if ((*sol.particular)[t])
          h = c.backend->add_maps(
              h, c.backend->scale_map(c.backend->stable_basis_map(dst, src, t),
                                      (*sol.particular)[t]));
      inv_from = h;
    }
    FrobMap comp =
        c.backend->compose(c.backend->compose(inv_from, Odx), eta2[e.to_vertex]);
    S.set_row(k, gamma_coords_of_map(c, gd, comp));
  }
  AlgebraAuto sigma2{S};
  verify_automorphism(*gd.gamma, sigma2);
  // sigma2 o sigma^{-1} must be inner
  AlgebraAuto sigma_inv{tw.sigma->matrix.inverse()};
  AlgebraAuto diff = sigma_inv.compose(sigma2);
  auto res = auto_is_inner(*gd.gamma, diff, rng);
  CHECK(res.inner());
}

TEST_CASE("rigidity violations are reported with the offending shift") {
  Fp F(5);
  Rng rng(26);
  // d = 3 on a curve: the window includes i = 2 where stable Hom(M, M[2])
  // is the nonzero stable endomorphism space
  auto cfg = bikr_config(F, {"x", "y"}, 3);
  auto rep = check_rigid(cfg);
  CHECK(!rep.rigid);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.shift == 2 && v.summand_from == 0 && v.summand_to == 0 && v.dim == 1) found = true;
  CHECK(found);
}

TEST_CASE("realize the zero module and resolve a stably trivial object") {
  Fp F(5);
  Rng rng(27);
  auto cfg = bikr_config(F, {"x", "y", "x + y"});
  auto se = stable_end_algebra(cfg);
  auto res = realize_module(cfg, se.gamma, FDModule::zero(se.gamma.gamma), rng);
  CHECK(cfg.backend->is_stably_zero(res.X));
  // resolution of the free object: zero functor, trivially certified
  auto tr = certified_resolution(cfg, se.gamma, cfg.summands[2], rng);
  CHECK(tr.all());
  CHECK(tr.C.empty());
}

TEST_CASE("module backend transports maps along positive shifts") {
  Fp F(5);
  Rng rng(28);
  auto cfg = nakayama_config(F);
  auto& B = *cfg.backend;
  // k and its shift: transport the identity of k forward and back
  ObjId k = cfg.summands[2];
  FrobMap id = B.identity(k);
  FrobMap up = B.suspend_map(id, 1);
  CHECK(up.src == B.suspend(k, 1));
  CHECK(up.dst == B.suspend(k, 1));
  // a suspended identity stays a stable isomorphism
  auto coords = B.stable_coords(up);
  bool nonzero = false;
  for (uint32_t c : coords) nonzero |= (c != 0);
  CHECK(nonzero);
  // round trip: shifting a basis map of stable Hom(k, m2) up and down
  ObjId m2 = cfg.summands[1];
  REQUIRE(B.stable_dim(k, m2) == 1);
  FrobMap f = B.stable_basis_map(k, m2, 0);
  FrobMap g = B.suspend_map(B.suspend_map(f, 1), -1);
  // the round trip lands on fresh handles isomorphic to the originals,
  // and the transported class stays nonzero
  auto iso_src = B.stably_isomorphic(g.src, f.src, rng);
  auto iso_dst = B.stably_isomorphic(g.dst, f.dst, rng);
  CHECK(iso_src.yes);
  CHECK(iso_dst.yes);
  REQUIRE(B.stable_dim(g.src, g.dst) == 1);
  auto cg = B.stable_coords(g);
  REQUIRE(cg.size() == 1);
  CHECK(cg[0] != 0);
}

TEST_CASE("completing the zero map yields the sum of source and first shift") {
  Fp F(5);
  Rng rng(29);
  auto cfg = nakayama_config(F);
  auto& B = *cfg.backend;
  ObjId k = cfg.summands[2];
  ObjId m2 = cfg.summands[1];
  auto res = complete_to_exact(cfg, B.zero_map(m2, k));
  // Z = X (+) Omega(Y): dims 2 + 2 = 4 with P = cover of k
  auto* mb = dynamic_cast<ModBackend*>(cfg.backend.get());
  CHECK(mb->obj_size(res.Z) == 4);
  CHECK(mb->obj_size(res.P) == 3);
  Rng rng2(30);
  ObjId target = B.sum({m2, B.suspend(k, -1)});
  auto iso = B.stably_isomorphic(res.Z, target, rng2);
  CHECK(iso.yes);
}
