#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stendo/algebra_ops.hpp"
#include "stendo/quiver.hpp"

using namespace stendo;

namespace {

// k[x]/(x^n) by structure constants: basis 1, x, ..., x^(n-1)
FDAlgebra truncated_poly(Fp F, int n) {
  std::vector<std::vector<std::vector<uint32_t>>> table(
      n, std::vector<std::vector<uint32_t>>(n, std::vector<uint32_t>(n, 0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j < n) table[i][j][i + j] = 1;
  std::vector<uint32_t> unit(n, 0);
  unit[0] = 1;
  return FDAlgebra(F, table, unit);
}

// 2x2 upper triangular matrices: basis e11, e22, e12
FDAlgebra upper_triangular(Fp F) {
  auto idx = [](int i, int j) { return i == 0 && j == 0 ? 0 : (i == 1 && j == 1 ? 1 : 2); };
  std::vector<std::vector<std::vector<uint32_t>>> table(
      3, std::vector<std::vector<uint32_t>>(3, std::vector<uint32_t>(3, 0)));
  // e_{ij} e_{kl} = delta_{jk} e_{il}
  int pairs[3][2] = {{0, 0}, {1, 1}, {0, 1}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      auto [i, j] = pairs[a];
      auto [k, l] = pairs[b];
      if (j == k && !(i == 1 && l == 0)) table[a][b][idx(i, l)] = 1;
    }
  return FDAlgebra(F, table, {1, 1, 0});
}

}  // namespace

TEST_CASE("one-vertex quiver gives the field") {
  Fp F(5);
  QuiverPresentation Q;
  Q.vertices = {"1"};
  Q.nilpotency_bound = 1;
  auto A = algebra_from_quiver(F, Q);
  CHECK(A.dim() == 1);
  CHECK(A.structure().radical_basis.empty());
  CHECK(A.structure().idempotents.size() == 1);
}

TEST_CASE("preprojective A2 from quiver: dim 4, basis e1 e2 a b") {
  Fp F(5);
  auto A = algebra_from_quiver(F, preprojective_a2());
  CHECK(A.dim() == 4);
  CHECK(A.structure().idempotents.size() == 2);
  CHECK(A.structure().radical_basis.size() == 2);
  // independent oracle: enumerate paths by hand. Paths: e1, e2, a, b and all
  // length-2 paths (ab, ba) die by the relations, so dim = 4.
  // check a*b = 0 = b*a and e-orthogonality through multiplication
  // identify basis positions by labels
  int ia = -1, ib = -1;
  for (int i = 0; i < 4; ++i) {
    if (A.labels()[i] == "a") ia = i;
    if (A.labels()[i] == "b") ib = i;
  }
  REQUIRE(ia >= 0);
  REQUIRE(ib >= 0);
  std::vector<uint32_t> va(4, 0), vb(4, 0);
  va[ia] = 1;
  vb[ib] = 1;
  CHECK(A.mul(va, vb) == std::vector<uint32_t>(4, 0));
  CHECK(A.mul(vb, va) == std::vector<uint32_t>(4, 0));
}

TEST_CASE("loop with x^3 = 0 gives k[x]/(x^3)") {
  Fp F(5);
  auto A = algebra_from_quiver(F, loop_with_nilpotency(3));
  CHECK(A.dim() == 3);
  CHECK(A.structure().idempotents.size() == 1);
  CHECK(A.structure().radical_basis.size() == 2);
}

TEST_CASE("non-admissible relation rejected; missing nilpotency inconclusive") {
  Fp F(5);
  QuiverPresentation Q = preprojective_a2();
  Q.relations = {"a"};
  CHECK_THROWS_AS(algebra_from_quiver(F, Q), InputError);
  QuiverPresentation L;  // free loop never becomes nilpotent
  L.vertices = {"1"};
  L.arrows = {{"x", 0, 0}};
  L.nilpotency_bound = 4;
  CHECK_THROWS_AS(algebra_from_quiver(F, L), Inconclusive);
}

TEST_CASE("radical and idempotents of the field") {
  Fp F(5);
  auto A = truncated_poly(F, 1);
  auto st = radical_and_idempotents(A);
  CHECK(st.radical_basis.empty());
  REQUIRE(st.idempotents.size() == 1);
  CHECK(st.idempotents[0] == std::vector<uint32_t>{1});
}

TEST_CASE("radical of k[x]/(x^3) is (x) spanned by x, x^2") {
  for (uint32_t p : {2u, 3u, 5u}) {
    Fp F(p);
    auto A = truncated_poly(F, 3);
    auto st = radical_and_idempotents(A);
    CHECK(st.radical_basis.size() == 2);
    // oracle: the nilpotent elements are exactly spans of x, x^2
    RowSpace rs(F, 3);
    for (const auto& r : st.radical_basis) {
      CHECK(r[0] == 0);  // no constant term
      rs.add(r);
    }
    CHECK(rs.dim() == 2);
    REQUIRE(st.idempotents.size() == 1);
    CHECK(st.idempotents[0] == std::vector<uint32_t>{1, 0, 0});
  }
}

TEST_CASE("radical of upper triangular 2x2 is the strict upper part") {
  Fp F(5);
  auto A = upper_triangular(F);
  auto st = radical_and_idempotents(A);
  REQUIRE(st.radical_basis.size() == 1);
  CHECK(st.radical_basis[0] == std::vector<uint32_t>{0, 0, 1});
  CHECK(st.idempotents.size() == 2);
  CHECK(st.num_blocks == 2);
}

TEST_CASE("radical of a matrix-like semisimple algebra is zero") {
  Fp F(2);
  // full 2x2 matrix algebra over F_2: tests both char-2 lifting and a
  // non-basic Wedderburn block
  std::vector<std::vector<std::vector<uint32_t>>> table(
      4, std::vector<std::vector<uint32_t>>(4, std::vector<uint32_t>(4, 0)));
  int pr[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  auto idx = [](int i, int j) { return i * 2 + j; };
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      auto [i, j] = pr[a];
      auto [k, l] = pr[b];
      if (j == k) table[a][b][idx(i, l)] = 1;
    }
  FDAlgebra M2(F, table, {1, 0, 0, 1});
  auto st = radical_and_idempotents(M2);
  CHECK(st.radical_basis.empty());
  CHECK(st.idempotents.size() == 2);
  CHECK(st.num_blocks == 1);
}

TEST_CASE("non-split semisimple quotient is rejected") {
  Fp F(2);
  // F_4 as an F_2-algebra: basis 1, w with w^2 = w + 1
  std::vector<std::vector<std::vector<uint32_t>>> table(
      2, std::vector<std::vector<uint32_t>>(2, std::vector<uint32_t>(2, 0)));
  table[0][0] = {1, 0};
  table[0][1] = {0, 1};
  table[1][0] = {0, 1};
  table[1][1] = {1, 1};
  FDAlgebra F4(F, table, {1, 0});
  CHECK_THROWS_AS(radical_and_idempotents(F4), InputError);
}

TEST_CASE("enveloping algebra dims and idempotents") {
  Fp F(5);
  auto k = std::make_shared<FDAlgebra>(truncated_poly(F, 1));
  auto ke = enveloping(k);
  CHECK(ke->dim() == 1);

  auto A = std::make_shared<FDAlgebra>(truncated_poly(F, 3));
  auto Ae = enveloping(A);
  CHECK(Ae->dim() == 9);
  CHECK(Ae->structure().idempotents.size() == 1);

  auto P = std::make_shared<FDAlgebra>(algebra_from_quiver(F, preprojective_a2()));
  auto Pe = enveloping(P);
  CHECK(Pe->dim() == 16);
  CHECK(Pe->structure().idempotents.size() == 4);
}

TEST_CASE("regular and dual bimodules") {
  Fp F(5);
  auto A = std::make_shared<FDAlgebra>(truncated_poly(F, 3));
  auto Ae = enveloping(A);
  FDModule reg = regular_bimodule(A, Ae);
  FDModule dual = dual_bimodule(A, Ae);
  CHECK(reg.dim() == 3);
  CHECK(dual.dim() == 3);
  // k[x]/(x^3) is symmetric: D(A) and A are isomorphic bimodules, and the
  // trace form provides an explicit witness: phi(a) = (coefficient of x^2
  // in a*b) pairing. Verified here through the generic isomorphism search.
  Rng rng(1);
  auto iso = is_isomorphic(reg, dual, rng);
  CHECK(iso.yes());
  // explicit witness: the pairing matrix sends basis x^i to the functional
  // dual to x^(2-i)
  Matrix w(F, 3, 3);
  w.at(0, 2) = 1;
  w.at(1, 1) = 1;
  w.at(2, 0) = 1;
  CHECK(is_module_map(reg, dual, w));
  CHECK(w.invertible());
}

TEST_CASE("upper triangular: D(A) not isomorphic to A one-sidedly") {
  Fp F(5);
  auto A = std::make_shared<FDAlgebra>(upper_triangular(F));
  // regular right module vs dual of left regular
  FDModule reg = regular_module(A);
  FDModule DA = dual_module(regular_module(opposite_of(A)));
  CHECK(DA.algebra() == A);
  Rng rng(2);
  auto iso = is_isomorphic(reg, DA, rng);
  CHECK(iso.no());
}

TEST_CASE("self-injectivity verdicts") {
  Fp F(5);
  auto kx3 = std::make_shared<FDAlgebra>(truncated_poly(F, 3));
  CHECK(is_self_injective(kx3));
  auto ut = std::make_shared<FDAlgebra>(upper_triangular(F));
  CHECK(!is_self_injective(ut));
  auto pa2 = std::make_shared<FDAlgebra>(algebra_from_quiver(F, preprojective_a2()));
  CHECK(is_self_injective(pa2));
}

TEST_CASE("semisimple split") {
  Fp F(5);
  SUBCASE("field is purely semisimple") {
    auto s = semisimple_split(truncated_poly(F, 1));
    CHECK(!s.non_semisimple.has_value());
    REQUIRE(s.semisimple.has_value());
    CHECK(s.semisimple->dim() == 1);
  }
  SUBCASE("local non-semisimple keeps everything") {
    auto s = semisimple_split(truncated_poly(F, 3));
    REQUIRE(s.non_semisimple.has_value());
    CHECK(s.non_semisimple->dim() == 3);
    CHECK(!s.semisimple.has_value());
  }
  SUBCASE("k x k[x]/(x^2) splits into both parts") {
    // direct product by block structure constants
    std::vector<std::vector<std::vector<uint32_t>>> table(
        3, std::vector<std::vector<uint32_t>>(3, std::vector<uint32_t>(3, 0)));
    // basis: u (the field block unit), 1_B, x_B with x_B^2 = 0
    table[0][0][0] = 1;
    table[1][1][1] = 1;
    table[1][2][2] = 1;
    table[2][1][2] = 1;
    FDAlgebra A(F, table, {1, 1, 0});
    auto s = semisimple_split(A);
    REQUIRE(s.non_semisimple.has_value());
    REQUIRE(s.semisimple.has_value());
    CHECK(s.non_semisimple->dim() == 2);
    CHECK(s.semisimple->dim() == 1);
    CHECK(s.num_blocks == 2);
    CHECK(s.num_semisimple_blocks == 1);
  }
}

TEST_CASE("inner automorphism detection") {
  Fp F(5);
  Rng rng(3);
  SUBCASE("identity is inner") {
    auto A = truncated_poly(F, 3);
    auto res = auto_is_inner(A, AlgebraAuto::identity(A), rng);
    CHECK(res.inner());
  }
  SUBCASE("conjugation by a planted unit is recovered") {
    auto A = upper_triangular(F);
    // u = e11 + 2 e22 + e12 (invertible)
    std::vector<uint32_t> u = {1, 2, 1};
    auto ui = A.inverse_element(u);
    REQUIRE(ui.has_value());
    Matrix S(F, 3, 3);
    for (int i = 0; i < 3; ++i) {
      std::vector<uint32_t> ei(3, 0);
      ei[i] = 1;
      S.set_row(i, A.mul(A.mul(u, ei), *ui));
    }
    AlgebraAuto sigma{S};
    auto res = auto_is_inner(A, sigma, rng);
    CHECK(res.inner());
  }
  SUBCASE("vertex swap on preprojective A2 is not inner") {
    auto A = algebra_from_quiver(F, preprojective_a2());
    // swap e1<->e2, a<->b: find positions via labels
    std::vector<std::string> want = {"e_1", "e_2", "a", "b"};
    std::vector<int> pos(4, -1);
    for (int i = 0; i < 4; ++i)
      for (int w = 0; w < 4; ++w)
        if (A.labels()[i] == want[w]) pos[w] = i;
    Matrix S(F, 4, 4);
    S.at(pos[0], pos[1]) = 1;
    S.at(pos[1], pos[0]) = 1;
    S.at(pos[2], pos[3]) = 1;
    S.at(pos[3], pos[2]) = 1;
    AlgebraAuto sigma{S};
    auto res = auto_is_inner(A, sigma, rng);
    CHECK(res.verdict == InnerResult::Verdict::NotInner);
    CHECK(res.reason == "sigma permutes idempotent classes nontrivially");
    // its square is the identity, hence inner
    auto res2 = auto_is_inner(A, sigma.compose(sigma), rng);
    CHECK(res2.inner());
  }
}

TEST_CASE("algebra isomorphism search") {
  Fp F(5);
  Rng rng(4);
  SUBCASE("same algebra, permuted presentation") {
    auto A = algebra_from_quiver(F, preprojective_a2());
    QuiverPresentation Q2 = preprojective_a2();
    std::swap(Q2.vertices[0], Q2.vertices[1]);
    Q2.arrows = {{"a", 1, 0}, {"b", 0, 1}};
    auto B = algebra_from_quiver(F, Q2);
    auto iso = algebras_isomorphic(A, B, rng);
    CHECK(iso.yes());
  }
  SUBCASE("different dimension rejected") {
    auto A = truncated_poly(F, 2);
    auto B = truncated_poly(F, 3);
    CHECK(algebras_isomorphic(A, B, rng).verdict == AlgebraIsoResult::Verdict::No);
  }
  SUBCASE("k[x]/(x^3) vs k^3: different radical") {
    auto A = truncated_poly(F, 3);
    std::vector<std::vector<std::vector<uint32_t>>> table(
        3, std::vector<std::vector<uint32_t>>(3, std::vector<uint32_t>(3, 0)));
    for (int i = 0; i < 3; ++i) table[i][i][i] = 1;
    FDAlgebra B(F, table, {1, 1, 1});
    CHECK(algebras_isomorphic(A, B, rng).verdict == AlgebraIsoResult::Verdict::No);
  }
}

TEST_CASE("idempotent lifting in characteristic 2 and 3") {
  for (uint32_t p : {2u, 3u}) {
    Fp F(p);
    // k[x]/(x^2) x k: lift must separate the blocks
    std::vector<std::vector<std::vector<uint32_t>>> table(
        3, std::vector<std::vector<uint32_t>>(3, std::vector<uint32_t>(3, 0)));
    table[0][0][0] = 1;
    table[0][1][1] = 1;
    table[1][0][1] = 1;
    table[2][2][2] = 1;
    FDAlgebra A(F, table, {1, 0, 1});
    auto st = radical_and_idempotents(A);
    CHECK(st.idempotents.size() == 2);
    CHECK(st.radical_basis.size() == 1);
  }
}
