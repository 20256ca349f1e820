#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "stendo/groebner.hpp"
#include "stendo/matrix.hpp"
#include "stendo/modpoly.hpp"
#include "stendo/poly2.hpp"

using namespace stendo;

namespace {

Poly2 P(Fp F, const std::string& s) { return Poly2::parse(F, s); }

// Degree-bounded ideal membership: f in (gens) iff f lies in the span of
// {m*g : g in gens, deg(m*g) <= D} for D large enough. Used as an
// independent oracle for the Groebner routines.
bool member_by_linear_algebra(Fp F, const std::vector<Poly2>& gens, const Poly2& f, uint32_t D) {
  std::vector<Mono> monos;
  for (uint32_t d = 0; d <= D; ++d)
    for (uint32_t i = 0; i <= d; ++i) monos.push_back({i, d - i});
  auto index_of = [&](Mono m) {
    for (size_t k = 0; k < monos.size(); ++k)
      if (monos[k] == m) return static_cast<int>(k);
    return -1;
  };
  RowSpace span(F, static_cast<int>(monos.size()));
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    for (const auto& m : monos) {
      if (m.deg() + g.total_degree() > D) continue;
      Poly2 mg = g.times_mono(m);
      std::vector<uint32_t> v(monos.size(), 0);
      bool fits = true;
      for (const auto& [mm, c] : mg.terms()) {
        int idx = index_of(mm);
        if (idx < 0) {
          fits = false;
          break;
        }
        v[idx] = c;
      }
      if (fits) span.add(v);
    }
  }
  std::vector<uint32_t> fv(monos.size(), 0);
  for (const auto& [mm, c] : f.terms()) {
    int idx = index_of(mm);
    if (idx < 0) return false;
    fv[idx] = c;
  }
  return span.contains(fv);
}

// Codimension of an ideal with finite quotient, by linear algebra at a
// degree cutoff (exact once the cutoff exceeds the top standard monomial).
int codim_by_linear_algebra(Fp F, const std::vector<Poly2>& gens, uint32_t D) {
  std::vector<Mono> monos;
  for (uint32_t d = 0; d <= D; ++d)
    for (uint32_t i = 0; i <= d; ++i) monos.push_back({i, d - i});
  auto index_of = [&](Mono m) {
    for (size_t k = 0; k < monos.size(); ++k)
      if (monos[k] == m) return static_cast<int>(k);
    return -1;
  };
  RowSpace span(F, static_cast<int>(monos.size()));
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    for (const auto& m : monos) {
      Poly2 mg = g.times_mono(m);
      std::vector<uint32_t> v(monos.size(), 0);
      bool fits = true;
      for (const auto& [mm, c] : mg.terms()) {
        int idx = index_of(mm);
        if (idx < 0) {
          fits = false;
          break;
        }
        v[idx] = c;
      }
      if (fits) span.add(v);
    }
  }
  return static_cast<int>(monos.size()) - span.dim();
}

}  // namespace

TEST_CASE("field arithmetic") {
  Fp F(5);
  CHECK(F.add(3, 4) == 2);
  CHECK(F.mul(3, 4) == 2);
  CHECK(F.inv(2) == 3);
  CHECK(F.pow(2, 4) == 1);
  CHECK(F.from_int(-1) == 4);
  CHECK_THROWS_AS(Fp(4), InputError);
  CHECK_THROWS_AS(Fp(1), InputError);
  Fp F2(2), F3(3);
  CHECK(F2.inv(1) == 1);
  CHECK(F3.inv(2) == 2);
}

TEST_CASE("solve_and_kernel identity case") {
  Fp F(5);
  Matrix A = Matrix::identity(F, 2);
  auto r = solve_and_kernel(A, std::vector<uint32_t>{1, 0});
  REQUIRE(r.particular.has_value());
  CHECK(*r.particular == std::vector<uint32_t>{1, 0});
  CHECK(r.kernel.empty());
}

TEST_CASE("solve_and_kernel zero map has full kernel") {
  Fp F(5);
  Matrix A(F, 1, 2);
  auto r = solve_and_kernel(A, std::vector<uint32_t>{0});
  CHECK(r.kernel.size() == 2);
}

TEST_CASE("solve_and_kernel rank-1 kernel matches brute force over F_5") {
  Fp F(5);
  Matrix A = Matrix::from_rows(F, {{1, 2}, {2, 4}});
  // oracle: enumerate all 25 vectors
  std::set<std::pair<uint32_t, uint32_t>> brute;
  for (uint32_t a = 0; a < 5; ++a)
    for (uint32_t b = 0; b < 5; ++b) {
      if (F.add(F.mul(1, a), F.mul(2, b)) == 0 && F.add(F.mul(2, a), F.mul(4, b)) == 0)
        brute.insert({a, b});
    }
  CHECK(brute.size() == 5);  // dimension-1 kernel
  auto r = solve_and_kernel(A, std::vector<uint32_t>{0, 0});
  REQUIRE(r.kernel.size() == 1);
  auto k = r.kernel[0];
  CHECK(brute.count({k[0], k[1]}) == 1);
  // (3,1) spans the same line
  bool found = false;
  for (uint32_t c = 1; c < 5; ++c)
    if (F.mul(k[0], c) == 3 && F.mul(k[1], c) == 1) found = true;
  CHECK(found);
}

TEST_CASE("solve_and_kernel recovers planted solutions") {
  Fp F(5);
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int m = 2 + static_cast<int>(rng.below(4));
    int n = 2 + static_cast<int>(rng.below(4));
    Matrix A(F, m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A.at(i, j) = rng.field_elt(F);
    std::vector<uint32_t> x(n);
    for (auto& v : x) v = rng.field_elt(F);
    std::vector<uint32_t> b(m, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) b[i] = F.add(b[i], F.mul(A.at(i, j), x[j]));
    auto r = solve_and_kernel(A, b);
    REQUIRE(r.particular.has_value());
    // check A * particular = b and A * k = 0 for kernel vectors
    for (int i = 0; i < m; ++i) {
      uint32_t acc = 0;
      for (int j = 0; j < n; ++j) acc = F.add(acc, F.mul(A.at(i, j), (*r.particular)[j]));
      CHECK(acc == b[i]);
    }
    for (const auto& k : r.kernel)
      for (int i = 0; i < m; ++i) {
        uint32_t acc = 0;
        for (int j = 0; j < n; ++j) acc = F.add(acc, F.mul(A.at(i, j), k[j]));
        CHECK(acc == 0);
      }
    // kernel + particular dimension count
    CHECK(static_cast<int>(r.kernel.size()) == n - A.rank());
  }
}

TEST_CASE("solve_and_kernel dimension mismatch") {
  Fp F(5);
  Matrix A = Matrix::identity(F, 2);
  CHECK_THROWS_AS(solve_and_kernel(A, std::vector<uint32_t>{1}), InputError);
}

TEST_CASE("matrix inverse and rank") {
  Fp F(5);
  Matrix A = Matrix::from_rows(F, {{1, 2}, {3, 4}});
  Matrix Ai = A.inverse();
  CHECK(A * Ai == Matrix::identity(F, 2));
  Matrix S = Matrix::from_rows(F, {{1, 2}, {2, 4}});
  CHECK(S.rank() == 1);
  CHECK_THROWS_AS(S.inverse(), CheckFailure);
}

TEST_CASE("polynomial parsing and canonical serialization") {
  Fp F(5);
  Poly2 p = P(F, "3*x^2*y + y - 2*x^2*y");
  CHECK(p.str() == "x^2*y + y");
  CHECK(P(F, "x + y").coeff({1, 0}) == 1);
  CHECK(P(F, "-x").coeff({1, 0}) == 4);
  CHECK(P(F, "x - x").is_zero());
  CHECK(P(F, "7").coeff({0, 0}) == 2);
  // grlex order: x^2 > xy > y^2 > x > y > 1
  Poly2 q = P(F, "1 + y + x + y^2 + x*y + x^2");
  CHECK(q.str() == "x^2 + x*y + y^2 + x + y + 1");
  // round trip
  CHECK(Poly2::parse(F, q.str()) == q);
  CHECK_THROWS_AS(P(F, "x + "), InputError);
  CHECK_THROWS_AS(P(F, "z"), InputError);
}

TEST_CASE("polynomial arithmetic") {
  Fp F(5);
  Poly2 a = P(F, "x + y");
  Poly2 b = P(F, "x - y");
  CHECK(a * b == P(F, "x^2 - y^2"));
  CHECK((a * b).divided_by(a).has_value());
  CHECK(*(a * b).divided_by(a) == b);
  CHECK(!P(F, "x^2 + y").divided_by(a).has_value());
  CHECK(P(F, "x + y^2").weighted_homogeneous(2, 1));
  CHECK(!P(F, "x + y^2").weighted_homogeneous(1, 1));
}

TEST_CASE("buchberger trivial basis") {
  Fp F(5);
  auto G = buchberger(F, {P(F, "x"), P(F, "y")});
  REQUIRE(G.gens.size() == 2);
  CHECK(G.gens[0] == P(F, "y"));
  CHECK(G.gens[1] == P(F, "x"));
}

TEST_CASE("buchberger one reduction") {
  Fp F(5);
  auto G = buchberger(F, {P(F, "x"), P(F, "x + y^2")});
  REQUIRE(G.gens.size() == 2);
  CHECK(G.gens[0] == P(F, "x"));
  CHECK(G.gens[1] == P(F, "y^2"));
}

TEST_CASE("buchberger (xy, y(x+y)) equals (xy, y^2) via membership oracle") {
  Fp F(5);
  std::vector<Poly2> gens = {P(F, "x*y"), P(F, "x*y + y^2")};
  auto G = buchberger(F, gens);
  // oracle: both target generators are in the ideal, degree-bounded
  CHECK(member_by_linear_algebra(F, gens, P(F, "x*y"), 6));
  CHECK(member_by_linear_algebra(F, gens, P(F, "y^2"), 6));
  CHECK(ideal_contains(G, P(F, "x*y")));
  CHECK(ideal_contains(G, P(F, "y^2")));
  CHECK(!ideal_contains(G, P(F, "y")));
  CHECK(!member_by_linear_algebra(F, gens, P(F, "y"), 8));
  // every input generator reduces to zero
  for (const auto& g : gens) CHECK(normal_form(g, G).is_zero());
}

TEST_CASE("buchberger idempotent and input errors") {
  Fp F(5);
  auto G = buchberger(F, {P(F, "x*y"), P(F, "x*y + y^2")});
  auto G2 = buchberger(F, G.gens);
  CHECK(G.gens.size() == G2.gens.size());
  for (size_t i = 0; i < G.gens.size(); ++i) CHECK(G.gens[i] == G2.gens[i]);
  CHECK_THROWS_AS(buchberger(F, {}), InputError);
  CHECK_THROWS_AS(buchberger(F, {Poly2(F), Poly2(F)}), InputError);
}

TEST_CASE("standard monomials") {
  Fp F(5);
  auto G1 = buchberger(F, {P(F, "x"), P(F, "y")});
  auto s1 = standard_monomials(G1);
  REQUIRE(s1.finite);
  REQUIRE(s1.monomials.size() == 1);
  CHECK(s1.monomials[0] == Mono{0, 0});

  auto G2 = buchberger(F, {P(F, "x"), P(F, "y^2")});
  auto s2 = standard_monomials(G2);
  REQUIRE(s2.finite);
  REQUIRE(s2.monomials.size() == 2);
  CHECK(s2.monomials[0] == Mono{0, 0});
  CHECK(s2.monomials[1] == Mono{0, 1});

  auto G3 = buchberger(F, {P(F, "y^2")});
  CHECK(!standard_monomials(G3).finite);
}

TEST_CASE("standard monomial count equals linear-algebra codimension") {
  Fp F(5);
  Rng rng(11);
  int tested = 0;
  while (tested < 10) {
    // random ideal containing x^a and y^b plus noise, so the quotient is finite
    uint32_t a = 1 + static_cast<uint32_t>(rng.below(3));
    uint32_t b = 1 + static_cast<uint32_t>(rng.below(3));
    std::vector<Poly2> gens = {Poly2::monomial(F, {a, 0}), Poly2::monomial(F, {0, b})};
    Poly2 noise(F);
    for (int t = 0; t < 2; ++t)
      noise.add_term({static_cast<uint32_t>(rng.below(3)), static_cast<uint32_t>(rng.below(3))},
                     rng.field_elt(F));
    noise.normalize();
    if (!noise.is_zero()) gens.push_back(noise);
    auto G = buchberger(F, gens);
    auto sm = standard_monomials(G);
    REQUIRE(sm.finite);
    int oracle = codim_by_linear_algebra(F, gens, 10);
    CHECK(static_cast<int>(sm.monomials.size()) == oracle);
    ++tested;
  }
}

TEST_CASE("colon by element") {
  Fp F(5);
  SUBCASE("colon by a unit") {
    auto I = buchberger(F, {P(F, "x"), P(F, "y")});
    auto Q = colon_by_element(I, P(F, "1"));
    CHECK(Q.gens.size() == 2);
    CHECK(ideal_contains(Q, P(F, "x")));
    CHECK(ideal_contains(Q, P(F, "y")));
    CHECK(!ideal_contains(Q, P(F, "1")));
  }
  SUBCASE("(xy, y^2) : y = (x, y)") {
    auto I = buchberger(F, {P(F, "x*y"), P(F, "y^2")});
    auto Q = colon_by_element(I, P(F, "y"));
    // oracle: a*y in (xy, y^2) iff a in (x, y)
    CHECK(ideal_contains(Q, P(F, "x")));
    CHECK(ideal_contains(Q, P(F, "y")));
    CHECK(!ideal_contains(Q, P(F, "1")));
    auto sm = standard_monomials(Q);
    REQUIRE(sm.finite);
    CHECK(sm.monomials.size() == 1);
  }
  SUBCASE("(x) : x = (1)") {
    auto I = buchberger(F, {P(F, "x")});
    auto Q = colon_by_element(I, P(F, "x"));
    CHECK(Q.contains_one());
  }
  SUBCASE("colon contains the ideal and is idempotent under colon-by-one") {
    auto I = buchberger(F, {P(F, "x*y"), P(F, "y^2")});
    auto Q = colon_by_element(I, P(F, "y"));
    for (const auto& g : I.gens) CHECK(ideal_contains(Q, g));
    auto Q1 = colon_by_element(Q, P(F, "1"));
    REQUIRE(Q1.gens.size() == Q.gens.size());
    for (size_t i = 0; i < Q.gens.size(); ++i) CHECK(Q1.gens[i] == Q.gens[i]);
  }
  SUBCASE("zero divisor rejected") {
    auto I = buchberger(F, {P(F, "x")});
    CHECK_THROWS_AS(colon_by_element(I, Poly2(F)), InputError);
  }
}

TEST_CASE("colon against brute membership on products of lines") {
  Fp F(5);
  // I = (x(x+y), y(x+y)) : (x+y) should equal (x, y)
  auto I = buchberger(F, {P(F, "x^2 + x*y"), P(F, "x*y + y^2")});
  auto Q = colon_by_element(I, P(F, "x + y"));
  CHECK(ideal_contains(Q, P(F, "x")));
  CHECK(ideal_contains(Q, P(F, "y")));
  CHECK(!ideal_contains(Q, P(F, "1")));
}

TEST_CASE("module syzygies: kernel of a polynomial matrix") {
  Fp F(5);
  // map S^2 -> S, (a,b) -> a*x + b*y ; kernel generated by (y, -x)
  std::vector<std::vector<Poly2>> M = {{P(F, "x"), P(F, "y")}};
  auto ker = poly_matrix_kernel(M, F, 2);
  REQUIRE(!ker.empty());
  bool found = false;
  for (const auto& v : ker) {
    Poly2 check = v.c[0] * P(F, "x") + v.c[1] * P(F, "y");
    CHECK(check.is_zero());
    if (!v.is_zero()) found = true;
  }
  CHECK(found);
  // (y, -x) must be in the module generated by the kernel
  auto gb = module_groebner(ker, F);
  PolyVec target{{P(F, "y"), P(F, "-x")}};
  CHECK(pv_divmod(target, gb, F).r.is_zero());
}

TEST_CASE("finite module quotient: S/(x, y^2)") {
  Fp F(5);
  std::vector<PolyVec> H = {PolyVec{{P(F, "x")}}, PolyVec{{P(F, "y^2")}}};
  std::vector<PolyVec> K = {PolyVec{{P(F, "1")}}};
  FiniteModQuotient Q(F, 1, H, K);
  CHECK(Q.dim() == 2);  // classes of 1 and y
  auto c1 = Q.coords(PolyVec{{P(F, "1")}});
  REQUIRE(c1.has_value());
  auto cy = Q.coords(PolyVec{{P(F, "y")}});
  REQUIRE(cy.has_value());
  auto cx = Q.coords(PolyVec{{P(F, "x")}});
  REQUIRE(cx.has_value());
  for (uint32_t c : *cx) CHECK(c == 0);
}

TEST_CASE("rowspace coordinates") {
  Fp F(5);
  RowSpace rs(F, 3);
  CHECK(rs.add({1, 2, 3}));
  CHECK(rs.add({0, 1, 1}));
  CHECK(!rs.add({1, 3, 4}));  // dependent
  auto c = rs.coords({2, 4, 1});
  REQUIRE(c.has_value());
  CHECK(!rs.coords({0, 0, 1}).has_value());
}
