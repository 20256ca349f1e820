#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stendo/mf.hpp"

using namespace stendo;

namespace {

MFRingPtr ring(Fp F, std::initializer_list<const char*> polys) {
  std::vector<Poly2> fs;
  for (const char* s : polys) fs.push_back(Poly2::parse(F, s));
  return std::make_shared<MFRing>(F, fs);
}

}  // namespace

TEST_CASE("construction and validation") {
  Fp F(5);
  auto R = ring(F, {"x", "y", "x + y"});
  CHECK(R->f() == Poly2::parse(F, "x^2*y + x*y^2"));
  CHECK_THROWS_AS(ring(F, {"x", "2*x"}), InputError);      // associates
  CHECK_THROWS_AS(ring(F, {"x", "1 + y"}), InputError);    // constant term
  // not jointly quasi-homogeneous without the acknowledgement flag
  std::vector<Poly2> bad = {Poly2::parse(F, "x + y^2 + y^3")};
  CHECK_THROWS_AS(MFRing(F, bad), InputError);
  MFRing ok(F, bad, true);
  CHECK(ok.nfactors() == 1);
}

TEST_CASE("bikr objects") {
  Fp F(5);
  SUBCASE("single factor gives the free object") {
    auto R = ring(F, {"x"});
    auto T = bikr_tilting(R);
    REQUIRE(T.size() == 1);
    CHECK(R->is_stably_zero(T[0]));
  }
  SUBCASE("two factors") {
    auto R = ring(F, {"x", "y"});
    auto T = bikr_tilting(R);
    REQUIRE(T.size() == 2);
    CHECK(R->g_of(T[0]) == Poly2::parse(F, "x"));
    CHECK(R->gprime_of(T[0]) == Poly2::parse(F, "y"));
    CHECK(R->is_stably_zero(T[1]));
    CHECK(R->gprime_of(T[1]).is_unit_constant());
  }
  SUBCASE("three factors") {
    auto R = ring(F, {"x", "y", "x + y"});
    auto T = bikr_tilting(R);
    REQUIRE(T.size() == 3);
    CHECK(R->g_of(T[0]) == Poly2::parse(F, "x"));
    CHECK(R->gprime_of(T[0]) == Poly2::parse(F, "x*y + y^2"));
    CHECK(R->g_of(T[1]) == Poly2::parse(F, "x*y"));
    CHECK(R->gprime_of(T[1]) == Poly2::parse(F, "x + y"));
    CHECK(R->is_stably_zero(T[2]));
  }
}

TEST_CASE("swap is an involution") {
  Fp F(5);
  auto R = ring(F, {"x", "y", "x + y"});
  for (const auto& m : bikr_tilting(R)) {
    CHECK(R->swap(R->swap(m)) == m);
  }
  MF1 m1 = R->object({0});
  CHECK(R->swap(m1).subset == std::vector<int>{1, 2});
}

TEST_CASE("stable end of M1 for f = xy(x+y): dim 2, basis {1, y}") {
  Fp F(5);
  auto R = ring(F, {"x", "y", "x + y"});
  auto T = bikr_tilting(R);
  StableMF1Hom end1(R, T[0], T[0]);
  REQUIRE(end1.dim() == 2);
  CHECK(end1.basis_monomials()[0] == Mono{0, 0});
  CHECK(end1.basis_monomials()[1] == Mono{0, 1});
}

TEST_CASE("stable hom(M1, M2) for f = xy(x+y): dim 1") {
  Fp F(5);
  auto R = ring(F, {"x", "y", "x + y"});
  auto T = bikr_tilting(R);
  StableMF1Hom h(R, T[0], T[1]);
  CHECK(h.dim() == 1);
  // c = y: the quotient is S/(x, y)
  CHECK(h.c() == Poly2::parse(F, "y"));
}

TEST_CASE("stable homs involving the free object vanish") {
  Fp F(5);
  auto R = ring(F, {"x", "y", "x + y"});
  auto T = bikr_tilting(R);
  StableMF1Hom a(R, T[2], T[0]);
  CHECK(a.dim() == 0);
  StableMF1Hom b(R, T[0], T[2]);
  CHECK(b.dim() == 0);
  StableMF1Hom e(R, T[2], T[2]);
  CHECK(e.dim() == 0);
}

TEST_CASE("loop criterion") {
  Fp F(5);
  CHECK(pair_generates_max_ideal(Poly2::parse(F, "x"), Poly2::parse(F, "y")));
  CHECK(!pair_generates_max_ideal(Poly2::parse(F, "x"), Poly2::parse(F, "x + y^2")));
  CHECK(pair_generates_max_ideal(Poly2::parse(F, "x"), Poly2::parse(F, "x + y")));
  CHECK_THROWS_AS(pair_generates_max_ideal(Poly2::parse(F, "1 + x"), Poly2::parse(F, "y")),
                  InputError);
  CHECK_THROWS_AS(pair_generates_max_ideal(Poly2::parse(F, "x^2"), Poly2::parse(F, "y")),
                  InputError);
}

TEST_CASE("brute-force oracle basics") {
  Fp F(5);
  auto R = ring(F, {"x", "y"});
  auto T = bikr_tilting(R);
  // free object: 0
  CHECK(brute_hom_bounded(R, T[1], T[1], 8) == 0);
  // stable end of M1 for f = xy: dim 1
  auto d = brute_hom_stabilized(R, T[0], T[0]);
  REQUIRE(d.has_value());
  CHECK(*d == 1);
  CHECK_THROWS_AS(brute_hom_bounded(R, T[0], T[0], 0), InputError);
}

TEST_CASE("oracle agrees with the colon formula on f = xy(x+y)") {
  Fp F(5);
  auto R = ring(F, {"x", "y", "x + y"});
  auto T = bikr_tilting(R);
  for (const auto& M : T)
    for (const auto& N : T) {
      StableMF1Hom h(R, M, N);
      auto d = brute_hom_stabilized(R, M, N);
      REQUIRE(d.has_value());
      CHECK(h.dim() == *d);
    }
  // the (M1, M2) pair stabilizes to 1
  auto d12 = brute_hom_stabilized(R, T[0], T[1]);
  REQUIRE(d12.has_value());
  CHECK(*d12 == 1);
}

TEST_CASE("oracle agrees on f = x(x+y^2) and on four factors") {
  Fp F(5);
  for (auto desc : {std::vector<const char*>{"x", "x + y^2"},
                    std::vector<const char*>{"x", "y", "x + y", "x + 2*y"}}) {
    std::vector<Poly2> fs;
    for (auto* s : desc) fs.push_back(Poly2::parse(F, s));
    auto R = std::make_shared<MFRing>(F, fs);
    auto T = bikr_tilting(R);
    for (const auto& M : T)
      for (const auto& N : T) {
        StableMF1Hom h(R, M, N);
        auto d = brute_hom_stabilized(R, M, N);
        REQUIRE(d.has_value());
        CHECK(h.dim() == *d);
      }
  }
}

TEST_CASE("composition through multiplier coordinates") {
  Fp F(5);
  auto R = ring(F, {"x", "y", "x + y"});
  auto T = bikr_tilting(R);
  StableMF1Hom e1(R, T[0], T[0]);
  // identity = multiplier 1; x-multiplier lies in the span; composition of
  // the degree-1 basis element with itself lands correctly
  auto cid = e1.coords_of_multiplier(Poly2::constant(F, 1));
  CHECK(cid == std::vector<uint32_t>{1, 0});
  Poly2 yrep = e1.rep(1);
  auto cy = e1.coords_of_multiplier(yrep);
  CHECK(cy == std::vector<uint32_t>{0, 1});
  // y * y = y^2: should reduce to a combination inside the basis
  auto cy2 = e1.coords_of_multiplier(yrep * yrep);
  CHECK(cy2.size() == 2);
}
