#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stendo/periodicity.hpp"
#include "stendo/quiver.hpp"

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

CTConfig nakayama_config(Fp F) {
  auto A = kx(F, 3);
  std::vector<FDModule> T = {regular_module(A), cyclic_quotient(A, 2), cyclic_quotient(A, 1)};
  CTConfig cfg;
  cfg.backend = std::make_shared<ModBackend>(A, T);
  cfg.summands = {0, 1, 2};
  cfg.d = 1;
  return cfg;
}

}  // namespace

TEST_CASE("k[x]/(x^2) standalone: 2-periodic syzygy dimensions and period") {
  Fp F(5);
  Rng rng(31);
  auto A = kx(F, 2);
  auto bi = make_bimodule_instance(A, 1);
  auto tr = bimodule_resolution(bi, 4);
  // classical pattern: all bimodule syzygies have dimension 2, and the
  // standard two-periodic resolution gives period 2
  for (int dimv : tr.syzygy_dims) CHECK(dimv == 2);
  auto rep = detect_period(bi, 8, rng);
  REQUIRE(rep.period.has_value());
  CHECK(*rep.period == 2);
  REQUIRE(rep.witness.has_value());
}

TEST_CASE("k[x]/(x^2) standalone over F_2: period collapses to 1") {
  // over F_2 the enveloping algebra is local and the first syzygy is
  // already free of rank one over its annihilator, matching the regular
  // bimodule
  Fp F(2);
  Rng rng(32);
  auto A = kx(F, 2);
  auto bi = make_bimodule_instance(A, 1);
  auto rep = detect_period(bi, 8, rng);
  REQUIRE(rep.period.has_value());
  CHECK(*rep.period == 1);
}

TEST_CASE("preprojective algebra of A2: honest period 2 in every characteristic") {
  // the second bimodule syzygy of this four-dimensional algebra is
  // isomorphic to the regular bimodule via the correspondence
  //   a(x)a -> a,  b(x)b -> -b,  e1(x)a - b(x)e1 -> e1,  a(x)e2 - e2(x)b -> e2
  // (verified by hand and machine); coefficients are all +-1, so the result
  // is field independent. Larger Dynkin types keep period 6, see the A3
  // companion test below.
  for (uint32_t p : {2u, 3u, 5u}) {
    Fp F(p);
    Rng rng(33);
    auto A = std::make_shared<FDAlgebra>(algebra_from_quiver(F, preprojective_a2()));
    auto bi = make_bimodule_instance(A, 1);
    auto rep = detect_period(bi, 12, rng);
    REQUIRE(rep.period.has_value());
    CHECK(*rep.period == 2);
  }
}

TEST_CASE("preprojective algebra of A3: period 6 over F_5") {
  Fp F(5);
  Rng rng(37);
  QuiverPresentation Q;
  Q.vertices = {"1", "2", "3"};
  Q.arrows = {{"a", 0, 1}, {"as", 1, 0}, {"b", 1, 2}, {"bs", 2, 1}};
  Q.relations = {"as*a", "a*as - bs*b", "b*bs"};
  Q.nilpotency_bound = 4;
  auto A = std::make_shared<FDAlgebra>(algebra_from_quiver(F, Q));
  CHECK(A->dim() == 10);
  auto bi = make_bimodule_instance(A, 1);
  auto rep = detect_period(bi, 8, rng);
  REQUIRE(rep.period.has_value());
  CHECK(*rep.period == 6);
}

TEST_CASE("semisimple input rejected upstream") {
  Fp F(5);
  auto A = kx(F, 1);
  CHECK_THROWS_AS(make_bimodule_instance(A, 1), InputError);
}

TEST_CASE("non-self-injective gamma is a hard error") {
  Fp F(5);
  Rng rng(34);
  // path algebra of A2 (upper triangular): not self-injective
  QuiverPresentation Q;
  Q.vertices = {"1", "2"};
  Q.arrows = {{"a", 0, 1}};
  Q.nilpotency_bound = 2;
  auto A = std::make_shared<FDAlgebra>(algebra_from_quiver(F, Q));
  auto bi = make_bimodule_instance(A, 1);
  CHECK_THROWS_AS(detect_period(bi, 4, rng), CheckFailure);
}

TEST_CASE("divisibility verdicts") {
  auto v1 = divisibility_check(6, 1, 2, 12);
  CHECK(v1.ok);
  auto v2 = divisibility_check(4, 2, 1, 12);
  CHECK(v2.ok);
  auto v3 = divisibility_check(5, 1, 2, 12);
  CHECK(!v3.ok);
  auto v4 = divisibility_check(6, 1, std::nullopt, 12);
  CHECK(v4.conditional);
  CHECK(v4.ok);
}

TEST_CASE("full pipeline: stable Auslander algebra of k[x]/(x^3)") {
  Fp F(5);
  Rng rng(35);
  auto cfg = nakayama_config(F);
  auto se = stable_end_algebra(cfg);
  REQUIRE(!se.gamma.trivial());
  auto tw = periodic_object_check(cfg, se.gamma, rng);
  REQUIRE(tw.r.has_value());
  CHECK(*tw.r == 2);

  auto split = semisimple_split(*se.gamma.gamma);
  REQUIRE(split.non_semisimple.has_value());
  CHECK(!split.semisimple.has_value());  // no semisimple block here

  auto bi = make_bimodule_instance(se.gamma.gamma, cfg.d, tw.sigma, tw.r);
  bi.lambda = se.lambda;
  bi.lambda_to_gamma = se.lambda_to_gamma;

  SUBCASE("period 2 with divisibility 2 | (1+2)*2") {
    auto rep = detect_period(bi, 12, rng);
    REQUIRE(rep.period.has_value());
    CHECK(*rep.period == 2);  // same algebra as preprojective A2
    auto div = divisibility_check(*rep.period, bi.d, bi.r, tw.r_bound);
    CHECK(div.ok);
    CHECK(!div.conditional);
  }

  SUBCASE("tor suite over the Auslander algebra") {
    auto ts = tor_lambda_suite(bi, 6, rng);
    REQUIRE(ts.applicable);
    REQUIRE(static_cast<int>(ts.dims.size()) == 7);
    // nonzero exactly at 0 and d+1 = 2; dim Tor_2 = dim Gamma = 4
    CHECK(ts.dims[0] > 0);
    CHECK(ts.dims[1] == 0);
    CHECK(ts.dims[2] == 4);
    for (int i = 3; i <= 6; ++i) CHECK(ts.dims[i] == 0);
    CHECK(ts.vanishing_ok);
    CHECK(ts.top_dim_ok);
    CHECK(ts.twisted_iso_ok);
  }

  SUBCASE("duality comparison at s = -1") {
    auto v = cy_duality_check(bi, -1, rng);
    CHECK(v.shift == 3);
    CHECK(v.holds);
  }

  SUBCASE("duality comparison fails for a mismatched shift") {
    // s = -2 compares syzygy^6(Gamma) with D(Gamma); since the period is 6,
    // syzygy^6(Gamma) = Gamma, and Gamma != D(Gamma) would be needed...
    // for the preprojective algebra D(Gamma) = twisted by the swap, which is
    // NOT isomorphic to Gamma as a bimodule, so the verdict is false.
    auto v = cy_duality_check(bi, -2, rng);
    CHECK(v.shift == 6);
    CHECK(!v.holds);
  }
}

TEST_CASE("tor suite reports not-applicable without lambda data") {
  Fp F(5);
  Rng rng(36);
  auto A = std::make_shared<FDAlgebra>(algebra_from_quiver(F, preprojective_a2()));
  auto bi = make_bimodule_instance(A, 1);
  auto ts = tor_lambda_suite(bi, 4, rng);
  CHECK(!ts.applicable);
}
