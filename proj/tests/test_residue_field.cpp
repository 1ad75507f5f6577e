#include <catch2/catch_amalgamated.hpp>

#include "pkfactor/residue_field.hpp"
#include "pkfactor/ring.hpp"
#include "pkfactor/rng.hpp"

using namespace pkfactor;

namespace {

DensePoly P(u128 m, std::initializer_list<i64> cs) { return DensePoly::from_ints(m, cs); }

FqPoly random_fqpoly(const FqCtx& F, unsigned deg, Rng& rng) {
  FqPoly g;
  for (unsigned i = 0; i <= deg; ++i) g.c.push_back(fq_random(F, rng));
  g.trim();
  return g;
}

std::vector<FieldElem> brute_field_roots(const FqCtx& F, const FqPoly& g) {
  std::vector<FieldElem> out;
  for (const auto& e : fq_enumerate(F))
    if (fq_is_zero(fqp_eval(F, g, e))) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("field inversion", "[residue_field]") {
  SECTION("2 in F_3") {
    FqCtx F = FqCtx::prime_field(3);
    REQUIRE(fq_inv(F, fq_from_scalar(F, 2)) == fq_from_scalar(F, 2));
    REQUIRE(fq_inv(F, fq_one(F)) == fq_one(F));
    REQUIRE_THROWS_AS(fq_inv(F, fq_zero(F)), error);
  }
  SECTION("x in F_3[x]/<x^2+1> inverts to 2x") {
    FqCtx F(3, P(3, {1, 0, 1}));
    FieldElem x{P(3, {0, 1})};
    REQUIRE(fq_inv(F, x) == FieldElem{P(3, {0, 2})});
    REQUIRE(fq_mul(F, x, fq_inv(F, x)) == fq_one(F));
  }
  SECTION("random inverses across small fields") {
    Rng rng(3);
    for (const auto& phi : {P(2, {1, 1, 1}), P(3, {1, 0, 1}), P(5, {2, 1})}) {
      FqCtx F(u64(phi.modulus), phi);
      for (int i = 0; i < 30; ++i) {
        FieldElem a = fq_random(F, rng);
        if (fq_is_zero(a)) continue;
        REQUIRE(fq_mul(F, a, fq_inv(F, a)) == fq_one(F));
      }
    }
  }
}

TEST_CASE("factoring the worked examples mod small primes", "[residue_field]") {
  Rng rng(1);
  SECTION("x^2+10x+21 mod 3 splits as x(x+1)") {
    auto fac = cz_factor(P(3, {21, 10, 1}), rng);
    REQUIRE(fac.size() == 2);
    REQUIRE(fac[0].first == P(3, {0, 1}));
    REQUIRE(fac[0].second == 1);
    REQUIRE(fac[1].first == P(3, {1, 1}));
    REQUIRE(fac[1].second == 1);
  }
  SECTION("x^3+12x^2+3x+36 mod 3 is x^3") {
    auto fac = cz_factor(P(3, {36, 3, 12, 1}), rng);
    REQUIRE(fac.size() == 1);
    REQUIRE(fac[0].first == P(3, {0, 1}));
    REQUIRE(fac[0].second == 3);
  }
  SECTION("x^2+1 mod 2 is (x+1)^2") {
    auto fac = cz_factor(P(2, {1, 0, 1}), rng);
    REQUIRE(fac.size() == 1);
    REQUIRE(fac[0].first == P(2, {1, 1}));
    REQUIRE(fac[0].second == 2);
  }
}

TEST_CASE("factor product identity on random inputs", "[residue_field]") {
  Rng rng(7);
  for (u64 p : {u64(2), u64(3), u64(5), u64(7)}) {
    for (int iter = 0; iter < 40; ++iter) {
      DensePoly f(p);
      unsigned deg = 1 + unsigned(rng.below(6));
      for (unsigned i = 0; i < deg; ++i) f.coeffs.push_back(rng.below(p));
      f.coeffs.push_back(1 + rng.below(p - 1));  // nonzero lead
      auto fac = cz_factor(f, rng);
      DensePoly prod = DensePoly::constant(p, f.lc());
      unsigned total_deg = 0;
      for (const auto& [g, m] : fac) {
        REQUIRE(g.is_monic());
        prod = mul(prod, pow_u(g, m));
        total_deg += unsigned(g.degree()) * m;
      }
      REQUIRE(prod == f);
      REQUIRE(total_deg == unsigned(f.degree()));
    }
  }
}

TEST_CASE("factor output is deterministic under a fixed seed", "[residue_field]") {
  DensePoly f = P(5, {3, 1, 4, 0, 2, 1});
  Rng r1(99), r2(99);
  auto fac1 = cz_factor(f, r1);
  auto fac2 = cz_factor(f, r2);
  REQUIRE(fac1.size() == fac2.size());
  for (std::size_t i = 0; i < fac1.size(); ++i) {
    REQUIRE(fac1[i].first == fac2[i].first);
    REQUIRE(fac1[i].second == fac2[i].second);
  }
}

TEST_CASE("roots of explicit small polynomials", "[residue_field]") {
  Rng rng(2);
  FqCtx F3 = FqCtx::prime_field(3);
  SECTION("y^2 - 1 over F_3 has roots 1 and 2") {
    FqPoly g;
    g.c = {fq_from_scalar(F3, 2), fq_zero(F3), fq_one(F3)};  // -1 + y^2
    auto roots = cz_roots(F3, g, rng);
    REQUIRE(roots.size() == 2);
    REQUIRE(roots[0] == fq_from_scalar(F3, 1));
    REQUIRE(roots[1] == fq_from_scalar(F3, 2));
  }
  SECTION("y^2 + 1 over F_3 has no roots") {
    FqPoly g;
    g.c = {fq_one(F3), fq_zero(F3), fq_one(F3)};
    REQUIRE(cz_roots(F3, g, rng).empty());
  }
  SECTION("y^q - y over F_q has all q elements as roots") {
    FqCtx F9(3, P(3, {1, 0, 1}));  // F_9
    FqPoly g = fqp_monomial(F9, 9, fq_one(F9));
    g = fqp_sub(F9, g, fqp_monomial(F9, 1, fq_one(F9)));
    auto roots = cz_roots(F9, g, rng);
    REQUIRE(roots.size() == 9);
    REQUIRE(roots == fq_enumerate(F9));
  }
}

TEST_CASE("roots match brute force across fields up to size 343", "[residue_field]") {
  Rng rng(13);
  std::vector<FqCtx> fields = {
      FqCtx::prime_field(2),
      FqCtx::prime_field(3),
      FqCtx::prime_field(7),
      FqCtx(2, P(2, {1, 1, 1})),     // F_4
      FqCtx(2, P(2, {1, 1, 0, 1})),  // F_8
      FqCtx(3, P(3, {1, 0, 1})),     // F_9
      FqCtx(5, P(5, {1, 1, 1})),     // F_25
      FqCtx(7, P(7, {3, 0, 0, 1})),  // F_343
  };
  for (const auto& F : fields) {
    CAPTURE(F.p, F.ext);
    REQUIRE(is_irreducible_mod_p(F.phi, rng));
    for (int iter = 0; iter < 25; ++iter) {
      FqPoly g = random_fqpoly(F, 1 + unsigned(rng.below(6)), rng);
      if (g.is_zero()) continue;
      auto got = cz_roots(F, g, rng);
      auto want = brute_field_roots(F, g);
      REQUIRE(got.size() <= std::size_t(std::max(0, g.degree())));
      REQUIRE(got == want);
    }
  }
}

TEST_CASE("irreducibility detection", "[residue_field]") {
  Rng rng(21);
  REQUIRE(is_irreducible_mod_p(P(3, {1, 0, 1}), rng));        // x^2+1 mod 3
  REQUIRE(!is_irreducible_mod_p(P(3, {0, 0, 1}), rng));       // x^2
  REQUIRE(!is_irreducible_mod_p(P(2, {1, 0, 1}), rng));       // (x+1)^2
  REQUIRE(is_irreducible_mod_p(P(2, {1, 1, 0, 0, 1}), rng));  // x^4+x+1 mod 2
  REQUIRE(!is_irreducible_mod_p(P(5, {1}), rng));             // constant
}

TEST_CASE("squarefree and repeated factors recombine", "[residue_field]") {
  Rng rng(31);
  // (x+1)^4 * (x^2+1) mod 3, exercising the p-th power content path
  DensePoly f = mul(pow_u(P(3, {1, 1}), 4), P(3, {1, 0, 1}));
  auto fac = cz_factor(f, rng);
  REQUIRE(fac.size() == 2);
  REQUIRE(fac[0].first == P(3, {1, 1}));
  REQUIRE(fac[0].second == 4);
  REQUIRE(fac[1].first == P(3, {1, 0, 1}));
  REQUIRE(fac[1].second == 1);
}
