#include <catch2/catch_amalgamated.hpp>

#include "pkfactor/hensel.hpp"
#include "pkfactor/ring.hpp"
#include "pkfactor/rng.hpp"

using namespace pkfactor;

namespace {

DensePoly P(u128 m, std::initializer_list<i64> cs) { return DensePoly::from_ints(m, cs); }

DensePoly random_monic(u128 m, unsigned deg, Rng& rng) {
  DensePoly r(m);
  for (unsigned i = 0; i < deg; ++i) r.coeffs.push_back(rng.below(u64(m)));
  r.coeffs.push_back(1);
  return r;
}

}  // namespace

TEST_CASE("the worked mod-9 lift", "[hensel]") {
  PrimePower pp(3, 2);
  DensePoly f = P(9, {21, 10, 1});
  DensePoly g = P(3, {0, 1});
  DensePoly h = P(3, {1, 1});
  auto lifted = hensel_lift(f, g, h, bezout_mod_p(g, h), pp);
  REQUIRE(lifted.g == P(9, {3, 1}));  // x+3
  REQUIRE(lifted.h == P(9, {7, 1}));  // x+7
  // Bezout identity holds at the lifted precision
  DensePoly one = DensePoly::constant(9, 1);
  REQUIRE(add(mul(lifted.g, lifted.bez.u), mul(lifted.h, lifted.bez.v)) == one);
}

TEST_CASE("k = 1 returns the monic pair unchanged", "[hensel]") {
  PrimePower pp(3, 1);
  DensePoly f = P(3, {0, 1, 1});  // x(x+1)
  auto lifted = hensel_lift(f, P(3, {0, 1}), P(3, {1, 1}), bezout_mod_p(P(3, {0, 1}), P(3, {1, 1})), pp);
  REQUIRE(lifted.g == P(3, {0, 1}));
  REQUIRE(lifted.h == P(3, {1, 1}));
}

TEST_CASE("lifting to p^4 multiplies back and matches mod p", "[hensel]") {
  PrimePower pp(3, 4);
  DensePoly f = P(81, {21, 10, 1});
  DensePoly g = P(3, {0, 1});
  DensePoly h = P(3, {1, 1});
  auto lifted = hensel_lift(f, g, h, bezout_mod_p(g, h), pp);
  REQUIRE(mul(lifted.g, lifted.h) == f);
  REQUIRE(reduce_to_modulus(lifted.g, 3) == g);
  REQUIRE(reduce_to_modulus(lifted.h, 3) == h);
}

TEST_CASE("non-coprime pairs are rejected", "[hensel]") {
  REQUIRE_THROWS_AS(bezout_mod_p(P(3, {0, 1}), P(3, {0, 1, 1})), error);  // gcd = x
}

TEST_CASE("lifting is idempotent at full precision", "[hensel]") {
  PrimePower pp(5, 4);
  Rng rng(17);
  DensePoly g0 = random_monic(5, 2, rng);
  DensePoly h0 = random_monic(5, 3, rng);
  if (!poly_gcd(g0, h0).is_monic() || poly_gcd(g0, h0).degree() != 0) {
    g0 = P(5, {1, 0, 1});
    h0 = P(5, {2, 1, 0, 1});
  }
  DensePoly f = mul(lift_to_modulus(g0, 625), lift_to_modulus(h0, 625));
  auto first = hensel_lift(f, g0, h0, bezout_mod_p(g0, h0), pp);
  auto again = hensel_lift(f, reduce_to_modulus(first.g, 5), reduce_to_modulus(first.h, 5),
                           bezout_mod_p(reduce_to_modulus(first.g, 5), reduce_to_modulus(first.h, 5)), pp);
  REQUIRE(again.g == first.g);
  REQUIRE(again.h == first.h);
}

TEST_CASE("random coprime splits lift at every k", "[hensel]") {
  Rng rng(29);
  for (u64 p : {u64(2), u64(3), u64(5)}) {
    for (unsigned k : {2u, 3u, 4u}) {
      PrimePower pp(p, k);
      for (int iter = 0; iter < 25; ++iter) {
        DensePoly g0 = random_monic(p, 1 + unsigned(rng.below(3)), rng);
        DensePoly h0 = random_monic(p, 1 + unsigned(rng.below(3)), rng);
        DensePoly d = poly_gcd(g0, h0);
        if (d.degree() != 0) continue;
        // f = g0*h0 lifted plus arbitrary p-noise below the leading term
        DensePoly f = mul(lift_to_modulus(g0, pp.pk), lift_to_modulus(h0, pp.pk));
        DensePoly noise(pp.pk);
        for (int i = 0; i < f.degree(); ++i)
          noise.coeffs.push_back(mulmod(pp.p, rng.below(u64(pp.pk)), pp.pk));
        noise.trim();
        f = add(f, noise);
        auto lifted = hensel_lift(f, g0, h0, bezout_mod_p(g0, h0), pp);
        REQUIRE(mul(lifted.g, lifted.h) == f);
        REQUIRE(reduce_to_modulus(lifted.g, p) == g0);
        REQUIRE(reduce_to_modulus(lifted.h, p) == h0);
        DensePoly one = DensePoly::constant(pp.pk, 1);
        REQUIRE(add(mul(lifted.g, lifted.bez.u), mul(lifted.h, lifted.bez.v)) == one);
      }
    }
  }
}

TEST_CASE("decompose the mod-27 worked example", "[hensel]") {
  Rng rng(3);
  PrimePower pp(3, 3);
  DensePoly f = P(27, {36, 3, 12, 1});
  auto parts = decompose(f, pp, rng);
  REQUIRE(parts.size() == 1);
  REQUIRE(parts[0].phi == P(3, {0, 1}));
  REQUIRE(parts[0].e == 3);
  // h = (f - x^3)/3 = 4x^2 + x + 12, stored at its precision mod 9
  REQUIRE(parts[0].h == P(9, {12, 1, 4}));
  REQUIRE(power_form_poly(parts[0], pp) == f);
}

TEST_CASE("decompose a coprime split", "[hensel]") {
  Rng rng(4);
  PrimePower pp(3, 2);
  DensePoly f = P(9, {21, 10, 1});
  auto parts = decompose(f, pp, rng);
  REQUIRE(parts.size() == 2);
  REQUIRE(parts[0].phi == P(3, {0, 1}));
  REQUIRE(parts[0].e == 1);
  REQUIRE(parts[1].phi == P(3, {1, 1}));
  REQUIRE(parts[1].e == 1);
  DensePoly prod = mul(power_form_poly(parts[0], pp), power_form_poly(parts[1], pp));
  REQUIRE(prod == f);
}

TEST_CASE("decompose an irreducible input", "[hensel]") {
  Rng rng(5);
  PrimePower pp(3, 2);
  DensePoly f = P(9, {4, 3, 1});  // x^2+3x+4 = (x^2+1) + 3(x+1) with x^2+1 irreducible mod 3
  auto parts = decompose(f, pp, rng);
  REQUIRE(parts.size() == 1);
  REQUIRE(parts[0].phi == P(3, {1, 0, 1}));
  REQUIRE(parts[0].e == 1);
  REQUIRE(parts[0].h == P(3, {1, 1}));
  REQUIRE(power_form_poly(parts[0], pp) == f);
}

TEST_CASE("decompose multiplies back on random monic inputs", "[hensel]") {
  Rng rng(61);
  for (u64 p : {u64(2), u64(3), u64(5)}) {
    for (unsigned k : {2u, 3u, 4u}) {
      PrimePower pp(p, k);
      for (int iter = 0; iter < 20; ++iter) {
        DensePoly f = random_monic(pp.pk, 2 + unsigned(rng.below(4)), rng);
        if (is_zero_divisor(f, pp)) continue;
        auto parts = decompose(f, pp, rng);
        DensePoly prod = DensePoly::constant(pp.pk, 1);
        for (const auto& part : parts) prod = mul(prod, power_form_poly(part, pp));
        REQUIRE(prod == f);
        // parts match the mod-p factorization
        DensePoly pbar = DensePoly::constant(p, 1);
        for (const auto& part : parts) pbar = mul(pbar, pow_u(part.phi, part.e));
        REQUIRE(pbar == reduce_to_modulus(f, p));
      }
    }
  }
}
