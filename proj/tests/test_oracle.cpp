#include <catch2/catch_amalgamated.hpp>

#include "pkfactor/oracle.hpp"
#include "pkfactor/ring.hpp"

using namespace pkfactor;

namespace {

DensePoly P(u128 m, std::initializer_list<i64> cs) { return DensePoly::from_ints(m, cs); }

}  // namespace

TEST_CASE("divisor scans on the worked examples", "[oracle]") {
  SECTION("x^2+3x mod 9 has the linear divisors {x, x+3, x+6}") {
    auto got = brute_divisors(P(9, {0, 3, 1}), PrimePower(3, 2), 1, 1);
    REQUIRE(got == std::vector<DensePoly>({P(9, {0, 1}), P(9, {3, 1}), P(9, {6, 1})}));
  }
  SECTION("x^2+3 mod 9 has no linear divisors") {
    REQUIRE(brute_divisors(P(9, {3, 0, 1}), PrimePower(3, 2), 1, 1).empty());
  }
  SECTION("the mod-27 cubic has exactly {x+3, x+12, x+21}") {
    auto got = brute_divisors(P(27, {36, 3, 12, 1}), PrimePower(3, 3), 1, 1);
    REQUIRE(got == std::vector<DensePoly>({P(27, {3, 1}), P(27, {12, 1}), P(27, {21, 1})}));
  }
}

TEST_CASE("root scans", "[oracle]") {
  LocalRingCtx ring(PrimePower(3, 1), P(3, {0, 1}), 2);  // F_3[x]/<x^2>
  SECTION("y^2 vanishes on the multiples of x") {
    auto got = brute_roots({DensePoly(3), DensePoly(3), P(3, {1})}, ring);
    REQUIRE(got == std::vector<DensePoly>({DensePoly(3), P(3, {0, 1}), P(3, {0, 2})}));
  }
  SECTION("a unit has no roots") {
    REQUIRE(brute_roots({P(3, {1})}, ring).empty());
  }
  SECTION("the zero polynomial has every element as a root") {
    REQUIRE(brute_count_roots({DensePoly(3)}, ring) == 9);
  }
}

TEST_CASE("divisor counting with the pairing shortcut", "[oracle]") {
  SECTION("x^2+3x mod 9") {
    // divisors: 1, f, and the three linear lifts paired with their cofactors
    u128 n = brute_count_factors(P(9, {0, 3, 1}), PrimePower(3, 2));
    // degree-1 count is 3; total = 2 + 3 + (paired degree-1 cofactors already counted)
    REQUIRE(n == 2 + 3);
  }
  SECTION("x^2+3x mod 81 pairs six linear divisors") {
    u128 n = brute_count_factors(P(81, {0, 3, 1}), PrimePower(3, 4));
    REQUIRE(n == 2 + 6);
  }
  SECTION("an irreducible quadratic counts only 1 and itself") {
    REQUIRE(brute_count_factors(P(9, {3, 0, 1}), PrimePower(3, 2)) == 2);
    REQUIRE(!brute_has_nontrivial_factor(P(9, {3, 0, 1}), PrimePower(3, 2)));
  }
}

TEST_CASE("budgets fail loudly", "[oracle]") {
  OracleBudget tiny{100, 60.0};
  REQUIRE_THROWS_AS(brute_divisors(P(81, {0, 3, 1}), PrimePower(3, 4), 1, 2, tiny), budget_error);
  LocalRingCtx ring(PrimePower(5, 2), P(5, {0, 1}), 4);
  REQUIRE_THROWS_AS(brute_roots({P(25, {1})}, ring, tiny), budget_error);
}

TEST_CASE("enumeration order is deterministic", "[oracle]") {
  auto a = brute_divisors(P(27, {36, 3, 12, 1}), PrimePower(3, 3), 0, 2);
  auto b = brute_divisors(P(27, {36, 3, 12, 1}), PrimePower(3, 3), 0, 2);
  REQUIRE(a == b);
  // ascending degree, then lexicographic coefficient tuples
  for (std::size_t i = 1; i < a.size(); ++i) {
    REQUIRE((a[i - 1].degree() < a[i].degree() || poly_less(a[i - 1], a[i])));
  }
}
