#include <catch2/catch_amalgamated.hpp>

#include "pkfactor/oracle.hpp"
#include "pkfactor/reduction.hpp"
#include "pkfactor/ring.hpp"
#include "pkfactor/rng.hpp"

using namespace pkfactor;

namespace {

DensePoly P(u128 m, std::initializer_list<i64> cs) { return DensePoly::from_ints(m, cs); }

// Independent trial division: h | f over Z/<p^k> for any h with
// h != 0 mod p, by peeling one p-adic digit of the cofactor at a time.
// The cofactor is unique (h is not a zero divisor), so this decides
// divisibility without any degree search.
bool divides_mod_pk(DensePoly f, DensePoly h, const PrimePower& pp) {
  u128 m = pp.pk;
  for (unsigned step = 0; step < pp.k; ++step) {
    DensePoly fbar = reduce_to_modulus(f, pp.p);
    DensePoly hbar = reduce_to_modulus(h, pp.p);
    REQUIRE(!hbar.is_zero());
    if (fbar.is_zero()) {
      // this digit of the cofactor is zero; peel one p
      if (step + 1 == pp.k) return true;
      u128 next = m / pp.p;
      DensePoly fn(next);
      fn.coeffs.resize(f.coeffs.size());
      for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (f.coeffs[i] % pp.p != 0) return false;
        fn.coeffs[i] = f.coeffs[i] / pp.p;
      }
      fn.trim();
      f = std::move(fn);
      m = next;
      h = reduce_to_modulus(h, m);
      continue;
    }
    auto [q, r] = divrem(fbar, hbar);
    if (!r.is_zero()) return false;
    if (step + 1 == pp.k) return true;
    DensePoly diff = sub(f, mul(h, lift_to_modulus(q, m)));
    u128 next = m / pp.p;
    DensePoly fn(next);
    fn.coeffs.resize(diff.coeffs.size());
    for (std::size_t i = 0; i < diff.coeffs.size(); ++i) {
      if (diff.coeffs[i] % pp.p != 0) return false;
      fn.coeffs[i] = diff.coeffs[i] / pp.p;
    }
    fn.trim();
    f = std::move(fn);
    m = next;
    h = reduce_to_modulus(h, m);
  }
  return true;
}

PowerForm make_form(const DensePoly& phi, unsigned e, const DensePoly& h, const PrimePower& pp) {
  u128 lower = pp.k == 1 ? u128(pp.p) : pp.pk / pp.p;
  return PowerForm{phi, e, reduce_to_modulus(h, lower)};
}

}  // namespace

TEST_CASE("the expanded coefficients follow the defining formula", "[reduction]") {
  PrimePower pp(3, 4);
  DensePoly phi = P(3, {0, 1});
  PowerForm form = make_form(phi, 2, P(27, {0, 1}), pp);  // f = x^2 + 3x mod 81
  ReductionInstance inst = build_reduction(form, 1, pp);
  REQUIRE(inst.coeff.size() == 4);
  DensePoly f = inst.f_full;
  REQUIRE(f == P(81, {0, 3, 1}));
  u128 ppow = 1;
  for (unsigned i = 0; i < 4; ++i) {
    DensePoly want = inst.ring.reduce(mul_scalar(mul(f, inst.ring.phi_lift_pow(3 - i)), ppow));
    REQUIRE(inst.coeff[i] == want);
    ppow *= 3;
  }
}

TEST_CASE("k = 2 evaluation matches a direct multiply-reduce", "[reduction]") {
  PrimePower pp(3, 2);
  DensePoly phi = P(3, {0, 1});
  PowerForm form = make_form(phi, 2, P(9, {0, 1}), pp);  // f = x^2+3x
  ReductionInstance inst = build_reduction(form, 1, pp);
  DensePoly y = DensePoly::constant(9, 1);
  // E(1) = f*(x + 3) reduced mod <9, x^2>
  DensePoly want = inst.ring.reduce(mul(inst.f_full, P(9, {3, 1})));
  REQUIRE(eval_E(inst, y) == want);
}

TEST_CASE("roots correspond to divisors on the worked pair", "[reduction]") {
  PrimePower pp(3, 2);
  DensePoly phi = P(3, {0, 1});
  SECTION("x + 3 divides x^2 + 3x mod 9") {
    PowerForm form = make_form(phi, 2, P(9, {0, 1}), pp);
    ReductionInstance inst = build_reduction(form, 1, pp);
    DensePoly y = P(9, {-1});  // factor x - 3y = x + 3
    REQUIRE(divides_iff_root(inst, y));
    REQUIRE(divides_mod_pk(inst.f_full, factor_from_root(inst, y), pp));
  }
  SECTION("x - 3 does not divide x^2 + 3 mod 9") {
    PowerForm form = make_form(phi, 2, P(9, {1}), pp);  // f = x^2 + 3
    ReductionInstance inst = build_reduction(form, 1, pp);
    DensePoly y = DensePoly::constant(9, 1);  // candidate x - 3
    REQUIRE(!divides_iff_root(inst, y));
    REQUIRE(!divides_mod_pk(inst.f_full, factor_from_root(inst, y), pp));
  }
  SECTION("the known cofactor is a root too") {
    PowerForm form = make_form(phi, 2, P(9, {0, 1}), pp);
    ReductionInstance inst = build_reduction(form, 1, pp);
    // f = x * (x+3): the cofactor x of x+3 corresponds to y = 0
    REQUIRE(divides_iff_root(inst, DensePoly(9)));
  }
}

TEST_CASE("equivalence with trial division, exhaustively on small rings", "[reduction]") {
  Rng rng(101);
  struct Cell {
    u64 p;
    DensePoly phi;
    unsigned e, a, k;
  };
  std::vector<Cell> cells = {
      {2, P(2, {0, 1}), 2, 1, 2},    {2, P(2, {0, 1}), 2, 1, 3},
      {2, P(2, {0, 1}), 2, 1, 4},    {2, P(2, {0, 1}), 3, 1, 2},
      {2, P(2, {0, 1}), 4, 2, 2},    {2, P(2, {0, 1}), 3, 2, 2},
      {2, P(2, {1, 1, 1}), 2, 1, 2}, {3, P(3, {0, 1}), 2, 1, 2},
      {3, P(3, {0, 1}), 2, 1, 3},    {3, P(3, {1, 1}), 3, 1, 2},
  };
  for (const auto& cell : cells) {
    PrimePower pp(cell.p, cell.k);
    CAPTURE(cell.p, cell.e, cell.a, cell.k, cell.phi.degree());
    for (int iter = 0; iter < 3; ++iter) {
      DensePoly h(pp.pk);
      unsigned hdeg = cell.e * unsigned(cell.phi.degree());
      for (unsigned i = 0; i < hdeg; ++i) h.coeffs.push_back(rng.below(u64(pp.pk)));
      h.trim();
      if (iter == 0) h = DensePoly(pp.pk);  // include the exact power f = phi^e
      PowerForm form = make_form(cell.phi, cell.e, h, pp);
      ReductionInstance inst = build_reduction(form, cell.a, pp);
      LocalRingCtx ring1(PrimePower(cell.p, cell.k), cell.phi, inst.ell());
      unsigned slots = inst.ell() * unsigned(cell.phi.degree());
      u128 count = checked_pow_u128(pp.pk, slots);
      REQUIRE(count <= (u128(1) << 19));
      // enumerate every y in the ring
      std::vector<u128> digits(slots, 0);
      for (u128 n = 0; n < count; ++n) {
        DensePoly y(pp.pk);
        y.coeffs = digits;
        y.trim();
        bool via_root = divides_iff_root(inst, y);
        bool via_division = divides_mod_pk(inst.f_full, factor_from_root(inst, y), pp);
        if (via_root != via_division) {
          CAPTURE(format_poly(y), format_poly(inst.f_full));
          REQUIRE(via_root == via_division);
        }
        for (unsigned i = 0; i < slots; ++i) {
          if (++digits[i] < pp.pk) break;
          digits[i] = 0;
        }
      }
    }
  }
}

TEST_CASE("cofactors multiply back", "[reduction]") {
  SECTION("x^2 + 3x with the factor x + 3") {
    PrimePower pp(3, 2);
    PowerForm form = make_form(P(3, {0, 1}), 2, P(9, {0, 1}), pp);
    ReductionInstance inst = build_reduction(form, 1, pp);
    DensePoly y = P(9, {-1});
    REQUIRE(cofactor_from_root(inst, y) == P(9, {0, 1}));  // exactly x
  }
  SECTION("a pure power splits off phi^(e-a)") {
    PrimePower pp(5, 3);
    PowerForm form = make_form(P(5, {0, 1}), 4, DensePoly(125), pp);
    ReductionInstance inst = build_reduction(form, 1, pp);
    REQUIRE(cofactor_from_root(inst, DensePoly(125)) == P(125, {0, 0, 0, 1}));  // x^3
  }
  SECTION("the mod-27 worked factorization (x+3)(x^2+9x+3)") {
    PrimePower pp(3, 3);
    DensePoly f = P(27, {36, 3, 12, 1});
    PowerForm form = make_form(P(3, {0, 1}), 3, P(9, {12, 1, 4}), pp);
    REQUIRE(power_form_poly(form, pp) == f);
    ReductionInstance inst = build_reduction(form, 1, pp);
    DensePoly y = P(27, {-1});  // factor x - 3y = x + 3
    REQUIRE(divides_iff_root(inst, y));
    REQUIRE(cofactor_from_root(inst, y) == P(27, {3, 9, 1}));
  }
  SECTION("calling on a non-root is an error") {
    PrimePower pp(3, 2);
    PowerForm form = make_form(P(3, {0, 1}), 2, P(9, {1}), pp);  // x^2 + 3
    ReductionInstance inst = build_reduction(form, 1, pp);
    REQUIRE_THROWS_AS(cofactor_from_root(inst, DensePoly::constant(9, 1)), error);
  }
}

TEST_CASE("free digit classes", "[reduction]") {
  REQUIRE(precision_classes(4).first_free == 2);
  REQUIRE(precision_classes(3).first_free == 1);
  REQUIRE(precision_classes(2).first_free == 0);
  REQUIRE_THROWS_AS(precision_classes(5), error);
  REQUIRE_THROWS_AS(precision_classes(1), error);
}

TEST_CASE("root sets are unions of high-digit cosets", "[reduction]") {
  // p = 2, phi = x, a = 1, k = 3: every root's p^(k-2)-coset consists of roots
  Rng rng(55);
  PrimePower pp(2, 3);
  DensePoly phi = P(2, {0, 1});
  for (int iter = 0; iter < 4; ++iter) {
    DensePoly h(8);
    for (unsigned i = 0; i < 2; ++i) h.coeffs.push_back(rng.below(8));
    h.trim();
    PowerForm form = make_form(phi, 2, h, pp);
    ReductionInstance inst = build_reduction(form, 1, pp);
    auto roots = brute_roots(inst.coeff, inst.ring);
    unsigned first_free = precision_classes(3).first_free;  // digits y1, y2 free
    u128 step = 1;
    for (unsigned i = 0; i < first_free; ++i) step *= 2;
    // membership set for quick lookup
    auto is_root = [&](const DensePoly& y) { return divides_iff_root(inst, y); };
    for (const auto& y : roots) {
      // add p^(first_free) * t for every t in the ring
      unsigned slots = inst.ell();
      std::vector<u128> digits(slots, 0);
      u128 total = checked_pow_u128(8, slots);
      for (u128 n = 0; n < total; ++n) {
        DensePoly t(8);
        t.coeffs = digits;
        t.trim();
        DensePoly shifted = inst.ring.add(y, mul_scalar(t, step));
        REQUIRE(is_root(shifted));
        for (unsigned i = 0; i < slots; ++i) {
          if (++digits[i] < 8) break;
          digits[i] = 0;
        }
      }
    }
  }
}
