#ifndef PKFACTOR_FACTOR_HPP
#define PKFACTOR_FACTOR_HPP

// User-facing operations: factor f mod p^k (k <= 4) or certify
// irreducibility, enumerate and count the monic lifts of a mod-p factor,
// and count all monic factors mod p^3.
//
// All reported factors are monic; associate classes collapse to the monic
// representative, matching the brute-force oracle's notion of a divisor.

#include <optional>
#include <utility>
#include <vector>

#include "pkfactor/hensel.hpp"
#include "pkfactor/k4_solver.hpp"
#include "pkfactor/reduction.hpp"
#include "pkfactor/ring.hpp"
#include "pkfactor/rng.hpp"

namespace pkfactor {

inline constexpr u64 kDefaultEnumBudget = 1u << 22;

// ----------------------------------------------------------------------
// input normalization
// ----------------------------------------------------------------------

// Strip the largest power of p dividing every canonical coefficient, then
// scale to a monic polynomial.  Rejects zero input, constants, and a
// leading coefficient divisible by p.
inline DensePoly normalize_input(const DensePoly& f_in, const PrimePower& pp, unsigned* stripped) {
  if (f_in.modulus != pp.pk) throw error("polynomial modulus is not p^k");
  if (f_in.is_zero()) throw error("zero polynomial");
  unsigned minval = pp.k;
  for (u128 c : f_in.coeffs) minval = std::min(minval, val_p_scalar(c, pp.p, pp.k));
  DensePoly f = f_in;
  if (minval > 0) {
    u128 pl = 1;
    for (unsigned i = 0; i < minval; ++i) pl *= pp.p;
    for (auto& c : f.coeffs) c /= pl;  // canonical representatives, documented convention
  }
  if (stripped) *stripped = minval;
  if (f.degree() < 1) throw error("degree 0 after stripping the content");
  if (f.lc() % pp.p == 0)
    throw error("leading coefficient divisible by p; no monic associate exists");
  if (!f.is_monic()) f = mul_scalar(f, inv_mod(f.lc(), pp.pk));
  return f;
}

// ----------------------------------------------------------------------
// monic lift counting / enumeration over a root description
// ----------------------------------------------------------------------

namespace detail {

// Members of the coset v + phi^j * (...) whose x-degree stays below
// a*deg(phi): one candidate when j >= a, q^(a-j) otherwise.
inline u128 restricted_coset_count(const DensePoly& v, unsigned j, unsigned a,
                                   const PhiAdicRing& R) {
  if (j >= a) return v.degree() < int(a * R.fq().ext) ? 1 : 0;
  return checked_pow_u128(R.fq().p, (a - j) * R.fq().ext);
}

// Appends members of the restricted coset, at most max_out of them (the
// coset is free of exclusions, so truncating the output is sound); the
// full coset size must stay within step_budget.
inline void append_restricted_members(const DensePoly& v, unsigned j, unsigned a,
                                      const PhiAdicRing& R, u64 step_budget, u64 max_out,
                                      std::vector<DensePoly>& out) {
  unsigned bound = a * R.fq().ext;
  if (j >= a) {
    if (max_out > 0 && v.degree() < int(bound)) out.push_back(v);
    return;
  }
  unsigned tail_coeffs = (a - j) * R.fq().ext;
  u128 n = checked_pow_u128(R.fq().p, tail_coeffs);
  if (n > max_out) {
    if (u128(max_out) > step_budget)
      throw budget_error("restricted enumeration exceeds the budget");
    n = max_out;
  } else if (n > step_budget) {
    throw budget_error("restricted enumeration exceeds the budget");
  }
  std::vector<u128> digits(tail_coeffs, 0);
  for (u128 c = 0; c < n; ++c) {
    DensePoly tail(R.fq().p);
    tail.coeffs = digits;
    tail.trim();
    out.push_back(R.reduce(add(v, mul(R.phi_pows[j], tail))));
    for (unsigned i = 0; i < tail_coeffs; ++i) {
      if (++digits[i] < R.fq().p) break;
      digits[i] = 0;
    }
  }
}

// y0 digit + p*y1 + p^2*y2 as one polynomial mod p^(k-1).
inline DensePoly combine_digits(const std::vector<DensePoly>& digits, u64 p, u128 target_modulus) {
  DensePoly r(target_modulus);
  std::size_t n = 0;
  for (const auto& d : digits) n = std::max(n, d.coeffs.size());
  r.coeffs.assign(n, 0);
  u128 pw = 1;
  for (const auto& d : digits) {
    for (std::size_t i = 0; i < d.coeffs.size(); ++i) r.coeffs[i] += pw * d.coeffs[i];
    pw *= p;
  }
  r.trim();
  return r;
}

}  // namespace detail

// Number of monic g = phi^a - p*y dividing f mod p^k, i.e. of admissible
// y mod p^(k-1) with every digit of x-degree < a*deg(phi).
inline u128 count_monic_lifts(const RootDescription& desc, const ReductionInstance& inst,
                              u64 budget = kDefaultEnumBudget) {
  const PhiAdicRing& R = desc.ring0;
  const unsigned a = inst.a;
  const unsigned k = desc.k;
  const unsigned L = inst.ell();
  u128 total = 0;
  for (const auto& st : desc.strata) {
    u128 sum = 0;
    if (k == 2) {
      sum = detail::restricted_coset_count(st.rep.v, st.rep.j, a, R);
      for (const auto& ex : st.excluded) sum -= detail::restricted_coset_count(ex.v, ex.j, a, R);
    } else {
      unsigned m = L - st.r;  // y1 congruence length in this stratum
      if (m < a) {
        // y1 count per y0 is the uniform q^(a-m); no rule evaluation needed
        u128 good = detail::restricted_coset_count(st.rep.v, st.rep.j, a, R);
        for (const auto& ex : st.excluded) good -= detail::restricted_coset_count(ex.v, ex.j, a, R);
        sum = checked_mul_u128(good, checked_pow_u128(R.fq().p, (a - m) * R.fq().ext));
      } else {
        // y1 is pinned mod phi^m with m >= a: at most one candidate per
        // y0, decided by the degree of the rule's base value
        for (const auto& y0 : stratum_good_members(desc, st, inst, true, budget)) {
          Y1Rule rule = y1_rule_for(desc, st, inst, y0);
          if (rule.base.degree() < int(a * R.fq().ext)) sum = checked_add_u128(sum, 1);
        }
      }
    }
    total = checked_add_u128(total, sum);
  }
  if (k == 4) total = checked_mul_u128(total, checked_pow_u128(R.fq().p, a * R.fq().ext));
  return total;
}

// The admissible y values mod p^(k-1) (monic digit shape), at most
// `limit` of them, in stratum-then-lexicographic order.
inline std::vector<DensePoly> enumerate_monic_lift_ys(const RootDescription& desc,
                                                      const ReductionInstance& inst, u64 limit,
                                                      u64 budget = kDefaultEnumBudget) {
  const PhiAdicRing& R = desc.ring0;
  const unsigned a = inst.a;
  const unsigned k = desc.k;
  const unsigned L = inst.ell();
  const u128 target_modulus = k == 2 ? u128(inst.pp.p) : inst.pp.pk / inst.pp.p;
  std::vector<DensePoly> out;
  std::vector<DensePoly> y2_pool;  // free digit: any limit-sized sample suffices
  if (k == 4) detail::append_restricted_members(R.zero(), 0, a, R, budget, limit, y2_pool);
  for (const auto& st : desc.strata) {
    if (out.size() >= limit) break;
    // in strata with y1 congruence length below a, every good y0 yields
    // at least one lift, so the y0 scan can stop after `limit` hits; the
    // pinned-y1 strata (length >= a) may need the full scan
    bool uniform_y1 = k == 2 || L - st.r < a;
    u64 y0_cap = uniform_y1 ? limit : ~u64(0);
    for (const auto& y0 : stratum_good_members(desc, st, inst, true, budget, y0_cap)) {
      if (out.size() >= limit) break;
      if (k == 2) {
        out.push_back(detail::combine_digits({y0}, inst.pp.p, target_modulus));
        continue;
      }
      Y1Rule rule = y1_rule_for(desc, st, inst, y0);
      std::vector<DensePoly> y1s;
      detail::append_restricted_members(rule.base, rule.fixed_len, a, R, budget, limit, y1s);
      for (const auto& y1 : y1s) {
        if (out.size() >= limit) break;
        if (k == 3) {
          out.push_back(detail::combine_digits({y0, y1}, inst.pp.p, target_modulus));
          continue;
        }
        for (const auto& y2 : y2_pool) {
          if (out.size() >= limit) break;
          out.push_back(detail::combine_digits({y0, y1, y2}, inst.pp.p, target_modulus));
        }
      }
    }
  }
  return out;
}

// phi^a - p*y as a monic polynomial mod p^k.
inline DensePoly monic_lift_from_y(const ReductionInstance& inst, const DensePoly& y) {
  DensePoly ylift = lift_to_modulus(y, inst.pp.pk);
  DensePoly g = sub(inst.ring.phi_lift_pow(inst.a), mul_scalar(ylift, inst.pp.p));
  PKF_CHECK(g.is_monic(), "lift is not monic");
  return g;
}

// ----------------------------------------------------------------------
// verify_factor
// ----------------------------------------------------------------------

// True iff some h satisfies g*h = f mod p^k, by euclidean division.
inline bool verify_factor(const DensePoly& f, const DensePoly& g, const PrimePower& pp) {
  if (f.modulus != pp.pk || g.modulus != pp.pk) throw error("modulus mismatch");
  if (!g.is_monic()) throw error("verify_factor: divisor must be monic");
  return divrem(f, g).second.is_zero();
}

// ----------------------------------------------------------------------
// factor / irreducibility
// ----------------------------------------------------------------------

struct FactorOutcome {
  bool factored = false;
  DensePoly g, h;  // monic, g*h = reduced_input mod p^k, ordered by (deg, lex)
  unsigned stripped_power = 0;
  DensePoly reduced_input;  // the monic polynomial actually factored
  // exponents a <= e/2 examined in the power-of-irreducible case, each
  // with its root description; irreducibility means none admits a monic
  // lift
  std::vector<std::pair<unsigned, RootDescription>> certificate;
};

inline FactorOutcome factor(const DensePoly& f_in, const PrimePower& pp, Rng& rng,
                            u64 budget = kDefaultEnumBudget) {
  if (pp.k > 4) throw error("factoring supports k <= 4");
  FactorOutcome out;
  DensePoly f = normalize_input(f_in, pp, &out.stripped_power);
  out.reduced_input = f;

  DensePoly fbar = reduce_to_modulus(f, pp.p);
  auto parts = cz_factor(fbar, rng);
  if (parts.size() >= 2) {
    // coprime split: classical Hensel lifting
    DensePoly g0 = pow_u(parts[0].first, parts[0].second);
    DensePoly h0 = DensePoly::constant(pp.p, 1);
    for (std::size_t i = 1; i < parts.size(); ++i)
      h0 = mul(h0, pow_u(parts[i].first, parts[i].second));
    auto lifted = hensel_lift(f, g0, h0, bezout_mod_p(g0, h0), pp);
    out.factored = true;
    out.g = lifted.g;
    out.h = lifted.h;
    if (poly_less(out.h, out.g)) std::swap(out.g, out.h);
    return out;
  }

  const unsigned e = parts[0].second;
  if (e == 1) return out;  // irreducible mod p, hence mod p^k

  if (pp.k == 1) {
    // plain residue-field factorization already split f completely
    out.factored = true;
    out.g = lift_to_modulus(parts[0].first, pp.pk);
    out.h = divrem(f, out.g).first;
    if (poly_less(out.h, out.g)) std::swap(out.g, out.h);
    return out;
  }

  PowerForm form = detail::power_form_from(f, parts[0].first, e, pp);
  for (unsigned a = 1; 2 * a <= e; ++a) {
    ReductionInstance inst = build_reduction(form, a, pp);
    RootDescription desc = roots_k(inst, rng);
    auto ys = enumerate_monic_lift_ys(desc, inst, 1, budget);
    if (!ys.empty()) {
      DensePoly h = monic_lift_from_y(inst, ys[0]);
      DensePoly g = cofactor_from_root(inst, lift_to_modulus(ys[0], pp.pk));
      PKF_CHECK(g.is_monic(), "cofactor of a monic factor must be monic");
      out.factored = true;
      out.g = std::move(h);
      out.h = std::move(g);
      if (poly_less(out.h, out.g)) std::swap(out.g, out.h);
      return out;
    }
    out.certificate.emplace_back(a, std::move(desc));
  }
  return out;  // no monic factor for any a <= e/2: irreducible
}

// ----------------------------------------------------------------------
// lift enumeration (Hensel generalization to the non-coprime case)
// ----------------------------------------------------------------------

struct LiftDescription {
  DensePoly base;       // the monic mod-p factor phi^a
  unsigned a = 0;       // its exponent
  unsigned solved = 0;  // exponent the solver ran with: min(a, e-a)
  bool via_cofactor = false;
  u128 count = 0;  // exact number of monic lifts dividing f mod p^k
  DensePoly f_norm;
  std::optional<ReductionInstance> inst;
  std::optional<RootDescription> desc;
};

inline LiftDescription enumerate_lifts(const DensePoly& f_in, const DensePoly& gtilde,
                                       const PrimePower& pp, Rng& rng,
                                       u64 budget = kDefaultEnumBudget) {
  if (pp.k > 4) throw error("lift enumeration supports k <= 4");
  LiftDescription ld;
  DensePoly f = normalize_input(f_in, pp, nullptr);
  ld.f_norm = f;

  DensePoly fbar = reduce_to_modulus(f, pp.p);
  auto parts = cz_factor(fbar, rng);
  if (parts.size() != 1)
    throw error("f mod p is not a power of one irreducible; decompose f first");
  const DensePoly& phi = parts[0].first;
  const unsigned e = parts[0].second;

  if (gtilde.modulus != pp.p) throw error("the factor must be given mod p");
  DensePoly gbar = gtilde;
  gbar.canonicalize();
  if (gbar.is_zero()) throw error("the given factor vanishes mod p");
  if (gbar.lc() != 1) gbar = mul_scalar(gbar, inv_mod(gbar.lc(), pp.p));
  unsigned dphi = unsigned(phi.degree());
  if (unsigned(gbar.degree()) % dphi != 0)
    throw error("the given polynomial is not a factor of f mod p");
  unsigned a = unsigned(gbar.degree()) / dphi;
  if (a > e || !(gbar == pow_u(phi, a)))
    throw error("the given polynomial is not a factor of f mod p");

  ld.base = gbar;
  ld.a = a;
  if (a == 0 || a == e || pp.k == 1) {
    // the only monic lift of a unit is 1, the only monic lift of the
    // whole of f dividing f is f itself, and mod p the lift of phi^a is
    // phi^a
    ld.count = 1;
    return ld;
  }
  unsigned b = std::min(a, e - a);
  ld.solved = b;
  ld.via_cofactor = a != b;
  PowerForm form = detail::power_form_from(f, phi, e, pp);
  ld.inst.emplace(build_reduction(form, b, pp));
  ld.desc.emplace(roots_k(*ld.inst, rng));
  ld.count = count_monic_lifts(*ld.desc, *ld.inst, budget);
  return ld;
}

// Up to `limit` explicit monic lifts described by `ld`, each dividing f.
inline std::vector<DensePoly> expand_lifts(const LiftDescription& ld, const PrimePower& pp,
                                           u64 limit, u64 budget = kDefaultEnumBudget) {
  std::vector<DensePoly> out;
  if (limit == 0) return out;
  if (ld.a == 0) {
    out.push_back(DensePoly::constant(pp.pk, 1));
    return out;
  }
  if (!ld.inst.has_value()) {
    // k == 1: the lift is phi^a itself; otherwise a == e and it is f
    out.push_back(pp.k == 1 ? lift_to_modulus(ld.base, pp.pk) : ld.f_norm);
    return out;
  }
  auto ys = enumerate_monic_lift_ys(*ld.desc, *ld.inst, limit, budget);
  out.reserve(ys.size());
  for (const auto& y : ys) {
    if (ld.via_cofactor)
      out.push_back(cofactor_from_root(*ld.inst, lift_to_modulus(y, pp.pk)));
    else
      out.push_back(monic_lift_from_y(*ld.inst, y));
  }
  return out;
}

// ----------------------------------------------------------------------
// counting all monic factors mod p^3
// ----------------------------------------------------------------------

struct PartFactorCount {
  DensePoly phi;
  unsigned e = 0;
  u128 part_total = 0;  // monic divisors of this part, including 1 and the part
  std::vector<std::pair<unsigned, u128>> per_exponent;
};

struct P3FactorCount {
  u128 total = 0;       // monic divisors of f mod p^3, including 1 and f
  u128 nontrivial = 0;  // excluding 1 and f
  std::vector<PartFactorCount> parts;
};

inline P3FactorCount count_factors_p3(const DensePoly& f_in, const PrimePower& pp, Rng& rng,
                                      u64 budget = kDefaultEnumBudget) {
  if (pp.k != 3) throw error("count_factors_p3 requires k = 3");
  DensePoly f = normalize_input(f_in, pp, nullptr);
  auto forms = decompose(f, pp, rng);
  P3FactorCount result;
  result.total = 1;
  for (const auto& form : forms) {
    PartFactorCount pc;
    pc.phi = form.phi;
    pc.e = form.e;
    pc.per_exponent.emplace_back(0, 1);
    std::vector<std::optional<u128>> cache(form.e);  // count per solved exponent b
    for (unsigned a = 1; a < form.e; ++a) {
      unsigned b = std::min(a, form.e - a);
      if (!cache[b].has_value()) {
        ReductionInstance inst = build_reduction(form, b, pp);
        RootDescription desc = roots_k(inst, rng);
        cache[b] = count_monic_lifts(desc, inst, budget);
      }
      pc.per_exponent.emplace_back(a, *cache[b]);
    }
    pc.per_exponent.emplace_back(form.e, 1);
    pc.part_total = 0;
    for (auto& [a, n] : pc.per_exponent) pc.part_total = checked_add_u128(pc.part_total, n);
    result.total = checked_mul_u128(result.total, pc.part_total);
    result.parts.push_back(std::move(pc));
  }
  result.nontrivial = result.total - 2;
  return result;
}

}  // namespace pkfactor

#endif  // PKFACTOR_FACTOR_HPP
