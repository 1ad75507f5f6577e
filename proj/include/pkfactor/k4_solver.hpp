#ifndef PKFACTOR_K4_SOLVER_HPP
#define PKFACTOR_K4_SOLVER_HPP

// Finds all roots of E(y) mod <p^k, phi^(ak)> for k in {2, 3, 4}.
//
// k = 4 runs in two stages.  First the char-p reduction: a necessary
// divisibility condition on h, then a quadratic over F_p[x]/<phi^a> whose
// representative roots (a0, i0) make E(a0 + phi^(i0) Y0 + p Y1) divisible
// by p^3; the quotient has the special shape E1(Y0) + E2(Y0) Y1 with E1
// cubic and E2 linear.  Second the bivariate stage: stratify Y0 by the
// exact phi-valuation r of E2(Y0); wherever val E1 >= val E2 = r the digit
// Y1 is solvable and carries q^r freedom.
//
// k = 3 reduces to one plain root-find of E/p^2, and k = 2 to a
// divisibility test: either every y0 works or nothing does.

#include <utility>
#include <vector>

#include "pkfactor/reduction.hpp"
#include "pkfactor/rep_roots.hpp"

namespace pkfactor {

// One anchor (a0, i0) from the char-p reduction together with the shifted
// quotient E' = y1_free(Y0) + y1_coef(Y0) * Y1 over F_p[x]/<phi^(ak)>.
struct SolverBranch {
  RepRoot anchor;
  std::vector<DensePoly> y1_free;  // cubic in Y0
  std::vector<DensePoly> y1_coef;  // linear in Y0
};

struct CharPReduction {
  std::vector<SolverBranch> branches;  // at most two
};

// One valuation stratum of candidate y0 values, in absolute coordinates.
// The good set is rep minus the excluded subcosets; exclusion is local to
// the stratum.  Each good y0 admits exactly q^r choices of y1.
struct Stratum {
  int branch = -1;  // index into CharPReduction::branches; -1 for k in {2, 3}
  unsigned r = 0;
  RepRoot rep;
  std::vector<RepRoot> excluded;
};

struct RootDescription {
  unsigned k = 0;
  unsigned a = 0;
  PhiAdicRing ring0;  // F_p[x]/<phi^(ak)>
  CharPReduction reduction;
  std::vector<Stratum> strata;

  bool has_roots() const { return !strata.empty(); }
};

// ----------------------------------------------------------------------
// char-p reduction (k = 4)
// ----------------------------------------------------------------------

// g(A + phi^i * T) over the phi-adic ring, expanded by Horner.
inline std::vector<DensePoly> compose_affine(const PhiAdicRing& R, const std::vector<DensePoly>& g,
                                             const DensePoly& A, unsigned i) {
  std::vector<DensePoly> res;
  for (std::size_t m = g.size(); m-- > 0;) {
    std::vector<DensePoly> next(res.size() + 1, R.zero());
    for (std::size_t j = 0; j < res.size(); ++j) {
      next[j] = R.add(next[j], R.mul(res[j], A));
      next[j + 1] = R.add(next[j + 1], R.mul_uni_pow(res[j], i));
    }
    next[0] = R.add(next[0], R.reduce(g[m]));
    res = std::move(next);
  }
  while (!res.empty() && R.is_zero(res.back())) res.pop_back();
  return res;
}

inline CharPReduction reduce_to_char_p(const ReductionInstance& inst, Rng& rng) {
  PKF_CHECK(inst.pp.k == 4, "char-p reduction is the k = 4 path");
  PKF_CHECK(2 * inst.a <= inst.form.e, "solver requires a <= e/2");
  const u64 p = inst.pp.p;
  const unsigned a = inst.a;
  const DensePoly& phi = inst.form.phi;
  CharPReduction red;

  // Necessary condition: h = 0 mod <p, phi^a>.  Then h = p*h11 + phi^a*h12.
  DensePoly hbar = reduce_to_modulus(inst.form.h, p);
  auto [h12, rem_h] = divrem(hbar, pow_u(phi, a));
  if (!rem_h.is_zero()) return red;  // no y0 can exist for this exponent

  u128 p3 = inst.form.h.modulus;  // p^(k-1)
  DensePoly carried = sub(inst.form.h, mul(pow_u(lift_to_modulus(phi, p3), a), lift_to_modulus(h12, p3)));
  DensePoly h11(p);
  h11.coeffs.resize(carried.coeffs.size());
  for (std::size_t i = 0; i < carried.coeffs.size(); ++i) {
    PKF_CHECK(carried.coeffs[i] % p == 0, "h split is not exact");
    h11.coeffs[i] = (carried.coeffs[i] / p) % p;
  }
  h11.trim();

  // Quadratic phi^(e-2a) Y0^2 + h12 Y0 + h11 = 0 mod <p, phi^a>.
  PhiAdicRing ring_a(FqCtx(p, phi), a);
  std::vector<DensePoly> quad = {ring_a.reduce(h11), ring_a.reduce(h12),
                                 ring_a.reduce(pow_u(phi, inst.form.e - 2 * a))};
  auto anchors = root_find_generic(ring_a, std::move(quad), rng);
  PKF_CHECK(anchors.size() <= 2, "quadratic produced more than two anchors");

  // For each anchor substitute y = a0 + phi^(i0) Y0 + p Y1 into E and
  // divide by p^3 with explicit quotient-ideal bookkeeping.
  const LocalRingCtx& R = inst.ring;
  for (const auto& anchor : anchors) {
    BivarPoly shift(R.pp.pk);
    shift.set(0, 0, R.reduce(lift_to_modulus(anchor.v, R.pp.pk)));
    shift.set(1, 0, R.phi_lift_pow(anchor.j));
    shift.set(0, 1, DensePoly::constant(R.pp.pk, p));

    BivarPoly acc(R.pp.pk);
    BivarPoly pw = BivarPoly::constant_elem(R.one());
    for (unsigned i = 0; i < inst.pp.k; ++i) {
      if (i > 0) pw = bivar_mul(pw, shift, R);
      acc = bivar_add(acc, bivar_mul(BivarPoly::constant_elem(inst.coeff[i]), pw, R), R);
    }

    LocalRingCtx I3 = R.with(3, inst.ell());
    LocalRingCtx I2 = R.with(2, inst.ell());
    BivarPoly quotient = bivar_exact_div_p(bivar_exact_div_p(bivar_exact_div_p(acc, R), I3), I2);

    SolverBranch br;
    br.anchor = anchor;
    br.y1_free.assign(4, DensePoly(p));
    br.y1_coef.assign(2, DensePoly(p));
    for (unsigned i = 0; i <= unsigned(std::max(quotient.deg0(), 0)); ++i)
      for (unsigned j = 0; j < 8; ++j) {
        DensePoly cij = quotient.get(i, j);
        if (cij.is_zero()) continue;
        if (j == 0) {
          PKF_CHECK(i <= 3, "y1-free part exceeds degree 3");
          br.y1_free[i] = std::move(cij);
        } else if (j == 1) {
          PKF_CHECK(i <= 1, "y1 coefficient exceeds degree 1");
          br.y1_coef[i] = std::move(cij);
        } else {
          PKF_CHECK(false, "unexpected y1 power after dividing by p^3");
        }
      }
    while (!br.y1_free.empty() && br.y1_free.back().is_zero()) br.y1_free.pop_back();
    while (!br.y1_coef.empty() && br.y1_coef.back().is_zero()) br.y1_coef.pop_back();
    red.branches.push_back(std::move(br));
  }
  return red;
}

// ----------------------------------------------------------------------
// bivariate stage (k = 4)
// ----------------------------------------------------------------------

namespace detail {

// (anchor.v + phi^(anchor.j) * rel.v, anchor.j + rel.j), capped at the
// ambient precision.
inline RepRoot shift_rep(const RepRoot& anchor, const RepRoot& rel, const PhiAdicRing& R) {
  unsigned j = std::min(R.prec(), anchor.j + rel.j);
  DensePoly v = R.reduce_mod(add(anchor.v, R.reduce(mul(R.phi_pows[anchor.j], rel.v))), j);
  return {std::move(v), j};
}

}  // namespace detail

inline RootDescription solve_bivariate(const CharPReduction& red, const ReductionInstance& inst,
                                       Rng& rng) {
  const unsigned L = inst.ell();
  PhiAdicRing ring0(FqCtx(inst.pp.p, inst.form.phi), L);
  RootDescription desc{inst.pp.k, inst.a, ring0, red, {}};
  const FqCtx& F = ring0.fq();

  for (std::size_t bi = 0; bi < red.branches.size(); ++bi) {
    const SolverBranch& br = red.branches[bi];
    std::vector<DensePoly> e1 = br.y1_free;
    std::vector<DensePoly> e2 = br.y1_coef;
    for (auto& c : e1) c = ring0.reduce(c);
    for (auto& c : e2) c = ring0.reduce(c);

    // r = 0: wherever E2 is a unit, y1 = -E1/E2 always solves; the only
    // residues to exclude are the single theta with E2(theta) = 0 mod phi.
    FqPoly e2hat;
    for (const auto& c : e2) e2hat.c.push_back(ring0.residue(c));
    e2hat.trim();
    if (!e2hat.is_zero()) {
      Stratum st{int(bi), 0, detail::shift_rep(br.anchor, {ring0.zero(), 0}, ring0), {}};
      if (e2hat.degree() == 1) {
        FieldElem theta = fq_neg(F, fq_mul(F, e2hat.coeff(F, 0), fq_inv(F, e2hat.c[1])));
        st.excluded.push_back(
            detail::shift_rep(br.anchor, {ring0.reduce_mod(ring0.lift(theta), 1), 1}, ring0));
      }
      desc.strata.push_back(std::move(st));
    }

    for (unsigned r = 1; r <= L; ++r) {
      PhiAdicRing ring_r = ring0.at_prec(r);
      auto s1 = root_find_generic(ring_r, e1, rng);
      for (const auto& rep1 : s1) {
        auto e2_shift = compose_affine(ring0, e2, rep1.v, rep1.j);
        auto s2 = root_find_generic(ring_r, e2_shift, rng);
        PKF_CHECK(s2.size() <= 1, "linear polynomial with several representative roots");
        if (s2.empty()) continue;
        const auto& rep2 = s2[0];
        unsigned j12 = rep1.j + rep2.j;
        PKF_CHECK(j12 <= L, "combined representative exceeds the precision");
        DensePoly v12 =
            ring0.reduce_mod(add(rep1.v, ring0.reduce(mul(ring0.phi_pows[rep1.j], rep2.v))), j12);

        if (r == L) {
          // both E1 and E2 vanish identically here; y1 is free
          desc.strata.push_back(
              Stratum{int(bi), L, detail::shift_rep(br.anchor, {v12, j12}, ring0), {}});
          continue;
        }

        // E2 on the coset: u + v T with val u, val v >= r.
        auto e2_full = compose_affine(ring0, e2, v12, j12);
        DensePoly uc = e2_full.size() > 0 ? e2_full[0] : ring0.zero();
        DensePoly vc = e2_full.size() > 1 ? e2_full[1] : ring0.zero();
        PKF_CHECK(e2_full.size() <= 2, "shifted E2 is not linear");
        unsigned val_u = ring0.val(uc);
        unsigned val_v = ring0.val(vc);
        PKF_CHECK(val_u >= r && val_v >= r, "representative lost the valuation guarantee");
        if (val_u >= r + 1 && val_v >= r + 1) continue;  // entire coset lives at deeper strata

        Stratum st{int(bi), r, detail::shift_rep(br.anchor, {v12, j12}, ring0), {}};
        if (val_v == r) {
          // unique residue theta pushing val E2 past r inside the coset
          FieldElem ures = ring0.residue(ring0.div_uni(uc, r));
          FieldElem vres = ring0.residue(ring0.div_uni(vc, r));
          FieldElem theta = fq_neg(F, fq_mul(F, ures, fq_inv(F, vres)));
          PKF_CHECK(j12 + 1 <= L, "theta refinement exceeds the precision");
          DensePoly bad = ring0.reduce_mod(
              add(v12, ring0.reduce(mul(ring0.phi_pows[j12], ring0.lift(theta)))), j12 + 1);
          st.excluded.push_back(detail::shift_rep(br.anchor, {bad, j12 + 1}, ring0));
        }
        desc.strata.push_back(std::move(st));
      }
    }
  }

  // structural sanity: excluded subcosets sit strictly inside their
  // stratum representative
  for (const auto& st : desc.strata)
    for (const auto& ex : st.excluded) {
      PKF_CHECK(ex.j > st.rep.j, "excluded coset not finer than its stratum");
      PKF_CHECK(ring0.reduce_mod(ex.v, st.rep.j) == st.rep.v, "excluded coset outside its stratum");
    }
  PKF_CHECK(desc.strata.size() <= std::size_t(8 * inst.a),
            "stratum count exceeds the O(a) bound");
  return desc;
}

// ----------------------------------------------------------------------
// unified k in {2, 3, 4} entry point
// ----------------------------------------------------------------------

inline RootDescription roots_k(const ReductionInstance& inst, Rng& rng) {
  const unsigned k = inst.pp.k;
  if (k < 2 || k > 4) throw error("roots_k supports k in {2, 3, 4}");
  PKF_CHECK(2 * inst.a <= inst.form.e, "solver requires a <= e/2");
  const unsigned L = inst.ell();

  if (k == 4) return solve_bivariate(reduce_to_char_p(inst, rng), inst, rng);

  PhiAdicRing ring0(FqCtx(inst.pp.p, inst.form.phi), L);
  RootDescription desc{k, inst.a, ring0, {}, {}};

  if (k == 2) {
    // E has y-degree 1; p^2 | E coefficientwise iff h = 0 mod <p, phi^a>,
    // and then every y0 is a root with all digits free.
    try {
      for (const auto& c : inst.coeff) {
        DensePoly d1 = exact_div_p(c, inst.ring);
        if (!ring0.is_zero(d1)) return desc;
      }
    } catch (const divisibility_error&) {
      return desc;
    }
    desc.strata.push_back(Stratum{-1, L, {ring0.zero(), 0}, {}});
    return desc;
  }

  // k == 3: one call on E/p^2 over F_p[x]/<phi^(3a)>
  std::vector<DensePoly> quotient;
  try {
    LocalRingCtx I2 = inst.ring.with(2, L);
    for (const auto& c : inst.coeff)
      quotient.push_back(exact_div_p(exact_div_p(c, inst.ring), I2));
  } catch (const divisibility_error&) {
    return desc;
  }
  for (auto& rep : root_find_generic(ring0, std::move(quotient), rng))
    desc.strata.push_back(Stratum{-1, L, std::move(rep), {}});
  return desc;
}

// ----------------------------------------------------------------------
// exact root counting
// ----------------------------------------------------------------------

// Number of roots y in Z[x]/<p^k, phi^(ak)> of E: per stratum,
// (#good y0) * q^r choices of y1 * q^(L*(k-2)) free upper digits.
inline u128 count_roots(const RootDescription& desc, const ReductionInstance& inst) {
  const unsigned L = inst.ell();
  const u128 q = desc.ring0.q();
  u128 total = 0;
  for (const auto& st : desc.strata) {
    u128 good = checked_pow_u128(q, L - st.rep.j);
    for (const auto& ex : st.excluded) {
      PKF_CHECK(ex.j > st.rep.j, "excluded coset not finer than its stratum");
      good -= checked_pow_u128(q, L - ex.j);
    }
    u128 per_stratum = checked_mul_u128(good, checked_pow_u128(q, st.r));
    per_stratum = checked_mul_u128(per_stratum, checked_pow_u128(q, L * (desc.k - 2)));
    total = checked_add_u128(total, per_stratum);
  }
  return total;
}

// ----------------------------------------------------------------------
// concrete members and the y1 rule (shared by lift enumeration)
// ----------------------------------------------------------------------

// y1 is congruent to base modulo phi^fixed_len, with a free tail.
struct Y1Rule {
  DensePoly base;
  unsigned fixed_len = 0;
};

inline Y1Rule y1_rule_for(const RootDescription& desc, const Stratum& st,
                          const ReductionInstance& inst, const DensePoly& y0) {
  const PhiAdicRing& R = desc.ring0;
  if (st.branch < 0 || st.r == inst.ell()) return {R.zero(), 0};
  const SolverBranch& br = desc.reduction.branches[std::size_t(st.branch)];
  DensePoly rel = R.div_uni(sub(R.reduce(y0), lift_to_modulus(br.anchor.v, R.fq().p)), br.anchor.j);
  DensePoly e1v = R.zero();
  for (std::size_t i = br.y1_free.size(); i-- > 0;) e1v = R.add(R.mul(e1v, rel), R.reduce(br.y1_free[i]));
  DensePoly e2v = R.zero();
  for (std::size_t i = br.y1_coef.size(); i-- > 0;) e2v = R.add(R.mul(e2v, rel), R.reduce(br.y1_coef[i]));
  PKF_CHECK(R.val(e2v) == st.r, "y0 does not sit in its valuation stratum");
  PKF_CHECK(R.val(e1v) >= st.r, "no admissible y1 for a supposedly good y0");
  unsigned m = inst.ell() - st.r;
  DensePoly num = R.div_uni(e1v, st.r);
  DensePoly den = R.div_uni(e2v, st.r);
  // invert the unit den modulo phi^m
  const DensePoly& mod = R.phi_pows[m];
  DensePoly g(R.fq().p), u(R.fq().p), v(R.fq().p);
  poly_ext_gcd(rem(den, mod), mod, g, u, v);
  PKF_CHECK(g.degree() == 0, "E2/phi^r is not a unit at a good y0");
  DensePoly inv = mul_scalar(u, inv_mod(g.coeff(0), R.fq().p));
  DensePoly base = rem(mul(neg(num), inv), mod);
  return {std::move(base), m};
}

// Anything the anchor's coset constrains is already inside rep; members
// are rep.v + phi^(rep.j) * tail minus the excluded subcosets.  With
// `restricted`, only members of x-degree < a*deg(phi) are produced (the
// digit shape monic lifts need).  At most max_out survivors are emitted;
// candidate scanning beyond step_budget raises budget_error rather than
// silently claiming the stratum is empty.
inline std::vector<DensePoly> stratum_good_members(const RootDescription& desc, const Stratum& st,
                                                   const ReductionInstance& inst, bool restricted,
                                                   u64 step_budget, u64 max_out = ~u64(0)) {
  const PhiAdicRing& R = desc.ring0;
  unsigned bound = inst.a * R.fq().ext;  // x-degree bound for monic digits
  std::vector<DensePoly> out;
  auto survives = [&](const DensePoly& y0) {
    for (const auto& ex : st.excluded)
      if (rep_contains(ex, y0, R)) return false;
    return true;
  };
  if (!restricted) {
    for (auto& y0 : rep_expand(st.rep, R, step_budget)) {
      if (out.size() >= max_out) break;
      if (survives(y0)) out.push_back(std::move(y0));
    }
    return out;
  }
  if (st.rep.j >= inst.a) {
    if (max_out > 0 && st.rep.v.degree() < int(bound) && survives(st.rep.v))
      out.push_back(st.rep.v);
    return out;
  }
  unsigned tail_coeffs = (inst.a - st.rep.j) * R.fq().ext;
  u128 n = checked_pow_u128(R.fq().p, tail_coeffs);
  std::vector<u128> digits(tail_coeffs, 0);
  const DensePoly& phi_j = R.phi_pows[st.rep.j];
  for (u128 c = 0; c < n && out.size() < max_out; ++c) {
    if (c >= step_budget) throw budget_error("restricted member enumeration exceeds the budget");
    DensePoly tail(R.fq().p);
    tail.coeffs = digits;
    tail.trim();
    DensePoly y0 = R.reduce(add(st.rep.v, mul(phi_j, tail)));
    if (survives(y0)) out.push_back(std::move(y0));
    for (unsigned i = 0; i < tail_coeffs; ++i) {
      if (++digits[i] < R.fq().p) break;
      digits[i] = 0;
    }
  }
  return out;
}

}  // namespace pkfactor

#endif  // PKFACTOR_K4_SOLVER_HPP
