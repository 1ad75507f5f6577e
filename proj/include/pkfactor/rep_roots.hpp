#ifndef PKFACTOR_REP_ROOTS_HPP
#define PKFACTOR_REP_ROOTS_HPP

// Representative roots (v + pi^j * ...) and recursive root finding over
// local rings.  The routine is generic in the (uniformizer, residue field)
// pair: the primary instance is F_p[x]/<phi^i> with uniformizer phi, and
// the same code runs over Z/<p^n> with uniformizer p.

#include <utility>
#include <vector>

#include "pkfactor/residue_field.hpp"
#include "pkfactor/ring.hpp"
#include "pkfactor/rng.hpp"

namespace pkfactor {

// ----------------------------------------------------------------------
// representative roots
// ----------------------------------------------------------------------

// (v, j) denotes the coset v + pi^j * t over all ring elements t: the set
// of elements whose first j pi-adic digits agree with v.  v is stored
// reduced mod pi^j.  In a ring of precision ell the coset has q^(ell-j)
// elements, q the residue field size.
template <class Elem>
struct RepRootT {
  Elem v;
  unsigned j = 0;

  friend bool operator==(const RepRootT& a, const RepRootT& b) {
    return a.j == b.j && a.v == b.v;
  }
};

using RepRoot = RepRootT<DensePoly>;
using PadicRepRoot = RepRootT<u128>;

struct RepRootSet {
  std::vector<RepRoot> members;

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

// ----------------------------------------------------------------------
// ring instances
// ----------------------------------------------------------------------

// F_p[x]/<phi^precision>, uniformizer phi, residue field F_q.
struct PhiAdicRing {
  using Elem = DensePoly;

  FqCtx field;
  unsigned precision = 0;
  std::vector<DensePoly> phi_pows;  // phi^0 .. phi^precision over F_p

  PhiAdicRing(FqCtx f, unsigned prec_) : field(std::move(f)), precision(prec_) {
    if (precision < 1) throw error("precision must be >= 1");
    phi_pows.reserve(precision + 1);
    phi_pows.push_back(DensePoly::constant(field.p, 1));
    for (unsigned j = 1; j <= precision; ++j)
      phi_pows.push_back(pkfactor::mul(phi_pows.back(), field.phi));
  }

  unsigned prec() const { return precision; }
  const FqCtx& fq() const { return field; }
  u128 q() const {
    u128 q0;
    if (!field.q_fits_u128(q0)) throw budget_error("residue field size overflows");
    return q0;
  }

  PhiAdicRing at_prec(unsigned p2) const { return PhiAdicRing(field, p2); }

  Elem zero() const { return DensePoly(field.p); }
  Elem one() const { return DensePoly::constant(field.p, 1); }
  Elem uniformizer() const { return field.phi; }

  Elem reduce(const Elem& e) const {
    if (e.modulus != field.p) throw error("element modulus mismatch");
    if (e.degree() < int(precision * field.ext)) return e;
    return rem(e, phi_pows[precision]);
  }
  Elem reduce_mod(const Elem& e, unsigned j) const {
    PKF_CHECK(j <= precision, "reduce_mod precision");
    return rem(e, phi_pows[j]);
  }
  bool is_zero(const Elem& e) const { return reduce(e).is_zero(); }
  bool elem_eq(const Elem& a, const Elem& b) const { return reduce(a) == reduce(b); }
  bool elem_less(const Elem& a, const Elem& b) const { return poly_less(a, b); }

  unsigned val(const Elem& e) const {
    Elem r = reduce(e);
    if (r.is_zero()) return precision;
    unsigned v = 0;
    while (v < precision) {
      auto [q0, rest] = divrem(r, field.phi);
      if (!rest.is_zero()) break;
      r = std::move(q0);
      ++v;
      if (r.is_zero()) return precision;
    }
    return v;
  }

  Elem div_uni(const Elem& e, unsigned r) const {
    Elem red = reduce(e);
    if (r == 0) return red;
    auto [q0, rest] = divrem(red, phi_pows[r]);
    if (!rest.is_zero()) throw divisibility_error("not divisible by the uniformizer power");
    return q0;
  }

  Elem mul_uni_pow(const Elem& e, unsigned r) const {
    PKF_CHECK(r <= precision, "uniformizer power");
    return reduce(mul(e, phi_pows[r]));
  }

  FieldElem residue(const Elem& e) const { return fq_make(field, rem(e, field.phi)); }
  Elem lift(const FieldElem& a) const { return a.rep; }

  Elem add(const Elem& a, const Elem& b) const { return pkfactor::add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return pkfactor::sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return reduce(pkfactor::mul(a, b)); }
};

// Z/<p^precision>, uniformizer p, residue field F_p.
struct PAdicRing {
  using Elem = u128;

  u64 p = 0;
  unsigned precision = 0;
  FqCtx field;
  std::vector<u128> p_pows;  // p^0 .. p^precision

  PAdicRing(u64 p_, unsigned prec_) : p(p_), precision(prec_), field(FqCtx::prime_field(p_)) {
    if (precision < 1) throw error("precision must be >= 1");
    p_pows.reserve(precision + 1);
    p_pows.push_back(1);
    for (unsigned j = 1; j <= precision; ++j) {
      if (p_pows.back() > kMaxModulus / p) throw error("p^n exceeds the supported word size");
      p_pows.push_back(p_pows.back() * p);
    }
  }

  unsigned prec() const { return precision; }
  const FqCtx& fq() const { return field; }
  u128 q() const { return p; }

  PAdicRing at_prec(unsigned p2) const { return PAdicRing(p, p2); }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem uniformizer() const { return p; }

  Elem reduce(const Elem& e) const { return e % p_pows[precision]; }
  Elem reduce_mod(const Elem& e, unsigned j) const { return e % p_pows[j]; }
  bool is_zero(const Elem& e) const { return reduce(e) == 0; }
  bool elem_eq(const Elem& a, const Elem& b) const { return reduce(a) == reduce(b); }
  bool elem_less(const Elem& a, const Elem& b) const { return a < b; }

  unsigned val(const Elem& e) const { return val_p_scalar(reduce(e), p, precision); }

  Elem div_uni(const Elem& e, unsigned r) const {
    Elem red = reduce(e);
    if (red % p_pows[r] != 0) throw divisibility_error("not divisible by the uniformizer power");
    return red / p_pows[r];
  }

  Elem mul_uni_pow(const Elem& e, unsigned r) const { return mulmod(e, p_pows[r], p_pows[precision]); }

  FieldElem residue(const Elem& e) const { return fq_from_scalar(field, reduce(e) % p); }
  Elem lift(const FieldElem& a) const { return a.rep.coeff(0); }

  Elem add(const Elem& a, const Elem& b) const { return addmod(a, b, p_pows[precision]); }
  Elem sub(const Elem& a, const Elem& b) const { return submod(a, b, p_pows[precision]); }
  Elem mul(const Elem& a, const Elem& b) const { return mulmod(a, b, p_pows[precision]); }
};

// ----------------------------------------------------------------------
// generic recursive root finding
// ----------------------------------------------------------------------

// h(T) = g(A + pi*T), expanded by Horner with ring coefficients.
template <class Ring>
std::vector<typename Ring::Elem> compose_linear_shift(const Ring& R,
                                                      const std::vector<typename Ring::Elem>& g,
                                                      const typename Ring::Elem& A) {
  using Elem = typename Ring::Elem;
  std::vector<Elem> res;
  for (std::size_t m = g.size(); m-- > 0;) {
    std::vector<Elem> next(res.size() + 1, R.zero());
    for (std::size_t j = 0; j < res.size(); ++j) {
      next[j] = R.add(next[j], R.mul(res[j], A));
      next[j + 1] = R.add(next[j + 1], R.mul_uni_pow(res[j], 1));
    }
    next[0] = R.add(next[0], g[m]);
    res = std::move(next);
  }
  return res;
}

// All roots of g over the precision-prec() ring, as a disjoint union of at
// most max(1, deg g) representative cosets.  An empty result means no
// roots; {(0, 0)} is the whole ring.
//
// Every recursive call operates on a polynomial divisible by the
// uniformizer, so the precision argument drops by at least one per level
// after the first; `fuel` enforces that termination argument.
template <class Ring>
std::vector<RepRootT<typename Ring::Elem>> root_find_generic(const Ring& R,
                                                             std::vector<typename Ring::Elem> g,
                                                             Rng& rng, unsigned fuel = 0) {
  using Elem = typename Ring::Elem;
  using Rep = RepRootT<Elem>;
  if (fuel == 0) fuel = 2 * R.prec() + 4;
  PKF_CHECK(fuel > 1, "root_find failed to make progress");
  for (auto& c : g) c = R.reduce(c);
  while (!g.empty() && R.is_zero(g.back())) g.pop_back();
  if (g.empty()) return {Rep{R.zero(), 0}};
  int deg = int(g.size()) - 1;

  unsigned alpha = R.prec();
  for (const auto& c : g) alpha = std::min(alpha, R.val(c));
  PKF_CHECK(alpha < R.prec(), "nonzero polynomial with full content valuation");
  Ring Rp = R.at_prec(R.prec() - alpha);
  if (alpha > 0) {
    for (auto& c : g) c = Rp.reduce(R.div_uni(c, alpha));
    while (!g.empty() && Rp.is_zero(g.back())) g.pop_back();
  }
  unsigned iprime = Rp.prec();

  FqPoly ghat;
  for (const auto& c : g) ghat.c.push_back(Rp.residue(c));
  ghat.trim();
  PKF_CHECK(!ghat.is_zero(), "stripped polynomial vanishes mod the uniformizer");

  std::vector<Rep> out;
  if (ghat.degree() == 0) return out;  // unit constant: dead end
  auto roots = fq_poly_roots(Rp.fq(), ghat, rng);
  for (const auto& a : roots) {
    Elem lifted = Rp.lift(a);
    if (iprime == 1) {
      out.push_back(Rep{Rp.reduce_mod(lifted, 1), 1});
      continue;
    }
    auto ga = compose_linear_shift(Rp, g, lifted);
    auto sub = root_find_generic(Rp, std::move(ga), rng, fuel - 1);
    for (auto& rr : sub) {
      PKF_CHECK(rr.j + 1 <= iprime, "representative fixes digits past the precision");
      Elem v = Rp.reduce_mod(Rp.add(lifted, Rp.mul_uni_pow(rr.v, 1)), rr.j + 1);
      out.push_back(Rep{std::move(v), rr.j + 1});
    }
  }
  PKF_CHECK(out.size() <= std::size_t(std::max(1, deg)),
            "more representative roots than the degree allows");
  std::sort(out.begin(), out.end(), [&](const Rep& x, const Rep& y) {
    if (x.j != y.j) return x.j < y.j;
    return R.elem_less(x.v, y.v);
  });
  return out;
}

// ----------------------------------------------------------------------
// the primary phi-adic surface
// ----------------------------------------------------------------------

inline RepRootSet root_find(const std::vector<DensePoly>& g, const PhiAdicRing& R, Rng& rng) {
  RepRootSet s;
  s.members = root_find_generic(R, g, rng);
  return s;
}

inline std::vector<PadicRepRoot> root_find_padic(const DensePoly& g, u64 p, unsigned n, Rng& rng) {
  PAdicRing R(p, n);
  if (g.modulus != R.p_pows[n]) throw error("modulus mismatch: expected p^n");
  std::vector<u128> coeffs(g.coeffs.begin(), g.coeffs.end());
  return root_find_generic(R, std::move(coeffs), rng);
}

// Elementwise image a + s*S.  Writing s = phi^i * u with u a unit, the
// image of (v, j) is the single coset (a + s v, min(i + j, ell)); s == 0
// is rejected.
inline RepRootSet rep_scale_shift(const DensePoly& a, const DensePoly& s, const RepRootSet& S,
                                  const PhiAdicRing& R) {
  DensePoly sred = R.reduce(s);
  if (sred.is_zero()) throw error("rep_scale_shift: scaling by zero collapses the set");
  unsigned i = R.val(sred);
  DensePoly ared = R.reduce(a);
  RepRootSet out;
  out.members.reserve(S.members.size());
  for (const auto& m : S.members) {
    unsigned nj = std::min(R.prec(), i + m.j);
    DensePoly nv = R.reduce_mod(R.add(ared, R.mul(sred, m.v)), nj);
    out.members.push_back(RepRoot{std::move(nv), nj});
  }
  std::sort(out.members.begin(), out.members.end(), [&](const RepRoot& x, const RepRoot& y) {
    if (x.j != y.j) return x.j < y.j;
    return poly_less(x.v, y.v);
  });
  return out;
}

inline bool reps_overlap(const RepRoot& x, const RepRoot& y, const PhiAdicRing& R) {
  unsigned j = std::min(x.j, y.j);
  return R.reduce_mod(x.v, j) == R.reduce_mod(y.v, j);
}

// Total number of elements denoted by a disjoint representative set.
inline u128 rep_count(const RepRootSet& S, const PhiAdicRing& R) {
  for (std::size_t i = 0; i < S.members.size(); ++i)
    for (std::size_t j = i + 1; j < S.members.size(); ++j)
      if (reps_overlap(S.members[i], S.members[j], R))
        throw error("rep_count: representatives overlap");
  u128 total = 0;
  for (const auto& m : S.members)
    total = checked_add_u128(total, checked_pow_u128(R.q(), R.prec() - m.j));
  return total;
}

// Membership of a concrete element in the coset (v, j).
inline bool rep_contains(const RepRoot& m, const DensePoly& y, const PhiAdicRing& R) {
  return R.reduce_mod(R.reduce(y), m.j) == m.v;
}

// Expand a representative into every denoted element (small rings only).
inline std::vector<DensePoly> rep_expand(const RepRoot& m, const PhiAdicRing& R, u64 budget) {
  u128 n = checked_pow_u128(R.q(), R.prec() - m.j);
  if (n > budget) throw budget_error("representative denotes too many elements to expand");
  std::vector<DensePoly> out;
  out.reserve(std::size_t(n));
  unsigned tail_coeffs = (R.prec() - m.j) * R.fq().ext;
  std::vector<u128> digits(tail_coeffs, 0);
  const DensePoly& phi_j = R.phi_pows[m.j];
  for (u128 cnt = 0; cnt < n; ++cnt) {
    DensePoly tail(R.fq().p);
    tail.coeffs = digits;
    tail.trim();
    out.push_back(R.reduce(add(m.v, mul(phi_j, tail))));
    for (unsigned i = 0; i < tail_coeffs; ++i) {
      if (++digits[i] < R.fq().p) break;
      digits[i] = 0;
    }
  }
  return out;
}

inline std::string format_rep(const RepRoot& m, const PhiAdicRing& R) {
  std::string s = "(" + format_poly(m.v) + ") + phi^" + std::to_string(m.j) + "*";
  (void)R;
  return s;
}

}  // namespace pkfactor

#endif  // PKFACTOR_REP_ROOTS_HPP
