#ifndef PKFACTOR_REDUCTION_HPP
#define PKFACTOR_REDUCTION_HPP

// The factoring <-> root-finding equivalence.  For f = phi^e + p*h mod p^k
// and a candidate exponent a, the polynomial
//
//   E(y) = f * (phi^(a(k-1)) + phi^(a(k-2))(py) + ... + (py)^(k-1))
//
// vanishes mod <p^k, phi^(ak)> at y exactly when phi^a - p*y divides f
// mod p^k, and E(y)/phi^(ak) is then the cofactor.

#include <utility>
#include <vector>

#include "pkfactor/hensel.hpp"
#include "pkfactor/ring.hpp"

namespace pkfactor {

struct ReductionInstance {
  PrimePower pp;
  PowerForm form;
  unsigned a = 0;       // candidate factor exponent, 1 <= a <= e
  LocalRingCtx ring;    // <p^k, phi^(a*k)>
  DensePoly f_full;     // phi^e + p*h mod p^k, not phi-reduced
  std::vector<DensePoly> coeff;  // E(y) = sum coeff[i] y^i, reduced in `ring`

  unsigned ell() const { return a * pp.k; }
};

// Expanded representation of E: the y^i coefficient is
// f * phi^(a(k-1-i)) * p^i, reduced mod <p^k, phi^(ak)>.  Evaluation and
// the solver's digit shifts are then plain coefficient transforms.
inline ReductionInstance build_reduction(const PowerForm& form, unsigned a, const PrimePower& pp) {
  if (a < 1 || a > form.e) throw error("candidate exponent a out of range [1, e]");
  LocalRingCtx ring(pp, form.phi, a * pp.k);
  DensePoly f_full = power_form_poly(form, pp);
  std::vector<DensePoly> coeff;
  coeff.reserve(pp.k);
  u128 p_pow = 1;
  for (unsigned i = 0; i < pp.k; ++i) {
    DensePoly term = mul(f_full, ring.phi_lift_pow(a * (pp.k - 1 - i)));
    coeff.push_back(ring.reduce(mul_scalar(term, p_pow)));
    p_pow *= pp.p;
  }
  return {pp, form, a, std::move(ring), std::move(f_full), std::move(coeff)};
}

// E at a concrete ring element.
inline DensePoly eval_E(const ReductionInstance& inst, const DensePoly& y) {
  DensePoly yr = inst.ring.reduce(y);
  DensePoly acc = inst.ring.zero();
  for (std::size_t i = inst.coeff.size(); i-- > 0;)
    acc = inst.ring.add(inst.ring.mul(acc, yr), inst.coeff[i]);
  return acc;
}

// phi^a - p*y divides f mod p^k  iff  E(y) = 0 mod <p^k, phi^(ak)>.
inline bool divides_iff_root(const ReductionInstance& inst, const DensePoly& y) {
  return eval_E(inst, y).is_zero();
}

// The candidate factor phi^a - p*y as a polynomial mod p^k.
inline DensePoly factor_from_root(const ReductionInstance& inst, const DensePoly& y) {
  DensePoly py = mul_scalar(inst.ring.reduce(y), inst.pp.p);
  return sub(inst.ring.phi_lift_pow(inst.a), py);
}

// g = E(y)/phi^(ak) over (Z/<p^k>)[x]; (phi^a - p*y) * g = f mod p^k.
// E is re-expanded without phi reduction so the division is an exact
// euclidean quotient by the monic phi^(ak).
inline DensePoly cofactor_from_root(const ReductionInstance& inst, const DensePoly& y) {
  const unsigned k = inst.pp.k;
  DensePoly yr = inst.ring.reduce(y);
  DensePoly py = mul_scalar(yr, inst.pp.p);
  DensePoly e_full(inst.pp.pk);
  DensePoly py_pow = DensePoly::constant(inst.pp.pk, 1);
  for (unsigned i = 0; i < k; ++i) {
    DensePoly term = mul(inst.ring.phi_lift_pow(inst.a * (k - 1 - i)), py_pow);
    e_full = add(e_full, term);
    if (i + 1 < k) py_pow = mul(py_pow, py);
  }
  e_full = mul(inst.f_full, e_full);
  auto [quot, rest] = divrem(e_full, inst.ring.phi_lift_pow(inst.ell()));
  if (!rest.is_zero()) throw error("cofactor_from_root: y is not a root");
  PKF_CHECK(mul(factor_from_root(inst, yr), quot) == inst.f_full,
            "cofactor does not multiply back to f");
  return quot;
}

// Digits of a root y = y0 + p y1 + ... + p^(k-1) y_(k-1) from index
// first_free on are unconstrained: if y is a root, so is every element of
// y0 + ... + p^(first_free - 1) y_(first_free-1) + p^first_free * (...).
// Requires a <= e/2.
struct PrecisionClasses {
  unsigned k = 0;
  unsigned first_free = 0;  // k-2: only y0..y_(k-3) can be constrained
};

inline PrecisionClasses precision_classes(unsigned k) {
  if (k < 2 || k > 4) throw error("precision_classes: k must be in {2,3,4}");
  return {k, k - 2};
}

}  // namespace pkfactor

#endif  // PKFACTOR_REDUCTION_HPP
