#ifndef PKFACTOR_HENSEL_HPP
#define PKFACTOR_HENSEL_HPP

// Classical Hensel lifting of coprime mod-p factorizations to mod p^k,
// and the preprocessing decomposition f = prod(phi_i^e_i + p*h_i) mod p^k.

#include <utility>
#include <vector>

#include "pkfactor/residue_field.hpp"
#include "pkfactor/ring.hpp"
#include "pkfactor/rng.hpp"

namespace pkfactor {

// g*u + h*v = 1 at the stated ideal power.
struct BezoutPair {
  DensePoly u, v;
};

// For coprime monic g, h over F_p; throws if gcd(g, h) != 1.
inline BezoutPair bezout_mod_p(const DensePoly& g, const DensePoly& h) {
  DensePoly d(g.modulus), u(g.modulus), v(g.modulus);
  poly_ext_gcd(g, h, d, u, v);
  if (d.degree() != 0)
    throw error("factors are not coprime mod p (gcd has degree " +
                std::to_string(d.degree()) + ")");
  u128 inv = inv_mod(d.coeff(0), g.modulus);
  return {mul_scalar(u, inv), mul_scalar(v, inv)};
}

struct LiftedFactorization {
  DensePoly g, h;  // monic, f = g*h mod p^k
  BezoutPair bez;  // g*u + h*v = 1 mod p^k
};

// Quadratic lifting of f = g*h (mod p) with Bezout data to mod p^k.  The
// precision doubles each round; factors are kept monic throughout and the
// lifted pair is the unique monic one.
inline LiftedFactorization hensel_lift(const DensePoly& f, const DensePoly& g0,
                                       const DensePoly& h0, const BezoutPair& bez,
                                       const PrimePower& pp) {
  if (f.modulus != pp.pk) throw error("hensel_lift: f must be given mod p^k");
  if (g0.modulus != pp.p || h0.modulus != pp.p)
    throw error("hensel_lift: g, h must be given mod p");
  if (!f.is_monic()) throw error("hensel_lift: f must be monic");
  if (is_zero_divisor(f, pp)) throw error("hensel_lift: f vanishes mod p");

  // monic normalization of the mod-p pair: f monic forces lc(g)*lc(h) = 1
  DensePoly gp = g0, hp = h0;
  if (gp.is_zero() || hp.is_zero()) throw error("hensel_lift: zero factor");
  u128 lg = gp.lc();
  if (lg != 1) {
    gp = mul_scalar(gp, inv_mod(lg, pp.p));
    hp = mul_scalar(hp, lg);
  }
  if (!hp.is_monic()) throw error("hensel_lift: f = g*h mod p does not have unit leading product");
  {
    DensePoly check = sub(reduce_to_modulus(f, pp.p), mul(gp, hp));
    if (!check.is_zero()) throw error("hensel_lift: f != g*h mod p");
  }
  // verify the Bezout identity mod p before trusting it
  {
    DensePoly one = DensePoly::constant(pp.p, 1);
    DensePoly chk = sub(add(mul(reduce_to_modulus(g0, pp.p), bez.u), mul(reduce_to_modulus(h0, pp.p), bez.v)), one);
    if (!chk.is_zero()) throw error("hensel_lift: Bezout identity fails mod p");
  }

  u128 M = pp.pk;
  DensePoly G = lift_to_modulus(gp, M);
  DensePoly H = lift_to_modulus(hp, M);
  // the Bezout pair of the normalized factors: (u*lg, v*lg^{-1}) mod p
  DensePoly S = lift_to_modulus(mul_scalar(bez.u, lg % pp.p), M);
  DensePoly T = lift_to_modulus(mul_scalar(bez.v, inv_mod(lg % pp.p, pp.p)), M);

  unsigned reached = 1;
  while (reached < pp.k) {
    // factor step: valid mod p^(2*reached)
    DensePoly e = sub(f, mul(G, H));
    auto [q, r] = divrem(mul(S, e), H);
    G = add(G, add(mul(T, e), mul(q, G)));
    H = add(H, r);
    // Bezout step
    DensePoly b = sub(add(mul(S, G), mul(T, H)), DensePoly::constant(M, 1));
    auto [c, d] = divrem(mul(S, b), H);
    S = sub(S, d);
    T = sub(sub(T, mul(T, b)), mul(c, G));
    reached *= 2;
  }

  // H is monic by construction; the exact quotient recovers G monically
  // and doubles as a multiply-back check.
  auto [Gq, Gr] = divrem(f, H);
  PKF_CHECK(Gr.is_zero(), "lifted factorization does not multiply back");
  PKF_CHECK(Gq.is_monic(), "lifted cofactor is not monic");
  PKF_CHECK(Gq == G, "lift drifted away from the exact quotient");
  return {Gq, H, {S, T}};
}

// ----------------------------------------------------------------------
// power-form decomposition
// ----------------------------------------------------------------------

// One coprime part of f mod p^k: phi^e + p*h with phi monic irreducible
// mod p and deg h < e*deg(phi).  h is stored at its well-defined
// precision p^(k-1) (p*h is what enters f).
struct PowerForm {
  DensePoly phi;  // mod p
  unsigned e = 0;
  DensePoly h;    // mod p^(k-1); zero polynomial mod p when k == 1
};

// phi^e + p*h reduced mod p^k.
inline DensePoly power_form_poly(const PowerForm& form, const PrimePower& pp) {
  DensePoly phi_e = pow_u(lift_to_modulus(form.phi, pp.pk), form.e);
  if (pp.k == 1) return phi_e;
  DensePoly ph = lift_to_modulus(form.h, pp.pk);
  for (auto& c : ph.coeffs) c *= pp.p;  // canonical values stay below p^k
  return add(phi_e, ph);
}

namespace detail {

inline PowerForm power_form_from(const DensePoly& fpart, const DensePoly& phi, unsigned e,
                                 const PrimePower& pp) {
  DensePoly phi_e = pow_u(lift_to_modulus(phi, pp.pk), e);
  DensePoly diff = sub(fpart, phi_e);
  u128 lower = pp.k == 1 ? u128(pp.p) : pp.pk / pp.p;
  DensePoly h(lower);
  if (pp.k == 1) {
    PKF_CHECK(diff.is_zero(), "power form: part differs from phi^e mod p");
    return {phi, e, h};
  }
  h.coeffs.resize(diff.coeffs.size());
  for (std::size_t i = 0; i < diff.coeffs.size(); ++i) {
    PKF_CHECK(diff.coeffs[i] % pp.p == 0, "power form: part not congruent to phi^e mod p");
    h.coeffs[i] = diff.coeffs[i] / pp.p;
  }
  h.trim();
  PKF_CHECK(h.degree() < int(e * unsigned(phi.degree())), "power form: deg h out of range");
  return {phi, e, h};
}

}  // namespace detail

// Split monic f (not vanishing mod p) into pairwise coprime parts
// phi_i^e_i + p*h_i whose product is f mod p^k.  Parts follow the
// factor order of cz_factor, so output is deterministic under a fixed
// seed.
inline std::vector<PowerForm> decompose(const DensePoly& f, const PrimePower& pp, Rng& rng) {
  if (f.modulus != pp.pk) throw error("decompose: f must be given mod p^k");
  if (!f.is_monic()) throw error("decompose: f must be monic");
  if (is_zero_divisor(f, pp)) throw error("decompose: f vanishes mod p");

  DensePoly fbar = reduce_to_modulus(f, pp.p);
  auto parts = cz_factor(fbar, rng);
  std::vector<PowerForm> out;
  out.reserve(parts.size());

  DensePoly rest = f;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    DensePoly g0 = pow_u(parts[i].first, parts[i].second);
    DensePoly h0 = DensePoly::constant(pp.p, 1);
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      h0 = mul(h0, pow_u(parts[j].first, parts[j].second));
    auto lifted = hensel_lift(rest, g0, h0, bezout_mod_p(g0, h0), pp);
    out.push_back(detail::power_form_from(lifted.g, parts[i].first, parts[i].second, pp));
    rest = lifted.h;
  }
  out.push_back(detail::power_form_from(rest, parts.back().first, parts.back().second, pp));
  return out;
}

}  // namespace pkfactor

#endif  // PKFACTOR_HENSEL_HPP
