#ifndef PKFACTOR_RESIDUE_FIELD_HPP
#define PKFACTOR_RESIDUE_FIELD_HPP

// Arithmetic in F_q = F_p[x]/<phi> and randomized Cantor-Zassenhaus
// factoring / root finding.  Covers the prime field as the special case
// phi = x, so the same code factors f mod p and finds roots of residue
// polynomials over extensions.

#include <optional>
#include <utility>
#include <vector>

#include "pkfactor/ring.hpp"
#include "pkfactor/rng.hpp"

namespace pkfactor {

// Las Vegas retry cap per equal-degree split; the failure probability of a
// full budget is below 2^-64.
inline constexpr unsigned kSplitAttempts = 64;

// ----------------------------------------------------------------------
// field context and elements
// ----------------------------------------------------------------------

struct FqCtx {
  u64 p = 0;
  DensePoly phi;  // modulus p, monic, irreducible
  unsigned ext = 0;

  FqCtx() = default;
  FqCtx(u64 p_, DensePoly phi_) : p(p_), phi(std::move(phi_)) {
    if (phi.modulus != p) throw error("field modulus mismatch");
    if (!phi.is_monic() || phi.degree() < 1) throw error("phi must be monic of degree >= 1");
    ext = unsigned(phi.degree());
  }

  static FqCtx prime_field(u64 p) {
    return FqCtx(p, DensePoly::from_ints(p, {0, 1}));
  }

  bool q_fits_u128(u128& q_out) const {
    u128 q = 1;
    for (unsigned i = 0; i < ext; ++i) {
      if (q > kMaxModulus / p) return false;
      q *= p;
    }
    q_out = q;
    return true;
  }
};

struct FieldElem {
  DensePoly rep;  // modulus p, deg < ext

  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.rep == b.rep; }
};

inline FieldElem fq_zero(const FqCtx& F) { return {DensePoly(F.p)}; }
inline FieldElem fq_one(const FqCtx& F) { return {DensePoly::constant(F.p, 1)}; }
inline FieldElem fq_from_scalar(const FqCtx& F, u128 v) { return {DensePoly::constant(F.p, v % F.p)}; }

inline FieldElem fq_make(const FqCtx& F, const DensePoly& raw) {
  if (raw.modulus != F.p) throw error("field element modulus mismatch");
  if (raw.degree() < int(F.ext)) return {raw};
  return {rem(raw, F.phi)};
}

inline bool fq_is_zero(const FieldElem& a) { return a.rep.is_zero(); }
inline FieldElem fq_add(const FqCtx&, const FieldElem& a, const FieldElem& b) { return {add(a.rep, b.rep)}; }
inline FieldElem fq_sub(const FqCtx&, const FieldElem& a, const FieldElem& b) { return {sub(a.rep, b.rep)}; }
inline FieldElem fq_neg(const FqCtx&, const FieldElem& a) { return {neg(a.rep)}; }

inline FieldElem fq_mul(const FqCtx& F, const FieldElem& a, const FieldElem& b) {
  return fq_make(F, mul(a.rep, b.rep));
}

inline FieldElem fq_inv(const FqCtx& F, const FieldElem& a) {
  if (fq_is_zero(a)) throw error("fq_inv: zero element");
  DensePoly g(F.p), u(F.p), v(F.p);
  poly_ext_gcd(a.rep, F.phi, g, u, v);
  PKF_CHECK(g.degree() == 0, "phi not irreducible or element not a unit");
  return fq_make(F, mul_scalar(u, inv_mod(g.coeff(0), F.p)));
}

inline FieldElem fq_pow(const FqCtx& F, FieldElem a, u128 e) {
  FieldElem r = fq_one(F);
  while (e) {
    if (e & 1) r = fq_mul(F, r, a);
    a = fq_mul(F, a, a);
    e >>= 1;
  }
  return r;
}

inline FieldElem fq_random(const FqCtx& F, Rng& rng) {
  DensePoly r(F.p);
  r.coeffs.resize(F.ext);
  for (unsigned i = 0; i < F.ext; ++i) r.coeffs[i] = rng.below(F.p);
  r.trim();
  return {r};
}

inline bool fq_less(const FieldElem& a, const FieldElem& b) { return poly_less(a.rep, b.rep); }

// Enumerate all q field elements in lexicographic order (small q only).
inline std::vector<FieldElem> fq_enumerate(const FqCtx& F) {
  u128 q;
  if (!F.q_fits_u128(q) || q > (u128(1) << 40)) throw budget_error("field too large to enumerate");
  std::vector<FieldElem> out;
  out.reserve(std::size_t(q));
  std::vector<u128> digits(F.ext, 0);
  for (u128 n = 0; n < q; ++n) {
    DensePoly r(F.p);
    r.coeffs = digits;
    r.trim();
    out.push_back({r});
    for (unsigned i = F.ext; i-- > 0;) {
      // odometer with the most significant digit first keeps lex order
      if (++digits[i] < F.p) break;
      digits[i] = 0;
    }
  }
  std::sort(out.begin(), out.end(), fq_less);
  return out;
}

// ----------------------------------------------------------------------
// polynomials over F_q
// ----------------------------------------------------------------------

struct FqPoly {
  std::vector<FieldElem> c;  // ascending degree

  int degree() const { return int(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim() {
    while (!c.empty() && fq_is_zero(c.back())) c.pop_back();
  }
  FieldElem coeff(const FqCtx& F, std::size_t i) const {
    return i < c.size() ? c[i] : fq_zero(F);
  }
  FieldElem lc(const FqCtx& F) const { return c.empty() ? fq_zero(F) : c.back(); }
};

inline FqPoly fqp_zero() { return {}; }

inline FqPoly fqp_constant(const FieldElem& a) {
  FqPoly r;
  r.c = {a};
  r.trim();
  return r;
}

inline FqPoly fqp_monomial(const FqCtx& F, unsigned n, const FieldElem& scale) {
  FqPoly r;
  if (fq_is_zero(scale)) return r;
  r.c.assign(n + 1, fq_zero(F));
  r.c[n] = scale;
  return r;
}

inline FqPoly fqp_add(const FqCtx& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), fq_zero(F));
  for (std::size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = fq_add(F, a.coeff(F, i), b.coeff(F, i));
  r.trim();
  return r;
}

inline FqPoly fqp_sub(const FqCtx& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), fq_zero(F));
  for (std::size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = fq_sub(F, a.coeff(F, i), b.coeff(F, i));
  r.trim();
  return r;
}

inline FqPoly fqp_mul(const FqCtx& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, fq_zero(F));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (fq_is_zero(a.c[i])) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = fq_add(F, r.c[i + j], fq_mul(F, a.c[i], b.c[j]));
  }
  r.trim();
  return r;
}

inline FqPoly fqp_scale(const FqCtx& F, const FqPoly& a, const FieldElem& s) {
  FqPoly r;
  r.c.resize(a.c.size(), fq_zero(F));
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = fq_mul(F, a.c[i], s);
  r.trim();
  return r;
}

inline FqPoly fqp_make_monic(const FqCtx& F, const FqPoly& a) {
  if (a.is_zero() || a.c.back() == fq_one(F)) return a;
  return fqp_scale(F, a, fq_inv(F, a.c.back()));
}

inline std::pair<FqPoly, FqPoly> fqp_divrem(const FqCtx& F, const FqPoly& a, const FqPoly& b) {
  if (b.is_zero()) throw error("fqp_divrem: division by zero");
  FqPoly q, r = a;
  if (a.degree() < b.degree()) return {q, r};
  FieldElem inv_lead = fq_inv(F, b.c.back());
  q.c.assign(std::size_t(a.degree() - b.degree()) + 1, fq_zero(F));
  for (int i = a.degree(); i >= b.degree(); --i) {
    if (std::size_t(i) >= r.c.size() || fq_is_zero(r.c[std::size_t(i)])) continue;
    FieldElem t = fq_mul(F, r.c[std::size_t(i)], inv_lead);
    std::size_t off = std::size_t(i - b.degree());
    q.c[off] = t;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[off + j] = fq_sub(F, r.c[off + j], fq_mul(F, t, b.c[j]));
  }
  q.trim();
  r.trim();
  return {q, r};
}

inline FqPoly fqp_rem(const FqCtx& F, const FqPoly& a, const FqPoly& b) {
  return fqp_divrem(F, a, b).second;
}

inline FqPoly fqp_gcd(const FqCtx& F, FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    FqPoly r = fqp_rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return fqp_make_monic(F, a);
}

inline FieldElem fqp_eval(const FqCtx& F, const FqPoly& a, const FieldElem& x) {
  FieldElem r = fq_zero(F);
  for (std::size_t i = a.c.size(); i-- > 0;)
    r = fq_add(F, fq_mul(F, r, x), a.c[i]);
  return r;
}

inline FqPoly fqp_derivative(const FqCtx& F, const FqPoly& a) {
  FqPoly r;
  if (a.degree() < 1) return r;
  r.c.resize(a.c.size() - 1, fq_zero(F));
  for (std::size_t i = 1; i < a.c.size(); ++i)
    r.c[i - 1] = fq_mul(F, a.c[i], fq_from_scalar(F, u128(i)));
  r.trim();
  return r;
}

// a^p mod g by square-and-multiply; the exponent is a single machine word,
// so q = p^d powers are reached by iterating this map.
inline FqPoly fqp_pow_p_mod(const FqCtx& F, const FqPoly& a, const FqPoly& g) {
  FqPoly r = fqp_constant(fq_one(F));
  FqPoly base = fqp_rem(F, a, g);
  u64 e = F.p;
  while (e) {
    if (e & 1) r = fqp_rem(F, fqp_mul(F, r, base), g);
    base = fqp_rem(F, fqp_mul(F, base, base), g);
    e >>= 1;
  }
  return r;
}

inline FqPoly fqp_pow_u_mod(const FqCtx& F, const FqPoly& a, u64 e, const FqPoly& g) {
  FqPoly r = fqp_constant(fq_one(F));
  FqPoly base = fqp_rem(F, a, g);
  while (e) {
    if (e & 1) r = fqp_rem(F, fqp_mul(F, r, base), g);
    base = fqp_rem(F, fqp_mul(F, base, base), g);
    e >>= 1;
  }
  return r;
}

// y^(q^steps) mod g.
inline FqPoly fqp_frobenius_power(const FqCtx& F, const FqPoly& g, unsigned steps) {
  FqPoly t = fqp_monomial(F, 1, fq_one(F));
  t = fqp_rem(F, t, g);
  for (unsigned s = 0; s < steps; ++s)
    for (unsigned j = 0; j < F.ext; ++j) t = fqp_pow_p_mod(F, t, g);
  return t;
}

// ----------------------------------------------------------------------
// root finding over F_q
// ----------------------------------------------------------------------

namespace detail {

// Splits a monic product of distinct linear factors; appends the roots.
inline void split_linear(const FqCtx& F, const FqPoly& g, Rng& rng, std::vector<FieldElem>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(fq_neg(F, g.c[0]));  // monic: root is -constant
    return;
  }
  for (unsigned attempt = 0; attempt < kSplitAttempts; ++attempt) {
    FqPoly candidate;
    if (F.p == 2) {
      // characteristic 2: additive split with the trace of a random
      // multiple (the multiplicative power map needs odd q)
      FieldElem alpha = fq_random(F, rng);
      if (fq_is_zero(alpha)) continue;
      FqPoly t = fqp_monomial(F, 1, alpha);
      FqPoly acc = fqp_rem(F, t, g);
      FqPoly cur = acc;
      for (unsigned j = 1; j < F.ext; ++j) {
        cur = fqp_pow_p_mod(F, cur, g);
        acc = fqp_add(F, acc, cur);
      }
      candidate = acc;
    } else {
      // odd q: N(y+alpha)^((p-1)/2) - 1 where N is the norm to F_p,
      // assembled from p-power maps so no exponent ever exceeds a word
      FieldElem alpha = fq_random(F, rng);
      FqPoly base = fqp_add(F, fqp_monomial(F, 1, fq_one(F)), fqp_constant(alpha));
      base = fqp_rem(F, base, g);
      if (base.is_zero()) continue;
      FqPoly norm = base;
      FqPoly cur = base;
      for (unsigned j = 1; j < F.ext; ++j) {
        cur = fqp_pow_p_mod(F, cur, g);
        norm = fqp_rem(F, fqp_mul(F, norm, cur), g);
      }
      FqPoly s = fqp_pow_u_mod(F, norm, (F.p - 1) / 2, g);
      candidate = fqp_sub(F, s, fqp_constant(fq_one(F)));
    }
    FqPoly d = fqp_gcd(F, candidate, g);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_linear(F, d, rng, out);
      split_linear(F, fqp_divrem(F, g, d).first, rng, out);
      return;
    }
  }
  throw internal_error("equal-degree split exhausted its retry budget");
}

}  // namespace detail

// All theta in F_q with g(theta) = 0; sorted, no multiplicities.
inline std::vector<FieldElem> fq_poly_roots(const FqCtx& F, const FqPoly& g_in, Rng& rng) {
  if (g_in.is_zero()) throw error("fq_poly_roots: zero polynomial");
  FqPoly g = fqp_make_monic(F, g_in);
  std::vector<FieldElem> out;
  if (g.degree() == 0) return out;
  // product of the distinct linear factors: gcd(g, y^q - y)
  FqPoly yq = fqp_frobenius_power(F, g, 1);
  FqPoly lin = fqp_gcd(F, fqp_sub(F, yq, fqp_rem(F, fqp_monomial(F, 1, fq_one(F)), g)), g);
  detail::split_linear(F, lin, rng, out);
  std::sort(out.begin(), out.end(), fq_less);
  return out;
}

// ----------------------------------------------------------------------
// full factorization over F_q (used with q = p for the mod-p step)
// ----------------------------------------------------------------------

namespace detail {

// g = h(y^p) -> h, taking p-th roots of coefficients (c^(p^(ext-1))).
inline FqPoly fqp_pth_root(const FqCtx& F, const FqPoly& g) {
  FqPoly r;
  for (std::size_t i = 0; i < g.c.size(); i += F.p) {
    FieldElem c = g.c[i];
    for (unsigned j = 0; j + 1 < F.ext; ++j) c = fq_pow(F, c, F.p);
    r.c.push_back(c);
  }
  r.trim();
  return r;
}

inline void squarefree_parts(const FqCtx& F, const FqPoly& f, unsigned mult,
                             std::vector<std::pair<FqPoly, unsigned>>& out) {
  if (f.degree() == 0) return;
  FqPoly df = fqp_derivative(F, f);
  if (df.is_zero()) {
    squarefree_parts(F, fqp_pth_root(F, f), mult * unsigned(F.p), out);
    return;
  }
  FqPoly c = fqp_gcd(F, f, df);
  FqPoly w = fqp_divrem(F, f, c).first;
  unsigned i = 1;
  while (w.degree() > 0) {
    FqPoly y = fqp_gcd(F, w, c);
    FqPoly z = fqp_divrem(F, w, y).first;
    if (z.degree() > 0) out.emplace_back(fqp_make_monic(F, z), mult * i);
    w = std::move(y);
    c = fqp_divrem(F, c, w).first;
    ++i;
  }
  if (c.degree() > 0) squarefree_parts(F, fqp_pth_root(F, c), mult * unsigned(F.p), out);
}

// Equal-degree splitting of a monic squarefree product of degree-d
// irreducibles.
inline void split_equal_degree(const FqCtx& F, const FqPoly& g, unsigned d, Rng& rng,
                               std::vector<FqPoly>& out) {
  if (g.degree() == 0) return;
  if (unsigned(g.degree()) == d) {
    out.push_back(g);
    return;
  }
  for (unsigned attempt = 0; attempt < kSplitAttempts; ++attempt) {
    FqPoly t;
    t.c.resize(std::size_t(g.degree()), fq_zero(F));
    for (auto& coef : t.c) coef = fq_random(F, rng);
    t.trim();
    if (t.degree() < 1) continue;
    FqPoly candidate;
    if (F.p == 2) {
      FqPoly acc = fqp_rem(F, t, g);
      FqPoly cur = acc;
      unsigned bits = F.ext * d;  // trace from F_(2^(ext*d)) down to F_2
      for (unsigned j = 1; j < bits; ++j) {
        cur = fqp_rem(F, fqp_mul(F, cur, cur), g);
        acc = fqp_add(F, acc, cur);
      }
      candidate = acc;
    } else {
      // norm from F_(q^d) to F_p, then the (p-1)/2 power map
      FqPoly norm = fqp_rem(F, t, g);
      FqPoly cur = norm;
      for (unsigned j = 1; j < F.ext * d; ++j) {
        cur = fqp_pow_p_mod(F, cur, g);
        norm = fqp_rem(F, fqp_mul(F, norm, cur), g);
      }
      FqPoly s = fqp_pow_u_mod(F, norm, (F.p - 1) / 2, g);
      candidate = fqp_sub(F, s, fqp_constant(fq_one(F)));
    }
    FqPoly dd = fqp_gcd(F, candidate, g);
    if (dd.degree() > 0 && dd.degree() < g.degree()) {
      split_equal_degree(F, dd, d, rng, out);
      split_equal_degree(F, fqp_divrem(F, g, dd).first, d, rng, out);
      return;
    }
  }
  throw internal_error("equal-degree split exhausted its retry budget");
}

}  // namespace detail

// Irreducible factors with multiplicities of a nonzero f over F_q, sorted
// by (degree, coefficient order).  The leading unit is dropped; the
// product of the monic powers equals f up to that unit.
inline std::vector<std::pair<FqPoly, unsigned>> fqp_factor(const FqCtx& F, const FqPoly& f_in,
                                                           Rng& rng) {
  if (f_in.is_zero()) throw error("fqp_factor: zero polynomial");
  std::vector<std::pair<FqPoly, unsigned>> result;
  FqPoly f = fqp_make_monic(F, f_in);
  if (f.degree() == 0) return result;
  std::vector<std::pair<FqPoly, unsigned>> sf;
  detail::squarefree_parts(F, f, 1, sf);
  for (auto& [part, mult] : sf) {
    // distinct-degree stage on the squarefree part
    FqPoly g = part;
    FqPoly h = fqp_rem(F, fqp_monomial(F, 1, fq_one(F)), g);
    unsigned d = 0;
    while (g.degree() > 0) {
      ++d;
      if (2 * d > unsigned(g.degree())) {
        result.emplace_back(g, mult);  // remainder is irreducible
        break;
      }
      for (unsigned j = 0; j < F.ext; ++j) h = fqp_pow_p_mod(F, h, g);
      FqPoly gd = fqp_gcd(F, fqp_sub(F, h, fqp_monomial(F, 1, fq_one(F))), g);
      if (gd.degree() > 0) {
        std::vector<FqPoly> pieces;
        detail::split_equal_degree(F, gd, d, rng, pieces);
        for (auto& piece : pieces) result.emplace_back(piece, mult);
        g = fqp_divrem(F, g, gd).first;
        h = fqp_rem(F, h, g);
      }
    }
  }
  std::sort(result.begin(), result.end(), [&](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    for (std::size_t i = 0; i < a.first.c.size(); ++i) {
      if (!(a.first.c[i] == b.first.c[i])) return fq_less(a.first.c[i], b.first.c[i]);
    }
    return a.second < b.second;
  });
  return result;
}

// ----------------------------------------------------------------------
// prime-field wrappers
// ----------------------------------------------------------------------

inline FqPoly fqp_from_prime_poly(const FqCtx& F, const DensePoly& f) {
  PKF_CHECK(F.ext == 1 || f.modulus == F.p, "prime-field conversion");
  FqPoly r;
  r.c.reserve(f.coeffs.size());
  for (u128 c : f.coeffs) r.c.push_back(fq_from_scalar(F, c));
  r.trim();
  return r;
}

inline DensePoly fqp_to_prime_poly(const FqCtx& F, const FqPoly& f) {
  DensePoly r(F.p);
  r.coeffs.resize(f.c.size());
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    PKF_CHECK(f.c[i].rep.degree() <= 0, "coefficient not in the prime field");
    r.coeffs[i] = f.c[i].rep.coeff(0);
  }
  r.trim();
  return r;
}

// Irreducible factorization of f over the prime field F_p, the mod-p
// preprocessing step of the whole pipeline.
inline std::vector<std::pair<DensePoly, unsigned>> cz_factor(const DensePoly& f, Rng& rng) {
  u64 p = u64(f.modulus);
  if (u128(p) != f.modulus || !is_prime_u64(p)) throw error("cz_factor: modulus must be prime");
  FqCtx F = FqCtx::prime_field(p);
  auto fac = fqp_factor(F, fqp_from_prime_poly(F, f), rng);
  std::vector<std::pair<DensePoly, unsigned>> out;
  out.reserve(fac.size());
  for (auto& [g, m] : fac) out.emplace_back(fqp_to_prime_poly(F, g), m);
  return out;
}

// Roots in F_q of a univariate with F_q coefficients.
inline std::vector<FieldElem> cz_roots(const FqCtx& F, const FqPoly& g, Rng& rng) {
  return fq_poly_roots(F, g, rng);
}

inline bool is_irreducible_mod_p(const DensePoly& phi, Rng& rng) {
  if (phi.degree() < 1) return false;
  auto fac = cz_factor(phi, rng);
  return fac.size() == 1 && fac[0].second == 1;
}

}  // namespace pkfactor

#endif  // PKFACTOR_RESIDUE_FIELD_HPP
