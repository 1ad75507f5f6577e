#ifndef PKFACTOR_RING_HPP
#define PKFACTOR_RING_HPP

// Exact dense univariate arithmetic over Z/<p^k> and F_p, reduction modulo
// bi-generated ideals <p^l, phi^m>, exact divisions by p and by phi, and
// phi-adic valuations.  All values are immutable after construction and all
// operations are pure functions.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pkfactor {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// A stated precondition on exact division failed.
struct divisibility_error : error {
  using error::error;
};
// An enumeration exceeded its configured budget.
struct budget_error : error {
  using error::error;
};
// An internal invariant failed; indicates a bug, not bad input.
struct internal_error : error {
  using error::error;
};

#define PKF_CHECK(cond, msg)                                              \
  do {                                                                    \
    if (!(cond))                                                          \
      throw ::pkfactor::internal_error(std::string("check failed: ") +   \
                                       (msg));                            \
  } while (0)

// ----------------------------------------------------------------------
// scalar helpers
// ----------------------------------------------------------------------

inline std::string dec_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(char('0' + unsigned(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

// Moduli are bounded by 2^124 so that shifted double-and-add never
// overflows a 128-bit accumulator.
inline constexpr u128 kMaxModulus = u128(1) << 124;

// Exact counting helpers; counts grow like q^ell and must never wrap.
inline u128 checked_add_u128(u128 a, u128 b) {
  if (a > ~u128(0) - b) throw budget_error("count overflows 128 bits");
  return a + b;
}

inline u128 checked_mul_u128(u128 a, u128 b) {
  if (b != 0 && a > ~u128(0) / b) throw budget_error("count overflows 128 bits");
  return a * b;
}

inline u128 checked_pow_u128(u128 base, unsigned e) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul_u128(r, base);
  return r;
}

inline u128 addmod(u128 a, u128 b, u128 m) {
  a %= m;
  b %= m;
  u128 r = a + b;
  if (r >= m) r -= m;
  return r;
}

inline u128 submod(u128 a, u128 b, u128 m) {
  a %= m;
  b %= m;
  return a >= b ? a - b : a + (m - b);
}

inline u128 mulmod(u128 a, u128 b, u128 m) {
  a %= m;
  b %= m;
  if ((m >> 64) == 0) return (a * b) % m;  // operands fit in 64 bits
  u128 r = 0;
  while (b) {
    if (b & 1) {
      r += a;
      if (r >= m) r -= m;
    }
    a <<= 1;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return r;
}

inline u128 powmod(u128 a, u128 e, u128 m) {
  u128 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Inverse of a modulo m; throws if gcd(a, m) != 1.
inline u128 inv_mod(u128 a, u128 m) {
  a %= m;
  i128 r0 = i128(m), r1 = i128(a);
  i128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    i128 q = r0 / r1;
    i128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    i128 t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw error("inv_mod: value is not a unit");
  if (t0 < 0) t0 += i128(m);
  return u128(t0);
}

// Largest j with p^j | v; returns `cap` for v == 0.
inline unsigned val_p_scalar(u128 v, u64 p, unsigned cap) {
  if (v == 0) return cap;
  unsigned j = 0;
  while (j < cap && v % p == 0) {
    v /= p;
    ++j;
  }
  return j;
}

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {u64(2), u64(3), u64(5), u64(7)}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // bases {2,3,5,7} decide primality for all n < 3'215'031'751
  for (u64 a : {u64(2), u64(3), u64(5), u64(7)}) {
    u128 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// ----------------------------------------------------------------------
// PrimePower
// ----------------------------------------------------------------------

// p^k coefficient modulus.  p < 2^31 keeps every product reachable with
// 128-bit intermediates; the solver paths use k <= 4, plain arithmetic
// accepts any k with p^k below the word bound.
struct PrimePower {
  u64 p = 0;
  unsigned k = 0;
  u128 pk = 0;

  PrimePower() = default;
  PrimePower(u64 p_, unsigned k_) : p(p_), k(k_) {
    if (p < 2 || p >= (u64(1) << 31)) throw error("prime must lie in [2, 2^31)");
    if (!is_prime_u64(p)) throw error("not a prime: " + std::to_string(p));
    if (k < 1) throw error("exponent k must be >= 1");
    pk = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (pk > kMaxModulus / p) throw error("p^k exceeds the supported word size");
      pk *= p;
    }
  }

  PrimePower lowered(unsigned k2) const { return PrimePower(p, k2); }

  friend bool operator==(const PrimePower& a, const PrimePower& b) {
    return a.p == b.p && a.k == b.k;
  }
};

// ----------------------------------------------------------------------
// DensePoly
// ----------------------------------------------------------------------

// Coefficients ascending by degree, each reduced into [0, modulus), no
// trailing zero.  Equality is equality of canonical forms.
struct DensePoly {
  u128 modulus = 0;
  std::vector<u128> coeffs;

  DensePoly() = default;
  explicit DensePoly(u128 m) : modulus(m) { check_modulus(); }
  DensePoly(u128 m, std::vector<u128> c) : modulus(m), coeffs(std::move(c)) {
    check_modulus();
    canonicalize();
  }

  static DensePoly from_ints(u128 m, std::initializer_list<i64> cs) {
    DensePoly r(m);
    for (i64 v : cs) {
      i128 w = i128(v) % i128(m);
      if (w < 0) w += i128(m);
      r.coeffs.push_back(u128(w));
    }
    r.trim();
    return r;
  }

  static DensePoly constant(u128 m, u128 v) {
    DensePoly r(m);
    v %= m;
    if (v) r.coeffs.push_back(v);
    return r;
  }

  // scale * x^n
  static DensePoly x_power(u128 m, unsigned n, u128 scale = 1) {
    DensePoly r(m);
    scale %= m;
    if (scale) {
      r.coeffs.assign(n + 1, 0);
      r.coeffs[n] = scale;
    }
    return r;
  }

  int degree() const { return int(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  u128 coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : 0; }
  u128 lc() const { return coeffs.empty() ? 0 : coeffs.back(); }
  bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }

  void check_modulus() const {
    if (modulus < 2 || modulus > kMaxModulus) throw error("bad coefficient modulus");
  }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  void canonicalize() {
    for (auto& c : coeffs) c %= modulus;
    trim();
  }

  friend bool operator==(const DensePoly& a, const DensePoly& b) {
    return a.modulus == b.modulus && a.coeffs == b.coeffs;
  }
};

inline void require_same_modulus(const DensePoly& a, const DensePoly& b) {
  if (a.modulus != b.modulus) throw error("coefficient modulus mismatch");
}

// Lexicographic order on (degree, coefficient tuple ascending by index);
// the tie-break order used everywhere reproducible output is promised.
inline bool poly_less(const DensePoly& a, const DensePoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] != b.coeffs[i]) return a.coeffs[i] < b.coeffs[i];
  }
  return false;
}

inline DensePoly add(const DensePoly& a, const DensePoly& b) {
  require_same_modulus(a, b);
  DensePoly r(a.modulus);
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < r.coeffs.size(); ++i)
    r.coeffs[i] = addmod(a.coeff(i), b.coeff(i), a.modulus);
  r.trim();
  return r;
}

inline DensePoly sub(const DensePoly& a, const DensePoly& b) {
  require_same_modulus(a, b);
  DensePoly r(a.modulus);
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < r.coeffs.size(); ++i)
    r.coeffs[i] = submod(a.coeff(i), b.coeff(i), a.modulus);
  r.trim();
  return r;
}

inline DensePoly neg(const DensePoly& a) {
  DensePoly r(a.modulus);
  r.coeffs.resize(a.coeffs.size());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    r.coeffs[i] = submod(0, a.coeffs[i], a.modulus);
  r.trim();
  return r;
}

inline DensePoly mul_scalar(const DensePoly& a, u128 s) {
  DensePoly r(a.modulus);
  s %= a.modulus;
  r.coeffs.resize(a.coeffs.size());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    r.coeffs[i] = mulmod(a.coeffs[i], s, a.modulus);
  r.trim();
  return r;
}

// Schoolbook product modulo the shared coefficient modulus (no phi
// reduction here; see LocalRingCtx::mul for the quotient-ring product).
inline DensePoly mul(const DensePoly& a, const DensePoly& b) {
  require_same_modulus(a, b);
  DensePoly r(a.modulus);
  if (a.is_zero() || b.is_zero()) return r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      r.coeffs[i + j] = addmod(r.coeffs[i + j], mulmod(a.coeffs[i], b.coeffs[j], a.modulus), a.modulus);
  }
  r.trim();
  return r;
}

// a * x^n
inline DensePoly shift_up(const DensePoly& a, unsigned n) {
  if (a.is_zero() || n == 0) return a;
  DensePoly r(a.modulus);
  r.coeffs.assign(a.coeffs.size() + n, 0);
  std::copy(a.coeffs.begin(), a.coeffs.end(), r.coeffs.begin() + n);
  return r;
}

inline DensePoly pow_u(const DensePoly& a, unsigned e) {
  DensePoly r = DensePoly::constant(a.modulus, 1);
  DensePoly base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

// Quotient and remainder; the divisor's leading coefficient must be a unit
// (always true for monic divisors, the only case the pipeline needs).
inline std::pair<DensePoly, DensePoly> divrem(const DensePoly& a, const DensePoly& b) {
  require_same_modulus(a, b);
  if (b.is_zero()) throw error("division by zero polynomial");
  u128 m = a.modulus;
  u128 inv_lead = b.is_monic() ? 1 : inv_mod(b.lc(), m);
  DensePoly q(m), r = a;
  if (a.degree() < b.degree()) return {q, r};
  q.coeffs.assign(std::size_t(a.degree() - b.degree()) + 1, 0);
  for (int i = a.degree(); i >= b.degree(); --i) {
    u128 top = r.coeff(std::size_t(i));
    if (top == 0) continue;
    u128 t = inv_lead == 1 ? top : mulmod(top, inv_lead, m);
    std::size_t off = std::size_t(i - b.degree());
    q.coeffs[off] = t;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      std::size_t idx = off + j;
      if (idx >= r.coeffs.size()) r.coeffs.resize(idx + 1, 0);
      r.coeffs[idx] = submod(r.coeffs[idx], mulmod(t, b.coeffs[j], m), m);
    }
  }
  q.trim();
  r.trim();
  return {q, r};
}

inline DensePoly rem(const DensePoly& a, const DensePoly& b) { return divrem(a, b).second; }

// Reinterpret canonical representatives in a larger modulus (e.g. the
// monic lift of a mod-p polynomial into Z/<p^k>).
inline DensePoly lift_to_modulus(const DensePoly& a, u128 new_modulus) {
  if (new_modulus < a.modulus) throw error("lift_to_modulus: target modulus too small");
  DensePoly r(new_modulus);
  r.coeffs = a.coeffs;
  return r;
}

// Reduce canonical representatives into a smaller modulus that divides the
// current one (e.g. mod p^k -> mod p^j).
inline DensePoly reduce_to_modulus(const DensePoly& a, u128 new_modulus) {
  DensePoly r(new_modulus);
  r.coeffs = a.coeffs;
  r.canonicalize();
  return r;
}

inline DensePoly derivative(const DensePoly& a) {
  DensePoly r(a.modulus);
  if (a.degree() < 1) return r;
  r.coeffs.resize(a.coeffs.size() - 1);
  for (std::size_t i = 1; i < a.coeffs.size(); ++i)
    r.coeffs[i - 1] = mulmod(a.coeffs[i], u128(i) % a.modulus, a.modulus);
  r.trim();
  return r;
}

inline u128 eval_scalar(const DensePoly& a, u128 x) {
  u128 r = 0;
  for (std::size_t i = a.coeffs.size(); i-- > 0;)
    r = addmod(mulmod(r, x, a.modulus), a.coeffs[i], a.modulus);
  return r;
}

// Extended gcd over a prime coefficient modulus: returns monic g with
// g = u*a + v*b.
inline void poly_ext_gcd(const DensePoly& a, const DensePoly& b, DensePoly& g, DensePoly& u, DensePoly& v) {
  require_same_modulus(a, b);
  u128 m = a.modulus;
  DensePoly r0 = a, r1 = b;
  DensePoly s0 = DensePoly::constant(m, 1), s1(m);
  DensePoly t0(m), t1 = DensePoly::constant(m, 1);
  while (!r1.is_zero()) {
    auto [q, r2] = divrem(r0, r1);
    DensePoly s2 = sub(s0, mul(q, s1));
    DensePoly t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!r0.is_zero() && r0.lc() != 1) {
    u128 inv = inv_mod(r0.lc(), m);
    r0 = mul_scalar(r0, inv);
    s0 = mul_scalar(s0, inv);
    t0 = mul_scalar(t0, inv);
  }
  g = std::move(r0);
  u = std::move(s0);
  v = std::move(t0);
}

inline DensePoly poly_gcd(const DensePoly& a, const DensePoly& b) {
  DensePoly g(a.modulus), u(a.modulus), v(a.modulus);
  poly_ext_gcd(a, b, g, u, v);
  return g;
}

inline std::string format_poly(const DensePoly& a, const std::string& var = "x") {
  if (a.is_zero()) return "0";
  std::string s;
  for (int i = a.degree(); i >= 0; --i) {
    u128 c = a.coeff(std::size_t(i));
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += dec_string(c);
    } else {
      if (c != 1) s += dec_string(c) + "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

// ----------------------------------------------------------------------
// LocalRingCtx
// ----------------------------------------------------------------------

// The quotient Z[x]/<p^k, phi^ell>.  phi is stored mod p; the ideal is
// generated by the integral monic lift of phi (coefficients in [0, p))
// raised to ell.  Irreducibility of phi mod p is required but not checked
// here (pipeline contexts come from mod-p factorization; user-facing
// entry points validate with the residue-field machinery).
struct LocalRingCtx {
  PrimePower pp;
  DensePoly phi;  // modulus p, monic, deg >= 1
  unsigned ell = 0;
  std::vector<DensePoly> phi_lift_pows;  // phi^0 .. phi^ell over Z/<p^k>

  LocalRingCtx(PrimePower pp_, DensePoly phi_, unsigned ell_)
      : pp(pp_), phi(std::move(phi_)), ell(ell_) {
    if (phi.modulus != pp.p) throw error("phi must be given modulo p");
    if (!phi.is_monic() || phi.degree() < 1) throw error("phi must be monic of degree >= 1");
    if (ell < 1) throw error("precision ell must be >= 1");
    DensePoly lifted = lift_to_modulus(phi, pp.pk);
    phi_lift_pows.reserve(ell + 1);
    phi_lift_pows.push_back(DensePoly::constant(pp.pk, 1));
    for (unsigned j = 1; j <= ell; ++j)
      phi_lift_pows.push_back(pkfactor::mul(phi_lift_pows.back(), lifted));
  }

  unsigned phi_deg() const { return unsigned(phi.degree()); }
  unsigned elem_degree_bound() const { return ell * phi_deg(); }

  const DensePoly& phi_lift_pow(unsigned j) const {
    PKF_CHECK(j <= ell, "phi power out of range");
    return phi_lift_pows[j];
  }
  const DensePoly& phi_lift() const { return phi_lift_pows[1]; }

  DensePoly zero() const { return DensePoly(pp.pk); }
  DensePoly one() const { return DensePoly::constant(pp.pk, 1); }

  // Canonical form: coefficients mod p^k, then euclidean remainder by the
  // monic lift of phi^ell (in that order; the remainder is exact because
  // the divisor is monic).
  DensePoly reduce(const DensePoly& a) const {
    if (a.modulus != pp.pk) throw error("coefficient modulus mismatch with ring");
    if (a.degree() < int(elem_degree_bound())) return a;
    return rem(a, phi_lift_pows[ell]);
  }

  DensePoly add(const DensePoly& a, const DensePoly& b) const { return pkfactor::add(a, b); }
  DensePoly sub(const DensePoly& a, const DensePoly& b) const { return pkfactor::sub(a, b); }
  DensePoly mul(const DensePoly& a, const DensePoly& b) const {
    return reduce(pkfactor::mul(a, b));
  }

  // Same (p, phi) with different exponents.
  LocalRingCtx with(unsigned k2, unsigned ell2) const {
    return LocalRingCtx(pp.lowered(k2), phi, ell2);
  }
};

// True iff f is a zero divisor of (Z/<p^k>)[x]: every coefficient
// divisible by p.
inline bool is_zero_divisor(const DensePoly& f, const PrimePower& pp) {
  if (f.modulus != pp.pk) throw error("coefficient modulus mismatch");
  for (u128 c : f.coeffs)
    if (c % pp.p != 0) return false;
  return true;
}

// g must vanish modulo <p, phi^ell>; returns g/p with coefficient modulus
// p^(l-1), representing the quotient ideal <p^(l-1), phi^ell>.
inline DensePoly exact_div_p(const DensePoly& g, const LocalRingCtx& I) {
  if (I.pp.k < 2) throw error("exact_div_p: need l >= 2 in <p^l, phi^m>");
  DensePoly r = I.reduce(g);
  u128 lower = I.pp.pk / I.pp.p;
  DensePoly out(lower);
  out.coeffs.resize(r.coeffs.size());
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    if (r.coeffs[i] % I.pp.p != 0)
      throw divisibility_error("exact_div_p: coefficient of x^" + std::to_string(i) +
                               " (= " + dec_string(r.coeffs[i]) + ") not divisible by " +
                               std::to_string(I.pp.p));
    out.coeffs[i] = r.coeffs[i] / I.pp.p;
  }
  out.trim();
  return out;
}

// g must be divisible by phi^r inside the quotient; returns g/phi^r, an
// element of <p^l, phi^(m-r)>.  r == m yields the zero polynomial (the
// zero-precision convention for full valuation).
inline DensePoly exact_div_phi(const DensePoly& g, unsigned r, const LocalRingCtx& I) {
  if (r > I.ell) throw error("exact_div_phi: r exceeds precision");
  DensePoly red = I.reduce(g);
  if (r == 0) return red;
  auto [q, rest] = divrem(red, I.phi_lift_pow(r));
  if (!rest.is_zero())
    throw divisibility_error("exact_div_phi: not divisible by phi^" + std::to_string(r));
  return q;
}

// Largest r <= ell with phi^r | u; the sentinel value ell stands for the
// zero element (valuation "TOP").
inline unsigned val_phi(const DensePoly& u, const LocalRingCtx& ctx) {
  DensePoly r = ctx.reduce(u);
  if (r.is_zero()) return ctx.ell;
  unsigned v = 0;
  while (v < ctx.ell) {
    auto [q, rest] = divrem(r, ctx.phi_lift());
    if (!rest.is_zero()) break;
    r = std::move(q);
    ++v;
    if (r.is_zero()) return ctx.ell;
  }
  return v;
}

// ----------------------------------------------------------------------
// BivarPoly
// ----------------------------------------------------------------------

// Polynomials in two auxiliary variables with ring-element coefficients;
// c[i][j] multiplies t0^i * t1^j.  Degrees stay tiny (<= 4 and <= 1 in
// every solver use), so dense storage is fine.
struct BivarPoly {
  u128 modulus = 0;
  std::vector<std::vector<DensePoly>> c;

  BivarPoly() = default;
  explicit BivarPoly(u128 m) : modulus(m) {}

  static BivarPoly constant_elem(const DensePoly& e) {
    BivarPoly r(e.modulus);
    r.c.assign(1, {e});
    return r;
  }

  int deg0() const { return int(c.size()) - 1; }
  int deg1() const {
    int d = -1;
    for (auto& row : c) d = std::max(d, int(row.size()) - 1);
    return d;
  }

  DensePoly get(unsigned i, unsigned j) const {
    if (i < c.size() && j < c[i].size()) return c[i][j];
    return DensePoly(modulus);
  }

  void set(unsigned i, unsigned j, DensePoly v) {
    if (c.size() <= i) c.resize(i + 1);
    if (c[i].size() <= j) c[i].resize(j + 1, DensePoly(modulus));
    c[i][j] = std::move(v);
  }

  void trim() {
    for (auto& row : c)
      while (!row.empty() && row.back().is_zero()) row.pop_back();
    while (!c.empty() && c.back().empty()) c.pop_back();
  }
};

inline BivarPoly bivar_add(const BivarPoly& a, const BivarPoly& b, const LocalRingCtx& ctx) {
  BivarPoly r(ctx.pp.pk);
  unsigned di = unsigned(std::max(a.deg0(), b.deg0()) + 1);
  unsigned dj = unsigned(std::max(a.deg1(), b.deg1()) + 1);
  for (unsigned i = 0; i < di; ++i)
    for (unsigned j = 0; j < dj; ++j) {
      DensePoly s = ctx.add(a.get(i, j), b.get(i, j));
      if (!s.is_zero()) r.set(i, j, std::move(s));
    }
  r.trim();
  return r;
}

inline BivarPoly bivar_mul(const BivarPoly& a, const BivarPoly& b, const LocalRingCtx& ctx) {
  BivarPoly r(ctx.pp.pk);
  for (unsigned i = 0; i < unsigned(a.deg0() + 1); ++i)
    for (unsigned j = 0; j < unsigned(a.c[i].size()); ++j) {
      if (a.c[i][j].is_zero()) continue;
      for (unsigned u = 0; u < unsigned(b.deg0() + 1); ++u)
        for (unsigned v = 0; v < unsigned(b.c[u].size()); ++v) {
          if (b.c[u][v].is_zero()) continue;
          DensePoly prod = ctx.mul(a.c[i][j], b.c[u][v]);
          if (prod.is_zero()) continue;
          r.set(i + u, j + v, ctx.add(r.get(i + u, j + v), prod));
        }
    }
  r.trim();
  return r;
}

inline BivarPoly bivar_reduce(const BivarPoly& a, const LocalRingCtx& ctx) {
  BivarPoly r(ctx.pp.pk);
  for (unsigned i = 0; i < unsigned(a.deg0() + 1); ++i)
    for (unsigned j = 0; j < unsigned(a.c[i].size()); ++j) {
      DensePoly red = ctx.reduce(a.c[i][j]);
      if (!red.is_zero()) r.set(i, j, std::move(red));
    }
  r.trim();
  return r;
}

// Coefficientwise exact_div_p; the result lives modulo <p^(l-1), phi^m>.
inline BivarPoly bivar_exact_div_p(const BivarPoly& a, const LocalRingCtx& I) {
  BivarPoly r(I.pp.pk / I.pp.p);
  for (unsigned i = 0; i < unsigned(a.deg0() + 1); ++i)
    for (unsigned j = 0; j < unsigned(a.c[i].size()); ++j) {
      if (a.c[i][j].is_zero()) continue;
      r.set(i, j, exact_div_p(a.c[i][j], I));
    }
  r.trim();
  return r;
}

}  // namespace pkfactor

#endif  // PKFACTOR_RING_HPP
