#ifndef PKFACTOR_ORACLE_HPP
#define PKFACTOR_ORACLE_HPP

// Independent exhaustive-search ground truth: divisor scans mod p^k, root
// scans in small local rings, and factor counting.  Deliberately naive;
// the only shared code is the ring-core arithmetic.  Every query is
// bounded by an explicit budget and fails loudly when it would exceed it.

#include <chrono>
#include <vector>

#include "pkfactor/ring.hpp"

namespace pkfactor {

struct OracleBudget {
  u64 max_candidates = 10'000'000;
  double timeout_sec = 300.0;
};

namespace detail {

class BudgetClock {
 public:
  explicit BudgetClock(const OracleBudget& b)
      : budget_(b), start_(std::chrono::steady_clock::now()) {}

  void tick() {
    if ((++ticks_ & 0xfff) == 0) {
      auto now = std::chrono::steady_clock::now();
      double sec = std::chrono::duration<double>(now - start_).count();
      if (sec > budget_.timeout_sec) throw budget_error("oracle query exceeded its time budget");
    }
  }

 private:
  const OracleBudget& budget_;
  std::chrono::steady_clock::time_point start_;
  u64 ticks_ = 0;
};

// Odometer over `slots` coefficients in [0, m); lexicographically
// ascending when read as (c0, c1, ..., c_{slots-1}).
struct CoeffOdometer {
  u128 m;
  std::vector<u128> digits;

  CoeffOdometer(u128 m_, unsigned slots) : m(m_), digits(slots, 0) {}

  DensePoly current() const {
    DensePoly r(m);
    r.coeffs = digits;
    r.trim();
    return r;
  }

  bool advance() {
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < m) return true;
      digits[i] = 0;
    }
    return false;
  }
};

}  // namespace detail

// Exactly the monic g mod p^k with deg_lo <= deg g <= deg_hi dividing f.
// Enumeration order is fixed (ascending degree, then lexicographic
// coefficient tuples), so outputs are golden-file stable.
inline std::vector<DensePoly> brute_divisors(const DensePoly& f, const PrimePower& pp,
                                             unsigned deg_lo, unsigned deg_hi,
                                             const OracleBudget& budget = {}) {
  if (f.modulus != pp.pk) throw error("modulus mismatch");
  if (f.is_zero()) throw error("brute_divisors: zero polynomial");
  u128 total = 0;
  for (unsigned d = deg_lo; d <= deg_hi; ++d)
    total = checked_add_u128(total, checked_pow_u128(pp.pk, d));
  if (total > budget.max_candidates)
    throw budget_error("brute_divisors: " + dec_string(total) + " candidates exceed the budget");

  detail::BudgetClock clock(budget);
  std::vector<DensePoly> out;
  for (unsigned d = deg_lo; d <= deg_hi; ++d) {
    detail::CoeffOdometer odo(pp.pk, d);
    while (true) {
      clock.tick();
      DensePoly g = odo.current();
      g.coeffs.resize(d + 1, 0);
      g.coeffs[d] = 1;  // monic candidate
      if (divrem(f, g).second.is_zero()) out.push_back(g);
      if (!odo.advance()) break;
    }
  }
  return out;
}

// True iff f has a monic divisor of degree in [1, deg f - 1].  Scanning
// degrees up to deg/2 suffices: the cofactor of a monic divisor is monic
// of the complementary degree.
inline bool brute_has_nontrivial_factor(const DensePoly& f, const PrimePower& pp,
                                        const OracleBudget& budget = {}) {
  if (f.degree() < 2) return false;
  unsigned half = unsigned(f.degree()) / 2;
  detail::BudgetClock clock(budget);
  u128 total = 0;
  for (unsigned d = 1; d <= half; ++d)
    total = checked_add_u128(total, checked_pow_u128(pp.pk, d));
  if (total > budget.max_candidates)
    throw budget_error("brute_has_nontrivial_factor: candidate count exceeds the budget");
  for (unsigned d = 1; d <= half; ++d) {
    detail::CoeffOdometer odo(pp.pk, d);
    while (true) {
      clock.tick();
      DensePoly g = odo.current();
      g.coeffs.resize(d + 1, 0);
      g.coeffs[d] = 1;
      if (divrem(f, g).second.is_zero()) return true;
      if (!odo.advance()) break;
    }
  }
  return false;
}

// Visit every element of Z[x]/<p^k, phi^ell> that is a root of
// g(y) = sum g[i] y^i; callback returns void.
template <class Fn>
void brute_for_each_root(const std::vector<DensePoly>& g, const LocalRingCtx& ring, Fn&& fn,
                         const OracleBudget& budget = {}) {
  unsigned slots = ring.elem_degree_bound();
  u128 total = checked_pow_u128(ring.pp.pk, slots);
  if (total > budget.max_candidates)
    throw budget_error("brute roots: ring of size " + dec_string(total) + " exceeds the budget");
  std::vector<DensePoly> coeffs;
  coeffs.reserve(g.size());
  for (const auto& c : g) coeffs.push_back(ring.reduce(c));
  detail::BudgetClock clock(budget);
  detail::CoeffOdometer odo(ring.pp.pk, slots);
  while (true) {
    clock.tick();
    DensePoly y = odo.current();
    DensePoly acc = ring.zero();
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = ring.add(ring.mul(acc, y), coeffs[i]);
    if (acc.is_zero()) fn(y);
    if (!odo.advance()) break;
  }
}

// Exact root set by full enumeration; an empty g means every element.
inline std::vector<DensePoly> brute_roots(const std::vector<DensePoly>& g, const LocalRingCtx& ring,
                                          const OracleBudget& budget = {}) {
  std::vector<DensePoly> out;
  brute_for_each_root(g, ring, [&](const DensePoly& y) { out.push_back(y); }, budget);
  return out;
}

inline u128 brute_count_roots(const std::vector<DensePoly>& g, const LocalRingCtx& ring,
                              const OracleBudget& budget = {}) {
  u128 n = 0;
  brute_for_each_root(g, ring, [&](const DensePoly&) { ++n; }, budget);
  return n;
}

// Number of distinct monic divisors of f mod p^k, including 1 and f
// itself.  Divisors pair with their (monic, unique) cofactors, so only
// degrees up to deg(f)/2 are scanned.
inline u128 brute_count_factors(const DensePoly& f, const PrimePower& pp,
                                const OracleBudget& budget = {}) {
  if (f.degree() < 1) throw error("brute_count_factors: need deg f >= 1");
  if (!f.is_monic()) throw error("brute_count_factors: f must be monic");
  unsigned D = unsigned(f.degree());
  u128 count = 0;
  for (unsigned d = 0; 2 * d <= D; ++d) {
    u128 nd = u128(brute_divisors(f, pp, d, d, budget).size());
    count = checked_add_u128(count, 2 * d == D ? nd : checked_mul_u128(nd, 2));
  }
  return count;
}

}  // namespace pkfactor

#endif  // PKFACTOR_ORACLE_HPP
