#ifndef PKFACTOR_RNG_HPP
#define PKFACTOR_RNG_HPP

#include <cstdint>
#include <random>

namespace pkfactor {

// Seeded generator passed explicitly to every randomized routine.
// Identical seeds reproduce identical outputs on every platform
// (mt19937_64 output is fixed by the standard).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, n); n >= 1.
  std::uint64_t below(std::uint64_t n) {
    // rejection sampling keeps the distribution exact
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace pkfactor

#endif  // PKFACTOR_RNG_HPP
