#pragma once

#include <cstdint>
#include <vector>

#include "commlab/common/bits.hpp"
#include "commlab/common/rng.hpp"

namespace commlab::numeric {

/// h(x) = x mod q for a prime q drawn uniformly from the primes in [lo, hi].
/// For x != y, Pr[h(x) = h(y)] = (#primes in range dividing |x-y|) / #primes.
class ModPrimeHash {
 public:
  /// Builds the prime list once; throws Refusal("empty-prime-range") when the
  /// interval holds no prime.
  ModPrimeHash(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t draw(SeedStream& s) const;
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }

  static std::int64_t digest(std::int64_t x, std::uint64_t q) {
    std::int64_t m = static_cast<std::int64_t>(q);
    return (x % m + m) % m;
  }

 private:
  std::uint64_t lo_, hi_;
  std::vector<std::uint64_t> primes_;
};

/// Universal hash Z -> {0,1} on a declared window [lo, hi]: the inner product
/// over GF(2) of the seed bits with the binary encoding of x - lo + 1. The
/// +1 keeps every encoding nonzero, so for x != y in the window the pair
/// (h(x), h(y)) is exactly uniform over {0,1}^2 and Pr[h(x)=h(y)] = 1/2.
class InnerProductHash {
 public:
  InnerProductHash(std::uint64_t seed_bits, std::int64_t lo, std::int64_t hi)
      : seed_bits_(seed_bits), lo_(lo), hi_(hi) {}

  static InnerProductHash draw(SeedStream& s, std::int64_t lo,
                               std::int64_t hi) {
    return InnerProductHash(s.next_u64(), lo, hi);
  }

  int operator()(std::int64_t x) const {
    const std::uint64_t enc =
        static_cast<std::uint64_t>(x - lo_) + 1;  // nonzero by construction
    return static_cast<int>(__builtin_parityll(enc & seed_bits_));
  }

  int width() const { return bits_for_count(static_cast<std::uint64_t>(hi_ - lo_) + 2); }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }

 private:
  std::uint64_t seed_bits_;
  std::int64_t lo_, hi_;
};

}  // namespace commlab::numeric
