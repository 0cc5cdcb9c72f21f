#include "commlab/numeric/hashing.hpp"

#include <string>

#include "commlab/common/errors.hpp"
#include "commlab/numeric/primes.hpp"

namespace commlab::numeric {

ModPrimeHash::ModPrimeHash(std::uint64_t lo, std::uint64_t hi)
    : lo_(lo), hi_(hi), primes_(primes_in_range(lo, hi)) {
  if (primes_.empty())
    throw Refusal("empty-prime-range",
                  "no prime in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]; widen the range");
}

std::uint64_t ModPrimeHash::draw(SeedStream& s) const {
  return primes_[s.uniform_below(primes_.size())];
}

}  // namespace commlab::numeric
