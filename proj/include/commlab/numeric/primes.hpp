#pragma once

#include <cstdint>
#include <vector>

#include "commlab/numeric/rational.hpp"

namespace commlab::numeric {

/// Deterministic Miller-Rabin with a witness set valid for every 64-bit
/// integer. No probabilistic primality anywhere in the oracles.
bool is_prime_u64(std::uint64_t n);

/// All primes in [lo, hi], ascending. Segmented sieve for moderate bounds,
/// Miller-Rabin scan otherwise. Requires hi >= lo >= 2.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// lcm(1..a) as a big integer; a >= 1.
Int lcm_upto(long a);

/// lcm(1..a) as u64; throws Refusal("lcm-overflow") when it does not fit.
std::uint64_t lcm_upto_u64(long a);

}  // namespace commlab::numeric
