#include "commlab/numeric/primes.hpp"

#include <cmath>

#include "commlab/common/errors.hpp"

namespace commlab::numeric {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// This witness set is deterministic for all n < 2^64.
constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

std::vector<u64> small_primes_upto(u64 n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<u64> out;
  for (u64 i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {u64{2}, u64{3}, u64{5}, u64{7}}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kWitnesses) {
    if (a % n == 0) continue;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  if (lo < 2) lo = 2;
  if (hi < lo) return {};
  std::vector<u64> out;
  if (hi <= (u64{1} << 46)) {
    // Segmented sieve over [lo, hi].
    const u64 span = hi - lo;
    const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 2;
    const auto base = small_primes_upto(root);
    std::vector<bool> comp(span + 1, false);
    for (u64 p : base) {
      if (p * p > hi) break;
      u64 start = p * p > lo ? p * p : ((lo + p - 1) / p) * p;
      for (u64 j = start; j <= hi; j += p) comp[j - lo] = true;
    }
    for (u64 v = lo; v <= hi; ++v) {
      if (!comp[v - lo]) out.push_back(v);
    }
  } else {
    for (u64 v = lo; v <= hi; ++v) {
      if (is_prime_u64(v)) out.push_back(v);
    }
  }
  return out;
}

Int lcm_upto(long a) {
  if (a < 1) throw ConfigError("lcm_upto requires a >= 1");
  Int m = 1;
  for (long v = 2; v <= a; ++v) {
    Int g, vv(v);
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), vv.get_mpz_t());
    m = m / g * vv;
  }
  return m;
}

std::uint64_t lcm_upto_u64(long a) {
  Int m = lcm_upto(a);
  if (mpz_sizeinbase(m.get_mpz_t(), 2) > 64)
    throw Refusal("lcm-overflow", "lcm(1.." + std::to_string(a) +
                                      ") exceeds 64 bits; use lcm_upto");
  return mpz_get_ui(m.get_mpz_t());
}

}  // namespace commlab::numeric
