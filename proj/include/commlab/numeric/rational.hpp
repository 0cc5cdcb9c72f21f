#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace commlab::numeric {

/// Exact arithmetic for the oracle layer. All acceptance-grade identities are
/// checked in Rat; doubles are a reporting convenience.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline double to_double(const Rat& x) { return x.get_d(); }

inline Int binomial(unsigned long n, unsigned long k) {
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

inline Int pow2(unsigned long e) {
  Int b;
  mpz_ui_pow_ui(b.get_mpz_t(), 2, e);
  return b;
}

inline std::string rat_str(const Rat& x) { return x.get_str(); }

}  // namespace commlab::numeric
