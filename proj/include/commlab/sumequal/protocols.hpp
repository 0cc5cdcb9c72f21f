#pragma once

#include <memory>

#include "commlab/core/protocol.hpp"
#include "commlab/numeric/hashing.hpp"
#include "commlab/numeric/rational.hpp"
#include "commlab/sumequal/instance.hpp"

namespace commlab::sumequal {

/// 2-player Equality over Z_p via a random-prime digest: the sender draws a
/// prime q from [delta^-2 log^2 p, 2 delta^-2 log^2 p] off the CRS and sends
/// (q, x mod q) in 2*ceil(log2 q) bits; the receiver accepts iff the digests
/// match. Never rejects x = y.
struct EqualityFingerprint {
  core::OneWayProtocol protocol;
  std::shared_ptr<numeric::ModPrimeHash> family;
  Value p_modulus = 0;

  /// Exact acceptance-error probability for a fixed unequal pair: the
  /// fraction of primes in the range dividing |x - y|.
  numeric::Rat false_accept_exact(Value x, Value y) const;
};

EqualityFingerprint equality_fingerprint_protocol(Value p_modulus,
                                                  double delta);

/// Exact protocol: forward the running sum mod m; zero error,
/// ceil(log2 m) bits per message.
core::OneWayProtocol sumequal_exact_protocol(int k, Value modulus,
                                             Value target = 0);

struct FingerprintMode {
  bool integer = false;
  Value modulus = 0;    // mod mode
  Value magnitude = 0;  // integer mode bound
  static FingerprintMode mod(Value m) { return {false, m, 0}; }
  static FingerprintMode integers(Value bound) { return {true, 0, bound}; }
};

/// Sum-Equal fingerprint: the CRS draws a random prime q, players forward the
/// running integer sum of their inputs mod q, and the last player accepts iff
/// the digest matches some value congruent to the target (the k candidate
/// lifts target + c*m in mod mode, the target itself over the integers).
/// One-sided: a true "sum = target" is always accepted; the false-accept
/// probability is at most delta and is exactly the fraction of primes in the
/// range dividing one of the candidate discrepancies.
struct SumEqualFingerprint {
  core::OneWayProtocol protocol;
  std::shared_ptr<numeric::ModPrimeHash> family;
  int k = 0;
  FingerprintMode mode;
  Value target = 0;
  double delta = 0;
  int digest_bits = 0;

  /// Exact per-instance false-accept probability (0 for equal instances).
  numeric::Rat false_accept_exact(const SumEqualInstance& inst) const;
};

/// k is the logical arity (the candidate lifts and prime range depend on it);
/// `players` is the chain length the engine runs, so the same construction
/// serves both the k-player protocol (players = k) and the 2-player base of
/// the simulation (players = 2). Run it over partitions of exactly k inputs.
SumEqualFingerprint sumequal_fingerprint_protocol(int k, FingerprintMode mode,
                                                  double delta,
                                                  Value target = 0);
SumEqualFingerprint sumequal_fingerprint_protocol(int k, FingerprintMode mode,
                                                  double delta, Value target,
                                                  int players);

}  // namespace commlab::sumequal
