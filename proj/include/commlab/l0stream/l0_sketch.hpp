#pragma once

#include <cstdint>
#include <vector>

#include "commlab/l0stream/turnstile.hpp"

namespace commlab::l0stream {

/// (1 +- epsilon) distinct-count sketch for strict turnstile streams:
/// geometric level sampling with pairwise-independent hashes, Theta(1/eps^2)
/// buckets per level, and per-level counters stored modulo a random prime of
/// Theta(log(1/eps) + log log(mM)) bits. Same-seed sketches merge bucket by
/// bucket.
class L0Sketch {
 public:
  /// stream_len and magnitude size the counter primes (mM in the width
  /// formula); they are hints, not hard limits.
  L0Sketch(long long dimension, double epsilon, std::uint64_t seed,
           long long stream_len = 1 << 20, long long magnitude = 100);

  void update(long long index, long long delta);
  void consume(const TurnstileStream& s);

  long long estimate() const;

  /// Exact bit count of the sketch state: counters, their primes, and the
  /// hash seeds.
  long long space_bits() const;

  void merge(const L0Sketch& other);
  bool same_layout(const L0Sketch& other) const;

  int levels() const { return levels_; }
  int buckets_per_level() const { return buckets_; }
  int counter_bits() const { return counter_bits_; }
  std::uint64_t seed() const { return seed_; }

 private:
  long long dimension_;
  double epsilon_;
  std::uint64_t seed_;
  int levels_;
  int buckets_;
  int counter_bits_;
  std::vector<std::uint32_t> primes_;       // one per level
  std::vector<std::uint64_t> level_a_, level_b_;  // bucket hash per level
  std::uint64_t assign_a_, assign_b_;             // level-assignment hash
  std::vector<std::uint32_t> counters_;     // levels_ x buckets_
};

/// The spec-level operation: estimate with failure probability at most delta
/// by taking the median of independent sketches (a single sketch already
/// achieves failure <= 1/3, so amplification engages only below that).
struct L0Estimate {
  long long estimate = 0;
  long long space_bits = 0;
  int sketches = 1;
};

L0Estimate l0_estimate(const TurnstileStream& s, double epsilon, double delta,
                       std::uint64_t seed);

}  // namespace commlab::l0stream
