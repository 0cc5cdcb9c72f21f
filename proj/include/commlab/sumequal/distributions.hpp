#pragma once

#include <cstdint>
#include <vector>

#include "commlab/common/rng.hpp"
#include "commlab/core/product_dist.hpp"
#include "commlab/sumequal/instance.hpp"

namespace commlab::sumequal {

/// The product distribution of the separation result: every coordinate
/// independently uniform over Z_p.
core::ProductDist viola_product_distribution(int k, Value p);

/// Is p inside the regime (k^{1/4}, 2 k^{1/4})?
bool paper_regime_kp(int k, Value p);

/// m independent copies of the equal-probability mixture of
///   G = (G_1..G_{k-1}, -sum G_j)   (row sums to 0 mod p)
///   B = (G_{-k}, 1 + G_k)          (row sums to 1 mod p)
/// coin[i] = 1 marks a B row. Note the direct-sum machinery reads answers in
/// the flipped convention (0 for a row summing to 0); this library keeps
/// 1 = "sum equals target", so the flipped answer is exactly coin[i].
struct DirectSumSample {
  int k = 0;
  Value p = 0;
  long m = 0;
  std::vector<std::vector<Value>> rows;  // m rows of k entries in Z_p
  std::vector<int> coin;                 // V, uniform over {0,1}^m
  bool outside_paper_regime = false;

  int sum_equal_answer(long i) const { return coin[static_cast<std::size_t>(i)] ? 0 : 1; }
  int flipped_answer(long i) const { return coin[static_cast<std::size_t>(i)]; }
  void verify() const;  // row sums match the coins exactly
};

DirectSumSample direct_sum_sample(int k, Value p, long m, std::uint64_t seed);

/// Desk-scale default magnitude bound: max(1, floor(log2(k) / 8)).
long default_magnitude_bound(int k);

/// m copies of the integer hard distribution: row entries uniform over
/// {1..a} for the first k-1 players, the last entry closing the sum to
/// exactly 0 (G) or exactly M = lcm(1..a) (B); plus a uniformly queried copy
/// index and the answers to all later copies.
struct AugIndexSample {
  int k = 0;
  long m = 0;
  long a = 0;
  std::uint64_t big_m = 0;  // lcm(1..a)
  std::vector<std::vector<Value>> rows;
  std::vector<int> coin;  // 1 marks a B row (sum M)
  long queried = 0;       // 0-based index n
  bool m_bound_ok = true; // report-only: M <= 2^{c' a} for the configured c'

  /// Answers revealed to the referee: copies queried+1 .. m-1, flipped
  /// convention (coin values).
  std::vector<int> revealed_answers() const;
  void verify() const;  // every row sums to 0 or M per its coin
};

AugIndexSample aug_index_sample(int k, long m, long a, std::uint64_t seed,
                                double c_prime = 2.0);

}  // namespace commlab::sumequal
