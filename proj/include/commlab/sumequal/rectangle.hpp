#pragma once

#include <cstdint>
#include <vector>

#include "commlab/numeric/rational.hpp"
#include "commlab/sumequal/instance.hpp"

namespace commlab::sumequal {

/// A combinatorial rectangle on the first k-1 players of the m-copy
/// direct-sum distribution: player j may hold any of the listed columns
/// (each column is that player's m values in Z_p).
struct Rectangle {
  std::vector<std::vector<std::vector<Value>>> allowed;  // [player][choice][copy]

  /// The unrestricted rectangle (every column allowed for every player).
  static Rectangle full(int k, long m, Value p);
  /// Full rectangle, then player j restricted to a single value on one copy.
  static Rectangle pin_value(int k, long m, Value p, int player, long copy,
                             Value value);
};

struct RectangleProbeResult {
  /// SD of (G_k on the first l probed copies | G_{-k} in R) from uniform over
  /// Z_p^l, for every prefix l = 1..|L|.
  std::vector<numeric::Rat> prefix_sd;
  numeric::Rat mass;  // Pr[H_{-k} in R_{-k}]
  const numeric::Rat& full_sd() const { return prefix_sd.back(); }
};

/// Exact conditional-distribution probe: enumerates the rectangle, tallies
/// the last player's closing values on the probed copies, and reports the
/// statistical distance from uniform plus the rectangle's mass. Refuses when
/// p^{m(k-1)} exceeds the enumeration cap.
RectangleProbeResult rectangle_conditional_probe(
    int k, long m, Value p, const Rectangle& rect,
    const std::vector<long>& copies, std::uint64_t cap = 10000000ULL);

}  // namespace commlab::sumequal
