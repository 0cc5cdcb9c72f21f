#pragma once

#include <cstddef>
#include <vector>

namespace commlab::core {

/// Assignment of k logical inputs (0-based indices) to t players. Blocks may
/// be empty; they must be pairwise disjoint and cover {0..k-1} exactly.
struct InputPartition {
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> blocks;
  bool contiguous = false;

  std::size_t t() const { return blocks.size(); }

  /// Blocks are the intervals (cuts[j-1], cuts[j]] for a nondecreasing cut
  /// sequence 0 = cuts[0] <= ... <= cuts[t] = k.
  static InputPartition from_cuts(std::size_t k,
                                  const std::vector<std::size_t>& cuts);

  /// Evenly sized contiguous blocks (first k % t blocks get one extra).
  static InputPartition even(std::size_t k, std::size_t t);

  /// One logical input per player (t = k).
  static InputPartition singleton(std::size_t k);

  static InputPartition from_blocks(std::size_t k,
                                    std::vector<std::vector<std::size_t>> blocks);

  /// Throws ConfigError unless the blocks partition {0..k-1} (and are
  /// intervals in order when the contiguous flag is set).
  void validate() const;
};

}  // namespace commlab::core
