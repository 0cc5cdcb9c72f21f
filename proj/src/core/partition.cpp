#include "commlab/core/partition.hpp"

#include <algorithm>
#include <string>

#include "commlab/common/errors.hpp"

namespace commlab::core {

InputPartition InputPartition::from_cuts(std::size_t k,
                                         const std::vector<std::size_t>& cuts) {
  if (cuts.size() < 2 || cuts.front() != 0 || cuts.back() != k)
    throw ConfigError("partition cuts must start at 0 and end at k");
  InputPartition p;
  p.k = k;
  p.contiguous = true;
  for (std::size_t j = 1; j < cuts.size(); ++j) {
    if (cuts[j] < cuts[j - 1])
      throw ConfigError("partition cuts must be nondecreasing");
    std::vector<std::size_t> block;
    for (std::size_t i = cuts[j - 1]; i < cuts[j]; ++i) block.push_back(i);
    p.blocks.push_back(std::move(block));
  }
  p.validate();
  return p;
}

InputPartition InputPartition::even(std::size_t k, std::size_t t) {
  if (t == 0) throw ConfigError("partition needs at least one player");
  std::vector<std::size_t> cuts{0};
  std::size_t base = k / t, extra = k % t;
  for (std::size_t j = 0; j < t; ++j)
    cuts.push_back(cuts.back() + base + (j < extra ? 1 : 0));
  return from_cuts(k, cuts);
}

InputPartition InputPartition::singleton(std::size_t k) {
  std::vector<std::size_t> cuts(k + 1);
  for (std::size_t i = 0; i <= k; ++i) cuts[i] = i;
  return from_cuts(k, cuts);
}

InputPartition InputPartition::from_blocks(
    std::size_t k, std::vector<std::vector<std::size_t>> blocks) {
  InputPartition p;
  p.k = k;
  p.blocks = std::move(blocks);
  p.contiguous = false;
  p.validate();
  return p;
}

void InputPartition::validate() const {
  if (blocks.empty()) throw ConfigError("partition needs at least one player");
  std::vector<char> seen(k, 0);
  std::size_t covered = 0;
  for (const auto& block : blocks) {
    for (std::size_t i : block) {
      if (i >= k) throw ConfigError("partition index out of range");
      if (seen[i]) throw ConfigError("partition blocks overlap");
      seen[i] = 1;
      ++covered;
    }
  }
  if (covered != k)
    throw ConfigError("partition blocks must cover all " + std::to_string(k) +
                      " inputs");
  if (contiguous) {
    std::size_t next = 0;
    for (const auto& block : blocks) {
      for (std::size_t i : block) {
        if (i != next)
          throw ConfigError("contiguous partition has non-interval block");
        ++next;
      }
    }
  }
}

}  // namespace commlab::core
