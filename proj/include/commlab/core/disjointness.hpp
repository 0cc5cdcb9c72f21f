#pragma once

#include <cstdint>
#include <vector>

#include "commlab/core/partition.hpp"
#include "commlab/core/protocol.hpp"

namespace commlab::core {

enum class DisjointnessCase { disjoint, unique_intersection };

/// A promise instance of t-party set disjointness: t sets over a universe of
/// n/t elements that are either pairwise disjoint or share one unique element
/// (with every other element in at most one set).
struct DisjointnessInstance {
  int t = 0;
  std::int64_t universe = 0;  // n / t
  std::vector<std::vector<std::uint8_t>> sets;  // indicator vectors
  bool intersecting = false;

  bool promise_holds() const;
};

DisjointnessInstance make_disjointness_instance(int t, std::int64_t n,
                                                DisjointnessCase which,
                                                SeedStream& rng);

struct DisjointnessDemoResult {
  DisjointnessInstance instance;
  Value output = 0;
  CostReport cost;  // includes the final announced bit, one per player total
  InputPartition partition;
  int decider = 0;  // 1-based player holding two sets
};

/// Generates a promise instance and runs the (t-1)-player protocol in which
/// the pigeonholed player holding two sets decides locally; every message is
/// a single forwarded bit.
DisjointnessDemoResult disjointness_demo(int t, std::int64_t n,
                                         DisjointnessCase which,
                                         std::uint64_t seed);

}  // namespace commlab::core
