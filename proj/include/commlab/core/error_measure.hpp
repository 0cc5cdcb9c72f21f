#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "commlab/core/function_table.hpp"
#include "commlab/core/partition.hpp"
#include "commlab/core/protocol.hpp"

namespace commlab::core {

struct MeasureOptions {
  /// Exhaustive mode enumerates the whole domain; requires a deterministic
  /// protocol and an enumerable domain (explicit refusal otherwise).
  bool exhaustive = false;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 42;
  /// Monte Carlo trials may run on this many threads; per-trial seeds are
  /// derived from (seed, trial index), so the estimate is identical for any
  /// thread count.
  int threads = 1;
  std::uint64_t enum_cap = default_enum_cap();
  /// Input source for Monte Carlo trials; uniform over the domain if unset.
  std::function<std::vector<Value>(SeedStream&)> sampler;
};

/// Measures Pr[output != f] and worst-case message lengths. Exhaustive mode
/// reports the exact distributional error under the uniform input
/// distribution (zero iff worst-case exact); Monte Carlo reports the
/// empirical error with trials and seed recorded.
CostReport measure_error(const OneWayProtocol& p, const FunctionTable& f,
                         const InputPartition& partition,
                         const MeasureOptions& options);

}  // namespace commlab::core
