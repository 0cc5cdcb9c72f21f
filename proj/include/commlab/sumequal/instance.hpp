#pragma once

#include <cstdint>
#include <vector>

#include "commlab/core/function_table.hpp"

namespace commlab::sumequal {

using core::Value;

/// One Sum-Equal question: do the k inputs sum to `target`, over Z_m or over
/// the integers? The library convention is 1 = "sum equals target"
/// throughout; generators that reproduce the direct-sum machinery flip their
/// reported answers and say so.
struct SumEqualInstance {
  int k = 0;
  bool integer_mode = false;
  Value modulus = 0;    // mod mode: m >= 2
  Value magnitude = 0;  // integer mode: |x_j| <= magnitude for j < k,
                        // |x_k| <= k * magnitude
  std::vector<Value> inputs;
  Value target = 0;

  Value truth() const;
  void validate() const;

  static SumEqualInstance mod(int k, Value modulus, std::vector<Value> inputs,
                              Value target = 0);
  static SumEqualInstance integers(int k, Value magnitude,
                                   std::vector<Value> inputs, Value target = 0);
};

}  // namespace commlab::sumequal
