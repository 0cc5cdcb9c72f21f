#pragma once

#include <vector>

#include "commlab/common/rng.hpp"
#include "commlab/core/function_table.hpp"

namespace commlab::core {

/// A product input distribution given by per-coordinate pmfs. Being a product
/// is structural: there is no way to express correlations in this type, which
/// is exactly what the simulation's correctness requires.
struct ProductDist {
  std::vector<std::vector<double>> marginals;  // marginals[j][v]

  static ProductDist uniform(const std::vector<int>& alphabets);
  static ProductDist uniform_for(const FunctionTable& f) {
    return uniform(f.alphabets());
  }

  std::size_t arity() const { return marginals.size(); }
  void validate() const;

  std::vector<Value> sample(SeedStream& rng) const;
  /// Product of coordinate probabilities over [from, to).
  double weight(std::span<const Value> x, std::size_t from,
                std::size_t to) const;
};

}  // namespace commlab::core
