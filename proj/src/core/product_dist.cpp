#include "commlab/core/product_dist.hpp"

#include <cmath>

#include "commlab/common/errors.hpp"

namespace commlab::core {

ProductDist ProductDist::uniform(const std::vector<int>& alphabets) {
  ProductDist d;
  for (int a : alphabets) {
    if (a < 1) throw ConfigError("alphabet sizes must be >= 1");
    d.marginals.emplace_back(static_cast<std::size_t>(a),
                             1.0 / static_cast<double>(a));
  }
  return d;
}

void ProductDist::validate() const {
  for (const auto& pmf : marginals) {
    double mass = 0;
    for (double p : pmf) {
      if (p < 0) throw ConfigError("negative marginal probability");
      mass += p;
    }
    if (std::abs(mass - 1.0) > 1e-9)
      throw ConfigError("marginal does not sum to 1");
  }
}

std::vector<Value> ProductDist::sample(SeedStream& rng) const {
  std::vector<Value> x(marginals.size());
  for (std::size_t j = 0; j < marginals.size(); ++j) {
    const auto& pmf = marginals[j];
    double u = rng.next_double();
    std::size_t v = 0;
    for (; v + 1 < pmf.size(); ++v) {
      if (u < pmf[v]) break;
      u -= pmf[v];
    }
    x[j] = static_cast<Value>(v);
  }
  return x;
}

double ProductDist::weight(std::span<const Value> x, std::size_t from,
                           std::size_t to) const {
  double w = 1.0;
  for (std::size_t j = from; j < to; ++j)
    w *= marginals[j][static_cast<std::size_t>(x[j - from])];
  return w;
}

}  // namespace commlab::core
