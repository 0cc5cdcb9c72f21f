#include "commlab/l0stream/embedding.hpp"

#include <string>

#include "commlab/common/errors.hpp"

namespace commlab::l0stream {

long long EmbeddingPlan::frequency(int layer) const {
  long long f = 1;
  for (int i = 1; i < layer; ++i) f *= 100;
  return f;
}

long long EmbeddingPlan::prefix_coordinate_count(int upto) const {
  long long total = 0;
  for (int i = 1; i <= upto; ++i) total += frequency(i) * n;
  return total;
}

long long EmbeddingPlan::coordinate_count() const {
  return prefix_coordinate_count(layers);
}

long long EmbeddingPlan::stream_dimension() const {
  return 2 * coordinate_count();
}

void EmbeddingPlan::validate() const {
  if (layers < 1 || layers > 8) throw ConfigError("plan needs 1..8 layers");
  if (n < 1) throw ConfigError("plan needs n >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ConfigError("plan epsilon must lie in (0,1)");
  // N = n (100^t - 1) / 99 exactly, and N <= 100^t n / 99.
  long long pow = 1;
  for (int i = 0; i < layers; ++i) pow *= 100;
  if (coordinate_count() != n * (pow - 1) / 99)
    throw EngineViolation("embedding coordinate count identity failed");
}

LayerBits layer_from_reduction(const reductions::GhseReduction& r) {
  return LayerBits{r.m, r.m_prime};
}

long long layer_advantage(const LayerBits& layer) {
  if (layer.alice.size() != layer.bob.size())
    throw ConfigError("layer sides must have equal length");
  long long f = 0;
  for (std::size_t c = 0; c < layer.alice.size(); ++c)
    f += layer.alice[c] != layer.bob[c] ? 1 : -1;
  return f;
}

void for_each_embedded_update(
    const std::vector<LayerBits>& layers, const EmbeddingPlan& plan,
    const std::function<void(long long, long long)>& sink) {
  plan.validate();
  if (static_cast<int>(layers.size()) != plan.layers)
    throw ConfigError("layer count does not match the plan");
  long long base = 0;  // first pair index of the current layer
  for (int i = 1; i <= plan.layers; ++i) {
    const LayerBits& layer = layers[static_cast<std::size_t>(i - 1)];
    if (static_cast<long long>(layer.alice.size()) != plan.n ||
        static_cast<long long>(layer.bob.size()) != plan.n)
      throw ConfigError("layer " + std::to_string(i) +
                        " does not have n coordinates");
    const long long reps = plan.frequency(i);
    for (long long c = 0; c < plan.n; ++c) {
      const long long x = layer.alice[static_cast<std::size_t>(c)];
      const long long first = base + c * reps;
      for (long long r = 0; r < reps; ++r)
        sink(2 * (first + r) + x, +1);
    }
    for (long long c = 0; c < plan.n; ++c) {
      const long long y = layer.bob[static_cast<std::size_t>(c)];
      const long long first = base + c * reps;
      for (long long r = 0; r < reps; ++r)
        sink(2 * (first + r) + y, +1);
    }
    base += plan.n * reps;
  }
}

TurnstileStream embed_ghse_layers(const std::vector<LayerBits>& layers,
                                  const EmbeddingPlan& plan) {
  TurnstileStream s;
  s.dimension = plan.stream_dimension();
  s.magnitude = 1;
  s.strict = true;
  s.updates.reserve(static_cast<std::size_t>(2 * plan.coordinate_count()));
  for_each_embedded_update(layers, plan, [&s](long long i, long long v) {
    s.updates.emplace_back(i, v);
  });
  return s;
}

long long embedded_exact_l0(const std::vector<LayerBits>& layers,
                            const EmbeddingPlan& plan) {
  plan.validate();
  long long f_prime_total = 0;
  for (int i = 1; i <= plan.layers; ++i) {
    const long long f = layer_advantage(layers[static_cast<std::size_t>(i - 1)]);
    f_prime_total += plan.frequency(i) * ((plan.n + f) / 2);
  }
  return plan.coordinate_count() + f_prime_total;
}

DecodeResult decode_top_layer(long long estimate, const EmbeddingPlan& plan,
                              const std::vector<long long>& known_upper_f,
                              int queried_layer) {
  plan.validate();
  if (queried_layer < 1 || queried_layer > plan.layers)
    throw ConfigError("queried layer out of range");
  if (static_cast<int>(known_upper_f.size()) != plan.layers - queried_layer)
    throw ConfigError("need the advantage of every layer above the query");

  // Remove the exact contribution of the upper layers: each contributes
  // 100^{j-1} * (n + f'_j) to the Hamming norm under the plan's calibration.
  long long upper = 0;
  for (int j = queried_layer + 1; j <= plan.layers; ++j) {
    const long long f =
        known_upper_f[static_cast<std::size_t>(j - queried_layer - 1)];
    upper += plan.frequency(j) * (plan.n + (plan.n + f) / 2);
  }
  const long long rest = estimate - upper;
  const long long n_rest = plan.prefix_coordinate_count(queried_layer);
  const long long f_tilde = 2 * (rest - n_rest) - n_rest;
  const double band = plan.epsilon * static_cast<double>(n_rest);

  DecodeResult d;
  if (static_cast<double>(f_tilde) > band) {
    d.label = 1;
  } else if (static_cast<double>(f_tilde) < -band) {
    d.label = 0;
  } else {
    d.label = f_tilde >= 0 ? 1 : 0;
    d.ambiguous = true;
  }
  return d;
}

}  // namespace commlab::l0stream
