#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "commlab/l0stream/turnstile.hpp"
#include "commlab/reductions/ghse.hpp"

namespace commlab::l0stream {

/// Layered GHSE -> L0 embedding. Layer i (1-based) carries n coordinates,
/// each replicated 100^{i-1} times as distinct coordinate pairs. One
/// coordinate with bits (x, y) becomes the pair (e, e'): the Alice side
/// inserts +1 on the element selected by x, the Bob side +1 on the element
/// selected by y, so the pair supports 1 element when the bits agree and 2
/// when they disagree. Exact Hamming norm: L0 = N + F' where
/// F' = sum_i 100^{i-1} f'_i and f'_i = (n + f_i)/2 counts disagreements;
/// the insert-only calibration (agree -> 1, disagree -> 2) is part of the
/// plan and the decode arithmetic. All updates are +1, so the stream is
/// strict with every prefix trivially nonnegative.
struct EmbeddingPlan {
  int layers = 0;      // t
  long long n = 0;     // coordinates per layer
  double epsilon = 0;  // decode threshold parameter

  long long frequency(int layer) const;         // 100^{layer-1}, layer 1-based
  long long coordinate_count() const;           // N = n (100^t - 1) / 99
  long long stream_dimension() const;           // 2N (selector pairs)
  long long prefix_coordinate_count(int upto) const;  // N restricted to layers <= upto
  void validate() const;
};

struct LayerBits {
  std::vector<std::uint8_t> alice;
  std::vector<std::uint8_t> bob;
};

LayerBits layer_from_reduction(const reductions::GhseReduction& r);

/// f_i = #disagreements - #agreements of one layer.
long long layer_advantage(const LayerBits& layer);

/// Streams every embedded update (index, +1) into the sink without
/// materializing anything; update order is Alice's inserts then Bob's,
/// layer by layer.
void for_each_embedded_update(
    const std::vector<LayerBits>& layers, const EmbeddingPlan& plan,
    const std::function<void(long long, long long)>& sink);

/// Materialized stream (identity tests and the CLI); dimension 2N.
TurnstileStream embed_ghse_layers(const std::vector<LayerBits>& layers,
                                  const EmbeddingPlan& plan);

/// Exact Hamming norm of the embedded stream, computed arithmetically:
/// N + sum_i 100^{i-1} (n + f_i) / 2.
long long embedded_exact_l0(const std::vector<LayerBits>& layers,
                            const EmbeddingPlan& plan);

struct DecodeResult {
  int label = 0;
  bool ambiguous = false;  // inside the (-eps N, +eps N) band; label = sign
};

/// Removes layers above `queried_layer` exactly using their true advantages
/// (known_upper_f[j] = f value of layer queried_layer+1+j), converts the
/// remaining estimate to the advantage F-tilde = 2(est - N_rest) - N_rest,
/// and thresholds at +- epsilon * N_rest.
DecodeResult decode_top_layer(long long estimate, const EmbeddingPlan& plan,
                              const std::vector<long long>& known_upper_f,
                              int queried_layer);

}  // namespace commlab::l0stream
