#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

#include "commlab/core/function_table.hpp"
#include "commlab/core/product_dist.hpp"
#include "commlab/core/protocol.hpp"
#include "commlab/simulate/amplify.hpp"

namespace commlab::simulate {

struct SimulationStats {
  std::atomic<std::uint64_t> messages{0};
  /// Steps where no reconstructed prefix met the correctness threshold and
  /// the sampler fell back to the full message-consistent posterior.
  std::atomic<std::uint64_t> fallbacks{0};
};

struct KFromTwoResult {
  core::OneWayProtocol protocol;   // k players, CRS randomness
  core::OneWayProtocol amplified;  // the amplified 2-player base
  AmplifierPlan plan;
  std::shared_ptr<SimulationStats> stats;
};

/// Builds the k-player protocol that simulates a 2-player one-way protocol
/// under a product input distribution mu. The base is first amplified to
/// error delta^2/(16k^2); player i then reconstructs a prefix by sampling
/// the exact mu-posterior of prefixes conditioned on the received message,
/// restricted to prefixes whose continuation is correct with probability at
/// least 1 - delta/(4k), and forwards the base protocol's message for
/// (prefix, own input) plus ceil(log2 k) position bits. Error is measured
/// under mu only.
///
/// The base protocol must use deterministic or CRS randomness (messages must
/// be a function of input and CRS for the exact posterior to be computable);
/// private-coin bases are refused.
KFromTwoResult k_from_two_simulation(
    const core::OneWayProtocol& base2, const core::FunctionTable& f,
    const core::ProductDist& mu, int k, double delta,
    std::uint64_t enum_cap = core::default_enum_cap());

}  // namespace commlab::simulate
