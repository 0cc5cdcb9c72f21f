#pragma once

#include <utility>

#include "commlab/core/protocol.hpp"
#include "commlab/numeric/rational.hpp"

namespace commlab::simulate {

/// Majority-vote error amplification schedule: M = 1 + 2t independent copies
/// drop the error from delta to at most epsilon once
/// t >= log(epsilon/delta) / log(4 delta (1-delta)).
struct AmplifierPlan {
  double delta = 0.0;
  double epsilon = 0.0;
  long t = 0;
  long copies = 1;  // M = 1 + 2t, always odd

  /// Smallest t meeting the bound (0 when delta <= epsilon already). The
  /// exact binomial tail is re-checked and t bumped if floating-point ceil
  /// ever lands short.
  static AmplifierPlan for_target(double delta, double epsilon);
  /// The schedule used by the k-from-2 simulation: epsilon = delta^2/(16k^2).
  static AmplifierPlan for_simulation(double delta, long k);
};

/// Pr[Majority(X_1..X_{2t+1}) = 1] for iid Pr[X_i = 1] = delta, exactly.
numeric::Rat majority_error_exact(long t, const numeric::Rat& delta);

/// (4 delta (1-delta))^t * delta, the tail's closed-form upper bound.
numeric::Rat majority_error_bound(long t, const numeric::Rat& delta);

/// Runs `copies` independent seeded copies of the base protocol inside each
/// message and outputs the plurality of the copy outputs. Each copy message
/// is padded to the base protocol's declared maximum width so the receiver
/// can slice without framing bits; the base must declare that width and use
/// deterministic or CRS randomness.
core::OneWayProtocol amplify_protocol(const core::OneWayProtocol& base,
                                      long copies);

/// Convenience: plan for (delta, epsilon), then amplify.
std::pair<core::OneWayProtocol, AmplifierPlan> amplify_majority(
    const core::OneWayProtocol& base, double delta, double epsilon);

}  // namespace commlab::simulate
