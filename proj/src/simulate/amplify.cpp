#include "commlab/simulate/amplify.hpp"

#include <cmath>
#include <map>
#include <memory>

#include "commlab/common/errors.hpp"

namespace commlab::simulate {

using core::BitString;
using core::OneWayProtocol;
using core::PlayerView;
using core::RandomnessMode;
using core::Value;
using numeric::Rat;

Rat majority_error_exact(long t, const Rat& delta) {
  const long m = 2 * t + 1;
  const Rat one_minus = Rat(1) - delta;
  // delta^j * (1-delta)^(m-j), built incrementally from j = t+1.
  Rat term = 1;
  for (long i = 0; i < t + 1; ++i) term *= delta;
  for (long i = 0; i < m - (t + 1); ++i) term *= one_minus;
  Rat sum = 0;
  for (long j = t + 1; j <= m; ++j) {
    Rat coeff(numeric::binomial(static_cast<unsigned long>(m),
                                static_cast<unsigned long>(j)));
    sum += coeff * term;
    if (j < m) {
      term *= delta;
      if (one_minus != 0) term /= one_minus;
    }
  }
  return sum;
}

Rat majority_error_bound(long t, const Rat& delta) {
  Rat base = 4 * delta * (Rat(1) - delta);
  Rat out = delta;
  for (long i = 0; i < t; ++i) out *= base;
  return out;
}

AmplifierPlan AmplifierPlan::for_target(double delta, double epsilon) {
  if (!(delta >= 0.0 && delta < 0.5))
    throw Refusal("amplify-delta", "majority amplification needs delta < 1/2");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ConfigError("amplifier target epsilon must lie in (0,1)");
  AmplifierPlan plan;
  plan.delta = delta;
  plan.epsilon = epsilon;
  if (delta <= epsilon || delta == 0.0) {
    plan.t = 0;
    plan.copies = 1;
    return plan;
  }
  const double denom = std::log2(4.0 * delta * (1.0 - delta));
  plan.t = static_cast<long>(std::ceil(std::log2(epsilon / delta) / denom));
  if (plan.t < 0) plan.t = 0;
  // Guard against a short floating-point ceil: the exact tail must meet the
  // target.
  Rat d(delta), e(epsilon);
  d.canonicalize();
  e.canonicalize();
  while (majority_error_exact(plan.t, d) > e) ++plan.t;
  plan.copies = 1 + 2 * plan.t;
  return plan;
}

AmplifierPlan AmplifierPlan::for_simulation(double delta, long k) {
  if (k < 2) throw ConfigError("simulation plan needs k >= 2");
  return for_target(delta, delta * delta / (16.0 * static_cast<double>(k) *
                                            static_cast<double>(k)));
}

OneWayProtocol amplify_protocol(const OneWayProtocol& base, long copies) {
  if (copies < 1 || copies % 2 == 0)
    throw ConfigError("copy count must be odd and >= 1");
  if (copies == 1) return base;
  if (base.mode == RandomnessMode::private_coins)
    throw Refusal("amplify-private-coins",
                  "amplification forks CRS streams; private-coin bases are "
                  "not supported");
  if (base.declared_max_message_bits < 0)
    throw ConfigError(
        "amplification needs a declared maximum message width to slice "
        "copies");

  const int slot = base.declared_max_message_bits;
  auto b = std::make_shared<OneWayProtocol>(base);

  OneWayProtocol amp;
  amp.t = base.t;
  amp.mode = RandomnessMode::crs;
  amp.declared_max_message_bits = static_cast<int>(copies) * slot;
  amp.name = base.name + "-x" + std::to_string(copies);

  auto copy_seed = [](const PlayerView& view, long l) {
    return derive_seed(view.crs_seed(), "amp-copy",
                       static_cast<std::uint64_t>(l));
  };

  amp.message_fn = [b, copies, slot, copy_seed](const PlayerView& view) {
    BitString out;
    for (long l = 0; l < copies; ++l) {
      BitString copy_in;
      const BitString* incoming = nullptr;
      if (view.has_incoming()) {
        copy_in = view.incoming().slice(static_cast<std::size_t>(l) *
                                            static_cast<std::size_t>(slot),
                                        static_cast<std::size_t>(slot));
        incoming = &copy_in;
      }
      BitString msg = core::eval_message(*b, view.player(), view.input(),
                                         incoming, copy_seed(view, l));
      if (static_cast<int>(msg.size()) != slot)
        throw EngineViolation(
            "amplification needs fixed-width base messages equal to the "
            "declared width");
      out.append(msg);
    }
    return out;
  };

  amp.output_fn = [b, copies, slot, copy_seed](const PlayerView& view) {
    std::map<Value, long> votes;
    for (long l = 0; l < copies; ++l) {
      BitString copy_in;
      const BitString* incoming = nullptr;
      if (view.has_incoming()) {
        copy_in = view.incoming().slice(static_cast<std::size_t>(l) *
                                            static_cast<std::size_t>(slot),
                                        static_cast<std::size_t>(slot));
        incoming = &copy_in;
      }
      ++votes[core::eval_output(*b, view.input(), incoming,
                                copy_seed(view, l))];
    }
    Value best = 0;
    long count = -1;
    for (auto& [v, c] : votes) {
      if (c > count) {
        best = v;
        count = c;
      }
    }
    return best;
  };
  return amp;
}

std::pair<OneWayProtocol, AmplifierPlan> amplify_majority(
    const OneWayProtocol& base, double delta, double epsilon) {
  AmplifierPlan plan = AmplifierPlan::for_target(delta, epsilon);
  return {amplify_protocol(base, plan.copies), plan};
}

}  // namespace commlab::simulate
