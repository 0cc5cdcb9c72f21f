#include "commlab/core/disjointness.hpp"

#include <memory>

#include "commlab/common/errors.hpp"

namespace commlab::core {

bool DisjointnessInstance::promise_holds() const {
  std::int64_t shared = -1;
  for (std::int64_t e = 0; e < universe; ++e) {
    int owners = 0;
    for (const auto& s : sets) owners += s[static_cast<std::size_t>(e)];
    if (owners <= 1) continue;
    if (owners == t && shared == -1 && intersecting) {
      shared = e;
      continue;
    }
    return false;
  }
  return intersecting ? shared != -1 : true;
}

DisjointnessInstance make_disjointness_instance(int t, std::int64_t n,
                                                DisjointnessCase which,
                                                SeedStream& rng) {
  if (t < 2) throw ConfigError("disjointness needs t >= 2");
  if (n < t || n % t != 0)
    throw ConfigError("universe size n must be a positive multiple of t");
  DisjointnessInstance inst;
  inst.t = t;
  inst.universe = n / t;
  inst.intersecting = which == DisjointnessCase::unique_intersection;
  inst.sets.assign(static_cast<std::size_t>(t),
                   std::vector<std::uint8_t>(
                       static_cast<std::size_t>(inst.universe), 0));

  std::int64_t shared = -1;
  if (inst.intersecting) {
    shared = static_cast<std::int64_t>(
        rng.uniform_below(static_cast<std::uint64_t>(inst.universe)));
    for (auto& s : inst.sets) s[static_cast<std::size_t>(shared)] = 1;
  }
  for (std::int64_t e = 0; e < inst.universe; ++e) {
    if (e == shared) continue;
    // Each remaining element lands in at most one set.
    const std::uint64_t owner =
        rng.uniform_below(static_cast<std::uint64_t>(t) + 1);
    if (owner < static_cast<std::uint64_t>(t))
      inst.sets[owner][static_cast<std::size_t>(e)] = 1;
  }
  return inst;
}

DisjointnessDemoResult disjointness_demo(int t, std::int64_t n,
                                         DisjointnessCase which,
                                         std::uint64_t seed) {
  SeedStream rng(derive_seed(seed, "disjointness"));
  DisjointnessDemoResult result;
  result.instance = make_disjointness_instance(t, n, which, rng);
  if (!result.instance.promise_holds())
    throw EngineViolation("generated instance violates the promise");

  const std::int64_t u = result.instance.universe;
  const int players = t - 1;
  // Pigeonhole: player `decider` (1-based) holds sets decider-1 and decider.
  const int decider =
      1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(players)));
  result.decider = decider;

  // Logical inputs: the n indicator bits, set s occupying coordinates
  // [s*u, (s+1)*u). Blocks align with whole sets.
  std::vector<Value> inputs;
  inputs.reserve(static_cast<std::size_t>(n));
  for (const auto& s : result.instance.sets)
    for (std::uint8_t b : s) inputs.push_back(b);

  std::vector<std::size_t> cuts{0};
  for (int j = 1; j <= players; ++j) {
    const int sets_here = j == decider ? 2 : 1;
    cuts.push_back(cuts.back() +
                   static_cast<std::size_t>(sets_here) *
                       static_cast<std::size_t>(u));
  }
  result.partition =
      InputPartition::from_cuts(static_cast<std::size_t>(n), cuts);

  auto decide_local = [u](std::span<const Value> block) -> Value {
    // Block holds two sets; the promise makes their intersection the answer.
    for (std::int64_t e = 0; e < u; ++e)
      if (block[static_cast<std::size_t>(e)] != 0 &&
          block[static_cast<std::size_t>(e + u)] != 0)
        return 1;
    return 0;
  };

  OneWayProtocol p;
  p.t = players;
  p.mode = RandomnessMode::deterministic;
  p.declared_max_message_bits = 1;
  p.name = "disjointness-pigeonhole";
  p.message_fn = [decider, decide_local](const PlayerView& view) {
    BitString msg;
    if (view.player() == decider)
      msg.push_bit(static_cast<int>(decide_local(view.input())));
    else
      msg.push_bit(view.has_incoming() ? view.incoming().bit(0) : 0);
    return msg;
  };
  p.output_fn = [decider, decide_local](const PlayerView& view) -> Value {
    if (view.player() == decider) return decide_local(view.input());
    return view.incoming().bit(0);
  };

  RunResult run = run_protocol(p, result.partition, inputs, seed);
  result.output = run.output;

  // Cost per the construction's accounting: one bit per player, the last
  // player's announced bit included.
  std::vector<int> lengths = run.cost.per_message_bits;
  lengths.push_back(1);
  result.cost = CostReport::from_lengths(std::move(lengths));
  result.cost.error_kind = CostReport::ErrorKind::exact_enumeration;
  result.cost.seed = seed;
  return result;
}

}  // namespace commlab::core
