#include "commlab/core/protocol.hpp"

#include <algorithm>

#include "commlab/common/errors.hpp"

namespace commlab::core {

SeedStream PlayerView::crs() const {
  if (mode_ != RandomnessMode::crs)
    throw EngineViolation("protocol mode does not grant CRS access");
  return SeedStream(crs_seed_);
}

SeedStream PlayerView::coins() const {
  if (mode_ != RandomnessMode::private_coins)
    throw EngineViolation("protocol mode does not grant private coins");
  return SeedStream(coins_seed_);
}

std::uint64_t PlayerView::crs_seed() const {
  if (mode_ != RandomnessMode::crs)
    throw EngineViolation("protocol mode does not grant CRS access");
  return crs_seed_;
}

CostReport CostReport::from_lengths(std::vector<int> lengths) {
  CostReport r;
  r.per_message_bits = std::move(lengths);
  for (int b : r.per_message_bits) {
    r.total_bits += b;
    r.max_message_bits = std::max(r.max_message_bits, b);
  }
  return r;
}

void CostReport::validate() const {
  long long total = 0;
  int maxb = 0;
  for (int b : per_message_bits) {
    if (b < 0) throw EngineViolation("negative message length");
    total += b;
    maxb = std::max(maxb, b);
  }
  if (total != total_bits || maxb != max_message_bits)
    throw EngineViolation("cost report identities violated");
  if (error_estimate < 0.0 || error_estimate > 1.0)
    throw EngineViolation("error estimate outside [0,1]");
}

std::string CostReport::error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::exact_enumeration:
      return "exact-enumeration";
    case ErrorKind::monte_carlo:
      return "monte-carlo";
    default:
      return "none";
  }
}

namespace {

void check_message(const OneWayProtocol& p, const BitString& msg) {
  if (p.declared_max_message_bits >= 0 &&
      static_cast<int>(msg.size()) > p.declared_max_message_bits)
    throw EngineViolation(
        "message exceeds the protocol's declared maximum length");
}

}  // namespace

RunResult run_protocol(const OneWayProtocol& p, const InputPartition& partition,
                       std::span<const Value> inputs, std::uint64_t seed) {
  if (p.t < 1) throw ConfigError("protocol needs at least one player");
  if (partition.t() != static_cast<std::size_t>(p.t))
    throw ConfigError("partition player count does not match the protocol");
  if (inputs.size() != partition.k)
    throw ConfigError("input arity does not match the partition");
  partition.validate();

  // Gather each player's block; players only ever see their own.
  std::vector<std::vector<Value>> blocks(partition.t());
  for (std::size_t j = 0; j < partition.t(); ++j)
    for (std::size_t i : partition.blocks[j]) blocks[j].push_back(inputs[i]);

  const std::uint64_t crs_seed = derive_seed(seed, "crs");
  RunResult result;
  result.transcript.reserve(static_cast<std::size_t>(p.t - 1));
  const BitString* incoming = nullptr;
  for (int j = 1; j < p.t; ++j) {
    PlayerView view(j, blocks[static_cast<std::size_t>(j - 1)], incoming,
                    p.mode, crs_seed, derive_seed(seed, "coins",
                                                  static_cast<std::uint64_t>(j)));
    BitString msg = p.message_fn(view);
    check_message(p, msg);
    result.transcript.push_back(std::move(msg));
    incoming = &result.transcript.back();
  }
  PlayerView last(p.t, blocks.back(), incoming, p.mode, crs_seed,
                  derive_seed(seed, "coins", static_cast<std::uint64_t>(p.t)));
  result.output = p.output_fn(last);

  std::vector<int> lengths;
  lengths.reserve(result.transcript.size());
  for (const auto& m : result.transcript)
    lengths.push_back(static_cast<int>(m.size()));
  result.cost = CostReport::from_lengths(std::move(lengths));
  result.cost.declared_max_message_bits = p.declared_max_message_bits;
  result.cost.seed = seed;
  return result;
}

BitString eval_message(const OneWayProtocol& p, int player,
                       std::span<const Value> block, const BitString* incoming,
                       std::uint64_t crs_seed, std::uint64_t coins_seed) {
  if (player < 1 || player >= p.t)
    throw ConfigError("eval_message: player must be in [1, t-1]");
  PlayerView view(player, block, incoming, p.mode, crs_seed, coins_seed);
  BitString msg = p.message_fn(view);
  check_message(p, msg);
  return msg;
}

Value eval_output(const OneWayProtocol& p, std::span<const Value> block,
                  const BitString* incoming, std::uint64_t crs_seed,
                  std::uint64_t coins_seed) {
  PlayerView view(p.t, block, incoming, p.mode, crs_seed, coins_seed);
  return p.output_fn(view);
}

}  // namespace commlab::core
