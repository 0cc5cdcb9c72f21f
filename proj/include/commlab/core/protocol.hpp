#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "commlab/common/bits.hpp"
#include "commlab/common/rng.hpp"
#include "commlab/core/function_table.hpp"
#include "commlab/core/partition.hpp"

namespace commlab::core {

using commlab::bits_for_count;
using commlab::BitString;
using commlab::SeedStream;

enum class RandomnessMode { deterministic, private_coins, crs };

/// What a player is allowed to see: its own block, the incoming message, and
/// the randomness its protocol mode permits. The engine builds these; a
/// message function has no other channel to the rest of the input.
class PlayerView {
 public:
  int player() const { return player_; }  // 1-based
  std::span<const Value> input() const { return input_; }
  /// Message from player-1; empty for the first player.
  const BitString& incoming() const { return incoming_ ? *incoming_ : empty_; }
  bool has_incoming() const { return incoming_ != nullptr; }

  /// Common reference string, re-read from position zero on every call.
  SeedStream crs() const;
  /// This player's private coin stream.
  SeedStream coins() const;
  /// The CRS seed is public information by definition of the model.
  std::uint64_t crs_seed() const;

  PlayerView(int player, std::span<const Value> input,
             const BitString* incoming, RandomnessMode mode,
             std::uint64_t crs_seed, std::uint64_t coins_seed)
      : player_(player),
        input_(input),
        incoming_(incoming),
        mode_(mode),
        crs_seed_(crs_seed),
        coins_seed_(coins_seed) {}

 private:
  int player_;
  std::span<const Value> input_;
  const BitString* incoming_;
  RandomnessMode mode_;
  std::uint64_t crs_seed_;
  std::uint64_t coins_seed_;
  inline static const BitString empty_{};
};

/// A t-player one-way number-in-hand protocol: players 1..t-1 each emit one
/// message to their successor, player t announces the output (not counted in
/// communication).
struct OneWayProtocol {
  int t = 2;
  RandomnessMode mode = RandomnessMode::deterministic;
  /// Static upper bound a protocol declares for any single message; -1 when
  /// unspecified. The engine rejects longer messages at run time.
  int declared_max_message_bits = -1;
  std::function<BitString(const PlayerView&)> message_fn;
  std::function<Value(const PlayerView&)> output_fn;
  std::string name;
};

struct CostReport {
  std::vector<int> per_message_bits;
  int max_message_bits = 0;
  long long total_bits = 0;
  double error_estimate = 0.0;
  enum class ErrorKind { none, exact_enumeration, monte_carlo };
  ErrorKind error_kind = ErrorKind::none;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int declared_max_message_bits = -1;

  static CostReport from_lengths(std::vector<int> lengths);
  /// Checks total = sum, max = max, error in [0,1].
  void validate() const;
  static std::string error_kind_name(ErrorKind k);
};

struct RunResult {
  Value output = 0;
  CostReport cost;
  std::vector<BitString> transcript;
};

/// Executes one protocol run. Deterministic given (inputs, seed): the CRS and
/// each player's private coins are derived from the seed by fixed keyed
/// hashing.
RunResult run_protocol(const OneWayProtocol& p, const InputPartition& partition,
                       std::span<const Value> inputs, std::uint64_t seed);

/// Low-level single-player evaluation used by protocol transformations:
/// computes the message player `player` would emit given an explicit block,
/// incoming message and CRS seed.
BitString eval_message(const OneWayProtocol& p, int player,
                       std::span<const Value> block, const BitString* incoming,
                       std::uint64_t crs_seed = 0, std::uint64_t coins_seed = 0);
Value eval_output(const OneWayProtocol& p, std::span<const Value> block,
                  const BitString* incoming, std::uint64_t crs_seed = 0,
                  std::uint64_t coins_seed = 0);

}  // namespace commlab::core
