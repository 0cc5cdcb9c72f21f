#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "commlab/core/dcc_oracle.hpp"
#include "commlab/core/function_table.hpp"
#include "commlab/core/partition.hpp"
#include "commlab/core/protocol.hpp"

namespace commlab::simulate {

/// Single-pass streaming automaton with an explicit bit budget. The state
/// width is checked against memory_bits after every update.
struct StreamingAutomaton {
  int memory_bits = 0;
  /// Max state width while items 1..m-1 are pending; the post-final state is
  /// the answer register. This is the quantity the message-size bounds speak
  /// about.
  int working_bits = 0;
  core::BitString initial_state;
  std::function<core::BitString(const core::BitString&, core::Value, int)>
      update;  // (state, item, 1-based index) -> state
  std::function<core::Value(const core::BitString&)> output;
};

core::Value run_automaton(const StreamingAutomaton& a,
                          std::span<const core::Value> items);

struct StreamFromTwoPartyOptions {
  /// Drop the stored item counter for functions whose per-cut protocols are
  /// position-invariant (the update still receives the index argument).
  bool drop_index = false;
  std::uint64_t enum_cap = core::default_enum_cap();
};

/// Builds the streaming automaton that simulates the given per-cut 2-player
/// deterministic one-way protocols: the state holds (last message, item
/// count); each update reconstructs any prefix that induces the stored
/// message under the previous cut's protocol, extends it with the new item,
/// and emits the next cut's message. protocols[i] must compute f exactly
/// under the cut after item i+1 (index 0 = cut 1).
StreamingAutomaton det_stream_from_two_party(
    const core::FunctionTable& f,
    const std::vector<core::OneWayProtocol>& protocols,
    const StreamFromTwoPartyOptions& options = {});

/// Convenience: optimal row-class protocols for every cut.
std::vector<core::OneWayProtocol> optimal_cut_protocols(
    const core::FunctionTable& f, std::uint64_t cap = core::default_enum_cap());

/// Runs a streaming automaton as a k-player one-way protocol over a
/// contiguous partition: messages are the memory contents, so each message is
/// at most memory_bits wide and the total is at most (k-1) * memory_bits.
core::OneWayProtocol streaming_to_protocol(
    std::shared_ptr<const StreamingAutomaton> automaton,
    const core::InputPartition& partition);

}  // namespace commlab::simulate
