#include "commlab/simulate/automaton.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>
#include <utility>

#include "commlab/common/errors.hpp"

namespace commlab::simulate {

using core::BitString;
using core::FunctionTable;
using core::InputPartition;
using core::OneWayProtocol;
using core::PlayerView;
using core::Value;

core::Value run_automaton(const StreamingAutomaton& a,
                          std::span<const core::Value> items) {
  BitString state = a.initial_state;
  for (std::size_t i = 0; i < items.size(); ++i) {
    state = a.update(state, items[i], static_cast<int>(i) + 1);
    if (static_cast<int>(state.size()) > a.memory_bits)
      throw EngineViolation("automaton state exceeds its declared memory");
  }
  return a.output(state);
}

namespace {

struct StreamCtx {
  FunctionTable f;
  std::vector<OneWayProtocol> protocols;  // protocols[i] covers cut i+1
  std::vector<int> max_msg_bits;          // per cut
  std::vector<Value> outputs;             // sorted distinct f values
  int m = 0;
  int index_bits = 0;
  int answer_bits = 0;
  bool drop_index = false;
  // message key -> a prefix inducing it, filled per cut on first use
  std::vector<std::unordered_map<std::string, std::vector<Value>>> prefix_of;
  std::vector<bool> cut_cached;

  void ensure_cut(int cut) {  // cut in [1, m-1]
    if (cut_cached[static_cast<std::size_t>(cut)]) return;
    const auto& alph = f.alphabets();
    std::uint64_t prefixes = 1;
    for (int j = 0; j < cut; ++j)
      prefixes *= static_cast<std::uint64_t>(alph[static_cast<std::size_t>(j)]);
    std::vector<Value> prefix(static_cast<std::size_t>(cut));
    auto& table = prefix_of[static_cast<std::size_t>(cut)];
    for (std::uint64_t pi = 0; pi < prefixes; ++pi) {
      std::uint64_t rest = pi;
      for (int j = cut; j-- > 0;) {
        const auto a =
            static_cast<std::uint64_t>(alph[static_cast<std::size_t>(j)]);
        prefix[static_cast<std::size_t>(j)] = static_cast<Value>(rest % a);
        rest /= a;
      }
      BitString msg = core::eval_message(
          protocols[static_cast<std::size_t>(cut - 1)], 1, prefix, nullptr);
      table.emplace(msg.key(), prefix);
    }
    cut_cached[static_cast<std::size_t>(cut)] = true;
  }

  const std::vector<Value>& reconstruct(int cut, const BitString& msg) {
    ensure_cut(cut);
    auto it = prefix_of[static_cast<std::size_t>(cut)].find(msg.key());
    if (it == prefix_of[static_cast<std::size_t>(cut)].end())
      throw EngineViolation(
          "no prefix induces the stored message: the supplied cut protocols "
          "are inconsistent");
    return it->second;
  }

  BitString pack(const BitString& payload, int index) const {
    BitString state;
    if (!drop_index)
      state.append_uint(static_cast<std::uint64_t>(index - 1), index_bits);
    state.append(payload);
    return state;
  }

  std::pair<BitString, int> unpack(const BitString& state,
                                   int expected_index) const {
    int index = expected_index;
    std::size_t at = 0;
    if (!drop_index) {
      index = static_cast<int>(state.read_uint(0, index_bits)) + 1;
      at = static_cast<std::size_t>(index_bits);
      if (index != expected_index)
        throw EngineViolation("automaton state index out of step");
    }
    return {state.slice(at, state.size() - at), index};
  }
};

}  // namespace

StreamingAutomaton det_stream_from_two_party(
    const FunctionTable& f, const std::vector<OneWayProtocol>& protocols,
    const StreamFromTwoPartyOptions& options) {
  const int m = f.arity();
  if (m < 2) throw ConfigError("stream construction needs arity >= 2");
  if (protocols.size() != static_cast<std::size_t>(m - 1))
    throw ConfigError("need one 2-player protocol per cut (m-1 of them)");
  for (const auto& p : protocols) {
    if (p.t != 2 || p.mode != core::RandomnessMode::deterministic)
      throw ConfigError("cut protocols must be deterministic and 2-player");
  }
  f.domain_size_checked(options.enum_cap);

  auto ctx = std::make_shared<StreamCtx>();
  ctx->f = f;
  ctx->protocols = protocols;
  ctx->m = m;
  ctx->drop_index = options.drop_index;
  ctx->index_bits =
      options.drop_index ? 0 : core::bits_for_count(static_cast<std::uint64_t>(m));
  ctx->outputs = f.output_values(options.enum_cap);
  ctx->answer_bits = core::bits_for_count(ctx->outputs.size());
  ctx->prefix_of.resize(static_cast<std::size_t>(m));
  ctx->cut_cached.assign(static_cast<std::size_t>(m), false);

  // Message width per cut: protocols declare it, or we take the worst case
  // over prefixes while filling the reconstruction table.
  ctx->max_msg_bits.resize(static_cast<std::size_t>(m), 0);
  for (int cut = 1; cut <= m - 1; ++cut) {
    const auto& p = protocols[static_cast<std::size_t>(cut - 1)];
    if (p.declared_max_message_bits >= 0) {
      ctx->max_msg_bits[static_cast<std::size_t>(cut)] =
          p.declared_max_message_bits;
    } else {
      ctx->ensure_cut(cut);
      int w = 0;
      for (const auto& [key, prefix] : ctx->prefix_of[static_cast<std::size_t>(cut)]) {
        BitString msg = core::eval_message(p, 1, prefix, nullptr);
        w = std::max(w, static_cast<int>(msg.size()));
      }
      ctx->max_msg_bits[static_cast<std::size_t>(cut)] = w;
    }
  }

  StreamingAutomaton a;
  int max_payload = 0;
  for (int cut = 1; cut <= m - 1; ++cut)
    max_payload =
        std::max(max_payload, ctx->max_msg_bits[static_cast<std::size_t>(cut)]);
  a.working_bits = ctx->index_bits + max_payload;
  a.memory_bits = std::max(a.working_bits, ctx->index_bits + ctx->answer_bits);

  a.update = [ctx](const BitString& state, Value item, int index) {
    if (index == 1) {
      std::vector<Value> first{item};
      return ctx->pack(core::eval_message(ctx->protocols[0], 1, first, nullptr),
                       1);
    }
    auto [payload, got] = ctx->unpack(state, index - 1);
    const std::vector<Value>& prefix = ctx->reconstruct(index - 1, payload);
    if (index <= ctx->m - 1) {
      std::vector<Value> extended = prefix;
      extended.push_back(item);
      return ctx->pack(
          core::eval_message(ctx->protocols[static_cast<std::size_t>(index - 1)],
                             1, extended, nullptr),
          index);
    }
    // Final item: the answer register replaces the message.
    std::vector<Value> suffix{item};
    Value out = core::eval_output(
        ctx->protocols[static_cast<std::size_t>(ctx->m - 2)], suffix, &payload);
    const auto it =
        std::lower_bound(ctx->outputs.begin(), ctx->outputs.end(), out);
    if (it == ctx->outputs.end() || *it != out)
      throw EngineViolation("cut protocol output outside f's range");
    BitString answer;
    answer.append_uint(
        static_cast<std::uint64_t>(it - ctx->outputs.begin()), ctx->answer_bits);
    return ctx->pack(answer, ctx->m);
  };

  a.output = [ctx](const BitString& state) {
    auto [payload, got] = ctx->unpack(state, ctx->m);
    const std::uint64_t code =
        ctx->answer_bits > 0 ? payload.read_uint(0, ctx->answer_bits) : 0;
    return ctx->outputs[code];
  };
  return a;
}

std::vector<OneWayProtocol> optimal_cut_protocols(const FunctionTable& f,
                                                  std::uint64_t cap) {
  std::vector<OneWayProtocol> out;
  for (int cut = 1; cut <= f.arity() - 1; ++cut)
    out.push_back(core::make_optimal_cut_protocol(f, cut, cap).protocol);
  return out;
}

OneWayProtocol streaming_to_protocol(
    std::shared_ptr<const StreamingAutomaton> automaton,
    const InputPartition& partition) {
  if (!partition.contiguous)
    throw ConfigError(
        "streaming simulation needs a contiguous partition (stream order)");
  // Global position of each player's first item.
  auto offsets = std::make_shared<std::vector<int>>();
  int pos = 0;
  for (const auto& block : partition.blocks) {
    offsets->push_back(pos);
    pos += static_cast<int>(block.size());
  }

  OneWayProtocol p;
  p.t = static_cast<int>(partition.t());
  p.mode = core::RandomnessMode::deterministic;
  p.declared_max_message_bits = automaton->memory_bits;
  p.name = "streaming-as-protocol";

  auto advance = [automaton, offsets](const PlayerView& view) {
    BitString state = view.has_incoming() ? view.incoming()
                                          : automaton->initial_state;
    int index = (*offsets)[static_cast<std::size_t>(view.player() - 1)];
    for (Value item : view.input()) {
      state = automaton->update(state, item, ++index);
      if (static_cast<int>(state.size()) > automaton->memory_bits)
        throw EngineViolation("automaton state exceeds its declared memory");
    }
    return state;
  };
  p.message_fn = advance;
  p.output_fn = [automaton, advance](const PlayerView& view) {
    return automaton->output(advance(view));
  };
  return p;
}

}  // namespace commlab::simulate
