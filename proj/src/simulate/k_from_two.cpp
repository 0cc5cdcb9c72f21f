#include "commlab/simulate/k_from_two.hpp"

#include <vector>

#include "commlab/common/errors.hpp"

namespace commlab::simulate {

using core::BitString;
using core::FunctionTable;
using core::OneWayProtocol;
using core::PlayerView;
using core::ProductDist;
using core::RandomnessMode;
using core::Value;

namespace {

struct SimCtx {
  OneWayProtocol base;  // amplified 2-player protocol, fixed-width messages
  std::vector<int> alphabets;
  std::vector<Value> f_flat;           // f over the whole domain, row-major
  std::vector<std::uint64_t> strides;  // strides[j]: points in coords j..k-1
  ProductDist mu;
  int k = 0;
  int index_bits = 0;
  double threshold = 0.0;  // 1 - delta/(4k)
  std::shared_ptr<SimulationStats> stats;

  std::uint64_t base_crs(const PlayerView& view) const {
    return derive_seed(view.crs_seed(), "base-protocol");
  }

  void decode_prefix(std::uint64_t code, int len,
                     std::vector<Value>& out) const {
    out.resize(static_cast<std::size_t>(len));
    for (int j = len; j-- > 0;) {
      const auto a =
          static_cast<std::uint64_t>(alphabets[static_cast<std::size_t>(j)]);
      out[static_cast<std::size_t>(j)] = static_cast<Value>(code % a);
      code /= a;
    }
  }

  /// Tabulates the base protocol's output for every suffix (coordinates
  /// from..k-1) given the message, along with the mu-weight of each suffix.
  void tabulate_bob(const BitString& msg, int from, std::uint64_t crs,
                    std::vector<Value>& out,
                    std::vector<double>& weights) const {
    const std::uint64_t count = strides[static_cast<std::size_t>(from)];
    out.resize(count);
    weights.resize(count);
    std::vector<Value> suffix(static_cast<std::size_t>(k - from));
    for (std::uint64_t s = 0; s < count; ++s) {
      std::uint64_t rest = s;
      for (int j = k; j-- > from;) {
        const auto a =
            static_cast<std::uint64_t>(alphabets[static_cast<std::size_t>(j)]);
        suffix[static_cast<std::size_t>(j - from)] =
            static_cast<Value>(rest % a);
        rest /= a;
      }
      out[s] = core::eval_output(base, suffix, &msg, crs);
      weights[s] = mu.weight(suffix, static_cast<std::size_t>(from),
                             static_cast<std::size_t>(k));
    }
  }

  /// mu-fraction of suffixes on which the tabulated output equals
  /// f(prefix, suffix).
  double continuation_accuracy(std::uint64_t prefix_code, int prefix_len,
                               const std::vector<Value>& bob_out,
                               const std::vector<double>& weights) const {
    const std::uint64_t offset =
        prefix_code * strides[static_cast<std::size_t>(prefix_len)];
    double good = 0, total = 0;
    for (std::uint64_t s = 0; s < bob_out.size(); ++s) {
      total += weights[s];
      if (bob_out[s] == f_flat[offset + s]) good += weights[s];
    }
    return total > 0 ? good / total : 0.0;
  }
};

}  // namespace

KFromTwoResult k_from_two_simulation(const OneWayProtocol& base2,
                                     const FunctionTable& f,
                                     const ProductDist& mu, int k, double delta,
                                     std::uint64_t enum_cap) {
  if (k < 2) throw ConfigError("simulation needs k >= 2");
  if (f.arity() != k) throw ConfigError("f must have arity k");
  if (base2.t != 2) throw ConfigError("base protocol must have 2 players");
  if (base2.mode == RandomnessMode::private_coins)
    throw Refusal("posterior-needs-crs",
                  "the exact posterior requires messages to be a function of "
                  "input and CRS; private-coin bases are not supported");
  if (mu.arity() != static_cast<std::size_t>(k))
    throw ConfigError("mu arity must be k");
  mu.validate();

  KFromTwoResult result;
  result.plan = AmplifierPlan::for_simulation(delta, k);
  result.amplified = amplify_protocol(base2, result.plan.copies);
  if (result.amplified.declared_max_message_bits < 0)
    throw ConfigError("base protocol must declare its message width");
  result.stats = std::make_shared<SimulationStats>();

  auto ctx = std::make_shared<SimCtx>();
  ctx->base = result.amplified;
  ctx->alphabets = f.alphabets();
  ctx->f_flat = f.materialize(enum_cap);
  ctx->mu = mu;
  ctx->k = k;
  ctx->index_bits = core::bits_for_count(static_cast<std::uint64_t>(k));
  ctx->threshold = 1.0 - delta / (4.0 * k);
  ctx->stats = result.stats;
  ctx->strides.assign(static_cast<std::size_t>(k) + 1, 1);
  for (int j = k; j-- > 0;)
    ctx->strides[static_cast<std::size_t>(j)] =
        ctx->strides[static_cast<std::size_t>(j) + 1] *
        static_cast<std::uint64_t>(ctx->alphabets[static_cast<std::size_t>(j)]);

  OneWayProtocol sim;
  sim.t = k;
  sim.mode = RandomnessMode::crs;
  sim.declared_max_message_bits =
      result.amplified.declared_max_message_bits + ctx->index_bits;
  sim.name = "k-from-2(" + base2.name + ")";

  sim.message_fn = [ctx](const PlayerView& view) {
    if (view.input().size() != 1)
      throw ConfigError("simulated protocol holds one coordinate per player");
    const int i = view.player();
    const std::uint64_t crs = ctx->base_crs(view);
    ctx->stats->messages.fetch_add(1, std::memory_order_relaxed);

    std::vector<Value> prefix;
    if (i > 1) {
      const BitString& in = view.incoming();
      const std::size_t base_len =
          in.size() - static_cast<std::size_t>(ctx->index_bits);
      const int got =
          static_cast<int>(in.read_uint(base_len, ctx->index_bits)) + 1;
      if (got != i - 1)
        throw EngineViolation("simulation message position out of step");
      const BitString base_msg = in.slice(0, base_len);

      std::vector<Value> bob_out;
      std::vector<double> weights;
      ctx->tabulate_bob(base_msg, i - 1, crs, bob_out, weights);

      // Exact posterior over prefixes: mu-weight on message-consistent
      // prefixes, restricted to accurate continuations when any exist.
      const std::uint64_t prefix_count =
          ctx->strides[0] / ctx->strides[static_cast<std::size_t>(i - 1)];
      std::vector<Value> cand;
      std::vector<std::pair<std::uint64_t, double>> qualified, support;
      for (std::uint64_t pc = 0; pc < prefix_count; ++pc) {
        ctx->decode_prefix(pc, i - 1, cand);
        const double w = ctx->mu.weight(cand, 0, cand.size());
        if (w <= 0) continue;
        if (core::eval_message(ctx->base, 1, cand, nullptr, crs) != base_msg)
          continue;
        support.emplace_back(pc, w);
        if (ctx->continuation_accuracy(pc, i - 1, bob_out, weights) >=
            ctx->threshold - 1e-12)
          qualified.emplace_back(pc, w);
      }
      if (support.empty())
        throw EngineViolation(
            "no prefix is consistent with the received message");
      const auto* pool = &qualified;
      if (qualified.empty()) {
        pool = &support;
        ctx->stats->fallbacks.fetch_add(1, std::memory_order_relaxed);
      }
      double total = 0;
      for (auto& [pc, w] : *pool) total += w;
      SeedStream pick =
          view.crs().fork("posterior-sample", static_cast<std::uint64_t>(i));
      double u = pick.next_double() * total;
      std::uint64_t chosen = pool->back().first;
      for (auto& [pc, w] : *pool) {
        if (u < w) {
          chosen = pc;
          break;
        }
        u -= w;
      }
      ctx->decode_prefix(chosen, i - 1, prefix);
    }

    prefix.push_back(view.input()[0]);
    BitString msg = core::eval_message(ctx->base, 1, prefix, nullptr, crs);
    if (msg.size() !=
        static_cast<std::size_t>(ctx->base.declared_max_message_bits))
      throw EngineViolation(
          "simulation requires fixed-width base messages equal to the "
          "declared width");
    msg.append_uint(static_cast<std::uint64_t>(i - 1), ctx->index_bits);
    return msg;
  };

  sim.output_fn = [ctx](const PlayerView& view) {
    if (view.input().size() != 1)
      throw ConfigError("simulated protocol holds one coordinate per player");
    const BitString& in = view.incoming();
    const std::size_t base_len =
        in.size() - static_cast<std::size_t>(ctx->index_bits);
    const BitString base_msg = in.slice(0, base_len);
    return core::eval_output(ctx->base, view.input(), &base_msg,
                             ctx->base_crs(view));
  };
  result.protocol = sim;
  return result;
}

}  // namespace commlab::simulate
