#include "commlab/core/error_measure.hpp"

#include <algorithm>
#include <thread>

#include "commlab/common/errors.hpp"

namespace commlab::core {

namespace {

struct Tally {
  std::uint64_t wrong = 0;
  std::uint64_t runs = 0;
  std::vector<int> slot_max_bits;

  void absorb_run(const RunResult& r, bool is_wrong) {
    if (slot_max_bits.size() < r.cost.per_message_bits.size())
      slot_max_bits.resize(r.cost.per_message_bits.size(), 0);
    for (std::size_t i = 0; i < r.cost.per_message_bits.size(); ++i)
      slot_max_bits[i] = std::max(slot_max_bits[i], r.cost.per_message_bits[i]);
    wrong += is_wrong ? 1 : 0;
    ++runs;
  }

  void merge(const Tally& o) {
    wrong += o.wrong;
    runs += o.runs;
    if (slot_max_bits.size() < o.slot_max_bits.size())
      slot_max_bits.resize(o.slot_max_bits.size(), 0);
    for (std::size_t i = 0; i < o.slot_max_bits.size(); ++i)
      slot_max_bits[i] = std::max(slot_max_bits[i], o.slot_max_bits[i]);
  }
};

CostReport finish(const Tally& t, CostReport::ErrorKind kind,
                  std::uint64_t trials, std::uint64_t seed, int declared) {
  CostReport r = CostReport::from_lengths(t.slot_max_bits);
  r.error_estimate =
      t.runs == 0 ? 0.0
                  : static_cast<double>(t.wrong) / static_cast<double>(t.runs);
  r.error_kind = kind;
  r.trials = trials;
  r.seed = seed;
  r.declared_max_message_bits = declared;
  r.validate();
  return r;
}

}  // namespace

CostReport measure_error(const OneWayProtocol& p, const FunctionTable& f,
                         const InputPartition& partition,
                         const MeasureOptions& options) {
  if (static_cast<std::size_t>(f.arity()) != partition.k)
    throw ConfigError("function arity does not match the partition");

  if (options.exhaustive) {
    if (p.mode != RandomnessMode::deterministic)
      throw Refusal("exhaustive-requires-deterministic",
                    "exhaustive error measurement enumerates inputs only; "
                    "use Monte Carlo trials for randomized protocols");
    const std::uint64_t size = f.domain_size_checked(options.enum_cap);
    Tally tally;
    std::vector<Value> point;
    for (std::uint64_t i = 0; i < size; ++i) {
      f.decode_point(i, point);
      RunResult r = run_protocol(p, partition, point, options.seed);
      tally.absorb_run(r, r.output != f.eval(point));
    }
    return finish(tally, CostReport::ErrorKind::exact_enumeration, size,
                  options.seed, p.declared_max_message_bits);
  }

  const std::uint64_t trials = options.trials;
  const int threads =
      std::max(1, std::min(options.threads,
                           static_cast<int>(std::thread::hardware_concurrency()
                                                ? std::thread::hardware_concurrency()
                                                : 1)));
  auto run_shard = [&](std::uint64_t begin, std::uint64_t end, Tally& out) {
    std::vector<Value> point;
    for (std::uint64_t i = begin; i < end; ++i) {
      SeedStream input_stream(derive_seed(options.seed, "trial-input", i));
      if (options.sampler) {
        point = options.sampler(input_stream);
        if (point.size() != partition.k)
          throw ConfigError("sampler arity does not match the partition");
      } else {
        point.resize(partition.k);
        for (std::size_t j = 0; j < partition.k; ++j)
          point[j] = static_cast<Value>(input_stream.uniform_below(
              static_cast<std::uint64_t>(f.alphabets()[j])));
      }
      RunResult r = run_protocol(p, partition, point,
                                 derive_seed(options.seed, "trial-run", i));
      out.absorb_run(r, r.output != f.eval(point));
    }
  };

  Tally total;
  if (threads == 1 || trials < 256) {
    run_shard(0, trials, total);
  } else {
    std::vector<Tally> parts(static_cast<std::size_t>(threads));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    const std::uint64_t per = (trials + threads - 1) / threads;
    for (int s = 0; s < threads; ++s) {
      const std::uint64_t b = per * static_cast<std::uint64_t>(s);
      const std::uint64_t e = std::min(trials, b + per);
      if (b >= e) break;
      pool.emplace_back([&, s, b, e] {
        try {
          run_shard(b, e, parts[static_cast<std::size_t>(s)]);
        } catch (...) {
          errors[static_cast<std::size_t>(s)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
    for (const auto& part : parts) total.merge(part);
  }
  return finish(total, CostReport::ErrorKind::monte_carlo, trials,
                options.seed, p.declared_max_message_bits);
}

}  // namespace commlab::core
