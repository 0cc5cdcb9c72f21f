#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "commlab/core/error_measure.hpp"
#include "commlab/simulate/amplify.hpp"
#include "commlab/simulate/automaton.hpp"
#include "commlab/simulate/k_from_two.hpp"
#include "commlab/sumequal/protocols.hpp"

using namespace commlab;
using namespace commlab::core;
using namespace commlab::simulate;
using numeric::Rat;
using numeric::rat;
using numeric::to_double;

TEST_CASE("amplifier plan") {
  // delta = 1/3, k = 4: t = 57, M = 115.
  auto plan = AmplifierPlan::for_simulation(1.0 / 3.0, 4);
  CHECK(plan.t == 57);
  CHECK(plan.copies == 115);
  CHECK(plan.epsilon == doctest::Approx((1.0 / 9.0) / 256.0));

  // No amplification needed when the base error already meets the target.
  auto none = AmplifierPlan::for_target(0.01, 0.05);
  CHECK(none.copies == 1);

  CHECK_THROWS_AS(AmplifierPlan::for_target(0.5, 0.1), Refusal);
}

TEST_CASE("exact majority tail and its bound") {
  // t = 3 (M = 7), delta = 0.25: tail = 1156/16384, bound = 27/256 * ...
  Rat tail = majority_error_exact(3, rat(1, 4));
  CHECK(tail == rat(1156, 16384));
  CHECK(to_double(tail) == doctest::Approx(0.070556).epsilon(1e-5));
  Rat bound = majority_error_bound(3, rat(1, 4));
  CHECK(to_double(bound) == doctest::Approx(0.10546875));
  CHECK(tail <= bound);

  // The chain of inequalities holds across a (t, delta) grid.
  for (long t = 0; t <= 12; ++t)
    for (long d = 1; d <= 9; ++d)
      CHECK(majority_error_exact(t, rat(d, 20)) <=
            majority_error_bound(t, rat(d, 20)));
}

TEST_CASE("amplified fingerprint meets its target error") {
  auto fp = sumequal::sumequal_fingerprint_protocol(
      4, sumequal::FingerprintMode::mod(5), 0.3);
  auto [amp, plan] = amplify_majority(fp.protocol, 0.3, 0.05);
  CHECK(plan.copies >= 3);
  CHECK(amp.declared_max_message_bits ==
        plan.copies * fp.protocol.declared_max_message_bits);

  auto part = InputPartition::singleton(4);
  std::vector<Value> unequal{1, 0, 0, 0};
  int accepts = 0;
  const int trials = 2000;
  for (int s = 0; s < trials; ++s)
    accepts += static_cast<int>(
        run_protocol(amp, part, unequal,
                     derive_seed(77, "amp", static_cast<std::uint64_t>(s)))
            .output);
  CHECK(static_cast<double>(accepts) / trials <= 0.05 + 0.02);

  std::vector<Value> equal{1, 4, 0, 0};
  for (std::uint64_t s = 0; s < 100; ++s)
    CHECK(run_protocol(amp, part, equal, s).output == 1);
}

TEST_CASE("stream construction: parity") {
  auto f = FunctionTable::builtin("parity", 4);
  auto protocols = optimal_cut_protocols(f);
  auto a = det_stream_from_two_party(f, protocols);
  CHECK(a.working_bits == 1 + 2);  // 1-bit messages + ceil(log2 4) index

  std::vector<Value> point;
  for (std::uint64_t i = 0; i < 16; ++i) {
    f.decode_point(i, point);
    CHECK(run_automaton(a, point) == f.eval(point));
  }

  // The index can be dropped for this position-invariant function.
  StreamFromTwoPartyOptions opt;
  opt.drop_index = true;
  auto b = det_stream_from_two_party(f, protocols, opt);
  CHECK(b.working_bits == 1);
  for (std::uint64_t i = 0; i < 16; ++i) {
    f.decode_point(i, point);
    CHECK(run_automaton(b, point) == f.eval(point));
  }
}

TEST_CASE("stream construction: running sum mod 3 and a constant") {
  auto f = FunctionTable::from_fn(
      {3, 3, 3},
      [](std::span<const Value> x) {
        Value s = 0;
        for (Value v : x) s = (s + v) % 3;
        return s;
      },
      true);
  auto a = det_stream_from_two_party(f, optimal_cut_protocols(f));
  std::vector<Value> point;
  for (std::uint64_t i = 0; i < 27; ++i) {
    f.decode_point(i, point);
    CHECK(run_automaton(a, point) == f.eval(point));
  }
  int maxdcc = 0;
  for (int cut = 1; cut <= 2; ++cut)
    maxdcc = std::max(maxdcc, oneway_dcc2_oracle(f, cut));
  CHECK(a.working_bits <= maxdcc + bits_for_count(3));

  auto constant = FunctionTable::from_fn(
      {2, 2, 2, 2}, [](std::span<const Value>) { return Value{1}; }, true);
  auto c = det_stream_from_two_party(constant, optimal_cut_protocols(constant));
  CHECK(c.working_bits == bits_for_count(4));  // index only, 0-bit messages
  std::vector<Value> in{0, 1, 0, 1};
  CHECK(run_automaton(c, in) == 1);
}

TEST_CASE("corrupted automaton state is a protocol inconsistency") {
  auto f = FunctionTable::builtin("parity", 3);
  auto a = det_stream_from_two_party(f, optimal_cut_protocols(f));
  // A state whose stored index does not match the update position.
  BitString bogus;
  bogus.append_uint(0, 2);  // claims index 1
  bogus.push_bit(0);
  CHECK_THROWS_AS(a.update(bogus, 1, 3), EngineViolation);
}

TEST_CASE("automaton as a k-player protocol: cost identities") {
  // One item per player (m = k), so the stored index costs ceil(log2 k).
  const std::size_t k = 4;
  auto f = FunctionTable::builtin("parity", static_cast<int>(k));
  auto automaton = std::make_shared<StreamingAutomaton>(
      det_stream_from_two_party(f, optimal_cut_protocols(f)));
  const int s = automaton->memory_bits;

  auto part = InputPartition::singleton(k);
  auto p = streaming_to_protocol(automaton, part);
  MeasureOptions opt;
  opt.exhaustive = true;
  auto report = measure_error(p, f, part, opt);
  CHECK(report.error_estimate == 0.0);
  CHECK(report.max_message_bits <= s);
  CHECK(report.total_bits <= static_cast<long long>(k - 1) * s);

  // Padding middle players with empty input degenerates to 2-player
  // communication repeated k-1 times.
  int c2 = 0;
  for (int cut = 1; cut <= static_cast<int>(k) - 1; ++cut)
    c2 = std::max(c2, oneway_dcc2_oracle(f, cut));
  auto padded = InputPartition::from_cuts(k, {0, 2, 2, 2, 4});
  auto p4 = streaming_to_protocol(automaton, padded);
  auto rep4 = measure_error(p4, f, padded, opt);
  CHECK(rep4.error_estimate == 0.0);
  CHECK(rep4.total_bits >= static_cast<long long>(k - 1) * c2);
  CHECK(rep4.total_bits <=
        static_cast<long long>(k - 1) *
            (c2 + bits_for_count(static_cast<std::uint64_t>(k))));
}

TEST_CASE("k-from-2 with a zero-error base is exact") {
  const int k = 4;
  const Value p = 3;
  auto f = FunctionTable::builtin("sum-equal-mod-m", k, p);
  auto base = sumequal::sumequal_exact_protocol(2, p);
  auto mu = ProductDist::uniform_for(f);
  auto sim = k_from_two_simulation(base, f, mu, k, 0.2);

  auto part = InputPartition::singleton(k);
  std::vector<Value> point;
  for (std::uint64_t i = 0; i < 81; ++i) {
    f.decode_point(i, point);
    auto r = run_protocol(sim.protocol, part, point, derive_seed(5, "kf2", i));
    CHECK(r.output == f.eval(point));
    CHECK(r.cost.max_message_bits <=
          sim.amplified.declared_max_message_bits + bits_for_count(k));
  }
  CHECK(sim.stats->fallbacks.load() == 0);
}

TEST_CASE("k-from-2 with a fingerprint base under uniform mu") {
  const int k = 4;
  const Value p = 3;
  auto f = FunctionTable::builtin("sum-equal-mod-m", k, p);
  auto fp = sumequal::sumequal_fingerprint_protocol(
      k, sumequal::FingerprintMode::mod(p), 0.1, 0, 2);
  auto mu = ProductDist::uniform_for(f);
  auto sim = k_from_two_simulation(fp.protocol, f, mu, k, 0.1);

  MeasureOptions mc;
  mc.trials = 3000;
  mc.seed = 2024;
  auto report = measure_error(sim.protocol, f, InputPartition::singleton(k), mc);
  CHECK(report.error_estimate <= 0.1);
  CHECK(report.max_message_bits <=
        sim.amplified.declared_max_message_bits + bits_for_count(k));

  // Private-coin bases are refused.
  auto pc = fp.protocol;
  pc.mode = RandomnessMode::private_coins;
  CHECK_THROWS_AS(k_from_two_simulation(pc, f, mu, k, 0.1), Refusal);
}
