#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "commlab/core/error_measure.hpp"
#include "commlab/numeric/analytics.hpp"
#include "commlab/numeric/primes.hpp"
#include "commlab/sumequal/distributions.hpp"
#include "commlab/sumequal/protocols.hpp"
#include "commlab/sumequal/rectangle.hpp"
#include "commlab/io/json_io.hpp"

using namespace commlab;
using namespace commlab::core;
using namespace commlab::sumequal;
using numeric::Rat;
using numeric::to_double;

TEST_CASE("equality fingerprint is one-sided and paper-sized") {
  auto fp = equality_fingerprint_protocol(257, 0.1);
  auto part = InputPartition::singleton(2);
  for (Value x : {Value{0}, Value{1}, Value{77}, Value{256}}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      std::vector<Value> in{x, x};
      auto r = run_protocol(fp.protocol, part, in, seed);
      CHECK(r.output == 1);
      // Message is (q, x mod q) in exactly 2*ceil(log2 q) bits.
      const auto& msg = r.transcript[0];
      const int wq = static_cast<int>(msg.size() / 2);
      const auto q = msg.read_uint(0, wq);
      CHECK(numeric::is_prime_u64(q));
      CHECK(static_cast<std::size_t>(2 * bits_for_count(q)) == msg.size());
    }
  }

  // Unequal pairs: empirical error tracks the exact divisor fraction.
  SeedStream rng(derive_seed(1, "eq-pairs"));
  for (int rep = 0; rep < 4; ++rep) {
    const auto x = static_cast<Value>(rng.uniform_below(257));
    auto y = static_cast<Value>(rng.uniform_below(257));
    if (y == x) y = (y + 1) % 257;
    const double p = to_double(fp.false_accept_exact(x, y));
    int accepts = 0;
    const int trials = 2000;
    for (int s = 0; s < trials; ++s) {
      std::vector<Value> in{x, y};
      accepts += static_cast<int>(
          run_protocol(fp.protocol, part, in,
                       derive_seed(55, "trial", static_cast<std::uint64_t>(s)))
              .output);
    }
    const double emp = static_cast<double>(accepts) / trials;
    const double sigma = std::sqrt(std::max(p * (1 - p), 1e-6) / trials);
    CHECK(std::abs(emp - p) <= 3 * sigma + 1e-9);
  }
}

TEST_CASE("no prime in a small range divides 12") {
  numeric::ModPrimeHash fam(10, 30);
  for (auto q : fam.primes()) CHECK(12 % q != 0);
}

TEST_CASE("exact protocol") {
  auto p = sumequal_exact_protocol(3, 5);
  auto part = InputPartition::singleton(3);
  std::vector<Value> equal{1, 2, 2};
  std::vector<Value> unequal{1, 2, 1};
  CHECK(run_protocol(p, part, equal, 0).output == 1);
  CHECK(run_protocol(p, part, unequal, 0).output == 0);
  auto r = run_protocol(p, part, equal, 0);
  CHECK(r.cost.per_message_bits == std::vector<int>{3, 3});
}

TEST_CASE("sum-equal fingerprint: one-sided, error matches the oracle") {
  for (int k : {2, 4}) {
    for (Value m : {Value{5}, Value{7}}) {
      auto fp = sumequal_fingerprint_protocol(k, FingerprintMode::mod(m), 0.1);
      auto part = InputPartition::singleton(static_cast<std::size_t>(k));
      SeedStream rng(derive_seed(3, "grid"));
      for (int rep = 0; rep < 20; ++rep) {
        std::vector<Value> in(static_cast<std::size_t>(k));
        Value s = 0;
        for (int j = 0; j + 1 < k; ++j) {
          in[static_cast<std::size_t>(j)] = static_cast<Value>(
              rng.uniform_below(static_cast<std::uint64_t>(m)));
          s = (s + in[static_cast<std::size_t>(j)]) % m;
        }
        in[static_cast<std::size_t>(k - 1)] = (m - s) % m;
        for (std::uint64_t seed = 0; seed < 100; ++seed)
          CHECK(run_protocol(fp.protocol, part, in, seed).output == 1);
      }
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<Value> in(static_cast<std::size_t>(k));
        for (auto& v : in)
          v = static_cast<Value>(
              rng.uniform_below(static_cast<std::uint64_t>(m)));
        auto inst = SumEqualInstance::mod(k, m, in);
        if (inst.truth() == 1) continue;
        const double p = to_double(fp.false_accept_exact(inst));
        const int trials = 1500;
        int accepts = 0;
        for (int s = 0; s < trials; ++s)
          accepts += static_cast<int>(
              run_protocol(fp.protocol, part, in,
                           derive_seed(9, "t", static_cast<std::uint64_t>(s)))
                  .output);
        const double emp = static_cast<double>(accepts) / trials;
        const double sigma = std::sqrt(std::max(p * (1 - p), 1e-6) / trials);
        CHECK(std::abs(emp - p) <= 3 * sigma + 1e-9);
        CHECK(p <= 0.1);
      }
    }
  }
}

TEST_CASE("fingerprint digest width is bounded by the largest prime") {
  auto fp = sumequal_fingerprint_protocol(8, FingerprintMode::mod(257), 0.05);
  CHECK(fp.protocol.declared_max_message_bits ==
        bits_for_count(fp.family->primes().back()));
  auto part = InputPartition::singleton(8);
  std::vector<Value> in(8, 1);
  auto r = run_protocol(fp.protocol, part, in, 4);
  for (int b : r.cost.per_message_bits)
    CHECK(b <= bits_for_count(fp.family->primes().back()));
}

TEST_CASE("integer-mode fingerprint") {
  // Inputs sum to lcm(1..8) = 840 while the target is 0: still one-sided,
  // and the error is exactly the divisor fraction of 840 over the range.
  const int k = 16;
  auto fp =
      sumequal_fingerprint_protocol(k, FingerprintMode::integers(60), 0.05);
  std::vector<Value> in(16, 56);
  in[15] = 840 - 15 * 56;
  auto inst = SumEqualInstance::integers(k, 60, in);
  CHECK(inst.truth() == 0);
  Value total = 0;
  for (Value v : in) total += v;
  CHECK(total == 840);

  const double p = to_double(fp.false_accept_exact(inst));
  auto part = InputPartition::singleton(16);
  int accepts = 0;
  const int trials = 2000;
  for (int s = 0; s < trials; ++s)
    accepts += static_cast<int>(
        run_protocol(fp.protocol, part, in,
                     derive_seed(31, "t", static_cast<std::uint64_t>(s)))
            .output);
  const double emp = static_cast<double>(accepts) / trials;
  const double sigma = std::sqrt(std::max(p * (1 - p), 1e-6) / trials);
  CHECK(std::abs(emp - p) <= 3 * sigma + 1e-9);
  CHECK(p <= 0.05);

  std::vector<Value> zero(16, 3);
  zero[15] = -45;
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    CHECK(run_protocol(fp.protocol, part, zero, seed).output == 1);
}

TEST_CASE("viola product distribution") {
  auto mu = viola_product_distribution(6, 5);
  CHECK(mu.arity() == 6);
  SeedStream rng(derive_seed(17, "mu"));
  std::vector<long> freq(5, 0);
  long zero_sum = 0;
  const long trials = 20000;
  for (long i = 0; i < trials; ++i) {
    auto x = mu.sample(rng);
    Value s = 0;
    for (Value v : x) s = (s + v) % 5;
    zero_sum += s == 0 ? 1 : 0;
    freq[static_cast<std::size_t>(x[0])]++;
  }
  const double sigma = std::sqrt(trials * 0.2 * 0.8);
  for (long f : freq)
    CHECK(std::abs(static_cast<double>(f) - trials / 5.0) <= 4 * sigma);
  CHECK(std::abs(static_cast<double>(zero_sum) - trials / 5.0) <= 4 * sigma);

  SeedStream a(derive_seed(4, "x")), b(derive_seed(4, "x"));
  CHECK(mu.sample(a) == mu.sample(b));
}

TEST_CASE("direct-sum sample") {
  auto s = direct_sum_sample(50, 3, 200, 12345);
  s.verify();
  CHECK(!s.outside_paper_regime);  // 50^{1/4} ~ 2.66 < 3 < 5.32
  CHECK(direct_sum_sample(4, 7, 5, 0).outside_paper_regime);

  // Flipping a coin flips exactly that row's sum between 0 and 1.
  auto t = s;
  const std::size_t i = 7;
  t.rows[i][static_cast<std::size_t>(t.k - 1)] =
      (t.rows[i][static_cast<std::size_t>(t.k - 1)] + (t.coin[i] ? -1 : 1) +
       t.p) %
      t.p;
  t.coin[i] = 1 - t.coin[i];
  t.verify();

  long ones = 0;
  auto big = direct_sum_sample(10, 3, 20000, 777);
  for (int c : big.coin) ones += c;
  CHECK(std::abs(ones - 10000.0) <= 4 * std::sqrt(20000 * 0.25));

  std::vector<long> freq(3, 0);
  for (const auto& row : big.rows) freq[static_cast<std::size_t>(row[3])]++;
  for (long f : freq)
    CHECK(std::abs(static_cast<double>(f) - 20000.0 / 3) <=
          4 * std::sqrt(20000.0 * (1.0 / 3) * (2.0 / 3)));
}

TEST_CASE("aug-index sample") {
  auto s = aug_index_sample(3, 6, 3, 42);
  CHECK(s.big_m == 6);
  s.verify();
  CHECK(s.queried >= 0);
  CHECK(s.queried < 6);
  CHECK(s.revealed_answers().size() ==
        static_cast<std::size_t>(5 - s.queried));
  for (long j = 0; j < s.m; ++j) {
    Value sum = 0;
    for (Value v : s.rows[static_cast<std::size_t>(j)]) sum += v;
    CHECK((sum == 0 || sum == static_cast<Value>(s.big_m)));
  }

  // a = 5 (M = 60) needs k >= 11 so that M - (k-1) fits in [-ka, ka].
  CHECK(aug_index_sample(11, 4, 5, 1).big_m == 60);
  CHECK_THROWS_AS(aug_index_sample(8, 4, 5, 1), ConfigError);
  CHECK(default_magnitude_bound(16) == 1);
  CHECK(default_magnitude_bound(1 << 17) == 2);

  auto d = aug_index_sample(64, 50, default_magnitude_bound(64), 5);
  for (const auto& row : d.rows)
    CHECK(std::llabs(row.back()) <= 64 * d.a);
}

TEST_CASE("samples round-trip through JSON bit-exactly") {
  auto ds = direct_sum_sample(6, 5, 40, 909);
  auto j1 = commlab::io::to_json(ds);
  auto back = commlab::io::direct_sum_sample_from_json(j1);
  CHECK(commlab::io::to_json(back).dump() == j1.dump());
  CHECK(back.rows == ds.rows);
  CHECK(back.coin == ds.coin);

  auto ai = aug_index_sample(5, 7, 3, 909);
  auto j2 = commlab::io::to_json(ai);
  auto back2 = commlab::io::aug_index_sample_from_json(j2);
  CHECK(commlab::io::to_json(back2).dump() == j2.dump());

  auto inst = SumEqualInstance::integers(3, 4, {1, -2, 1});
  auto j3 = commlab::io::to_json(inst);
  auto back3 = commlab::io::sum_equal_instance_from_json(j3);
  CHECK(commlab::io::to_json(back3).dump() == j3.dump());
  CHECK(back3.truth() == 1);
}

TEST_CASE("measure_error with an unequal-pair sampler") {
  // Random unequal pairs over Z_257 against the Equality table: the
  // fingerprint's empirical error stays within its delta budget.
  auto fp = equality_fingerprint_protocol(257, 0.1);
  auto f = core::FunctionTable::builtin("equality", 2, 257);
  core::MeasureOptions opt;
  opt.trials = 20000;
  opt.seed = 4242;
  opt.threads = 2;
  opt.sampler = [](SeedStream& rng) {
    std::vector<Value> pair(2);
    pair[0] = static_cast<Value>(rng.uniform_below(257));
    pair[1] = static_cast<Value>(rng.uniform_below(256));
    if (pair[1] >= pair[0]) ++pair[1];  // never equal
    return pair;
  };
  auto report =
      measure_error(fp.protocol, f, core::InputPartition::singleton(2), opt);
  CHECK(report.error_kind == core::CostReport::ErrorKind::monte_carlo);
  CHECK(report.trials == 20000);
  CHECK(report.error_estimate <= 0.1);
}

TEST_CASE("rectangle probe matches a from-scratch enumeration") {
  const int k = 3;
  const long m = 2;
  const Value p = 3;

  auto full = Rectangle::full(k, m, p);
  auto r = rectangle_conditional_probe(k, m, p, full, {0, 1});
  CHECK(r.mass == 1);
  CHECK(r.full_sd() == 0);
  CHECK(r.prefix_sd.front() == 0);

  auto pinned = Rectangle::pin_value(k, m, p, 0, 1, 2);
  auto rp = rectangle_conditional_probe(k, m, p, pinned, {0, 1});
  CHECK(rp.mass == numeric::rat(1, 3));

  SeedStream rng(derive_seed(23, "rect"));
  for (int rep = 0; rep < 10; ++rep) {
    Rectangle rect = Rectangle::full(k, m, p);
    for (auto& choices : rect.allowed) {
      std::vector<std::vector<Value>> kept;
      for (auto& col : choices)
        if (rng.uniform_below(3) != 0) kept.push_back(col);
      if (!kept.empty()) choices = std::move(kept);
    }
    auto probe = rectangle_conditional_probe(k, m, p, rect, {0, 1});

    // Brute force: enumerate Z_p^{m(k-1)} directly.
    std::map<std::pair<Value, Value>, long> tally;
    long inside = 0;
    for (Value a0 = 0; a0 < 3; ++a0)
      for (Value a1 = 0; a1 < 3; ++a1)
        for (Value b0 = 0; b0 < 3; ++b0)
          for (Value b1 = 0; b1 < 3; ++b1) {
            auto member = [&](int player, Value c0, Value c1) {
              for (const auto& col :
                   rect.allowed[static_cast<std::size_t>(player)])
                if (col[0] == c0 && col[1] == c1) return true;
              return false;
            };
            if (!member(0, a0, a1) || !member(1, b0, b1)) continue;
            ++inside;
            tally[{(3 - (a0 + b0) % 3) % 3, (3 - (a1 + b1) % 3) % 3}]++;
          }
    Rat sd(0);
    for (Value g0 = 0; g0 < 3; ++g0)
      for (Value g1 = 0; g1 < 3; ++g1) {
        Rat q(tally[{g0, g1}], inside);
        q.canonicalize();
        sd += numeric::rat_abs(q - numeric::rat(1, 9));
      }
    sd /= 2;
    CHECK(probe.full_sd() == sd);
    Rat mass(inside, 81);
    mass.canonicalize();
    CHECK(probe.mass == mass);
  }
}
